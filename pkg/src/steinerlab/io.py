"""JSON formats for tensors, bundles, hyperplanes and reports.

Tensor files hold ``{"dims": [...], "entries": [...]}`` with entries as nested
arrays of rational strings (index ``i0`` outermost). Bundle files add ``"n"``
and ``"k"``; generated files may carry the ``"seed"`` that produced them.
:func:`dumps` writes the canonical form (fixed key order, compact
separators, trailing newline), so canonical files round-trip byte for byte.
"""

import json
import sys
from fractions import Fraction
from math import inf

import numpy as np

from .errors import ParseError
from .scalars import format_scalar, parse_scalar
from .tensor import BoundaryTensor

__all__ = [
    "dumps",
    "tensor_to_obj",
    "tensor_from_obj",
    "load_json",
    "load_tensor",
    "parse_hyperplane",
    "hyperplanes_from_obj",
    "load_hyperplanes",
    "scalar_list",
    "length_value",
    "scheme_report",
]

_KEY_ORDER = ("dims", "entries", "n", "k", "seed")


def dumps(obj):
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True) + "\n"


def scalar_list(xs):
    return [format_scalar(x) for x in xs]


def length_value(x):
    return "inf" if x == inf else x


def tensor_to_obj(a, n=None, k=None, seed=None):
    def nested(arr):
        if arr.ndim == 1:
            return [format_scalar(x) for x in arr]
        return [nested(sub) for sub in arr]

    obj = {"dims": list(a.dims), "entries": nested(a.entries)}
    if n is not None:
        obj["n"] = n
        obj["k"] = k
    if seed is not None:
        obj["seed"] = seed
    return obj


def _parse_entries(node, dims, path):
    if not dims:
        if isinstance(node, (list, dict)) or node is None or isinstance(node, float):
            raise ParseError(f"{path}: expected a rational string, got {json.dumps(node)}")
        try:
            return parse_scalar(node)
        except ParseError as exc:
            raise ParseError(f"{path}: {exc}") from None
    if not isinstance(node, list):
        raise ParseError(f"{path}: expected an array of length {dims[0]}")
    if len(node) != dims[0]:
        raise ParseError(f"{path}: array has length {len(node)}, dims say {dims[0]}")
    return [_parse_entries(x, dims[1:], f"{path}[{j}]") for j, x in enumerate(node)]


def tensor_from_obj(obj, source="<input>"):
    """``(tensor, meta)`` where ``meta`` keeps the optional n, k and seed fields."""
    if not isinstance(obj, dict):
        raise ParseError(f"{source}: top level must be an object")
    unknown = set(obj) - set(_KEY_ORDER)
    if unknown:
        raise ParseError(f"{source}: unknown field(s) {sorted(unknown)}")
    for key in ("dims", "entries"):
        if key not in obj:
            raise ParseError(f"{source}: missing field {key!r}")
    dims = obj["dims"]
    if not isinstance(dims, list) or not all(isinstance(d, int) and not isinstance(d, bool) for d in dims):
        raise ParseError(f"{source}: field 'dims' must be a list of integers")
    if not dims or any(d < 1 for d in dims):
        raise ParseError(f"{source}: field 'dims' must list positive sizes")
    entries = _parse_entries(obj["entries"], dims, f"{source}: entries")
    arr = np.empty(dims, dtype=object)
    for idx in np.ndindex(*dims):
        node = entries
        for j in idx:
            node = node[j]
        arr[idx] = node
    meta = {}
    for key in ("n", "k", "seed"):
        if key in obj:
            if not isinstance(obj[key], int) or isinstance(obj[key], bool):
                raise ParseError(f"{source}: field {key!r} must be an integer")
            meta[key] = obj[key]
    return BoundaryTensor(arr), meta


def load_json(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load_tensor(path):
    return tensor_from_obj(load_json(path), path)


def parse_hyperplane(text):
    """``"1,1,0"`` or ``["1","1/2","0"]`` to a tuple of Fractions."""
    if isinstance(text, str):
        parts = [p for p in text.split(",")]
    elif isinstance(text, list):
        parts = text
    else:
        raise ParseError(f"not a hyperplane: {text!r}")
    if not parts:
        raise ParseError("empty hyperplane")
    return tuple(parse_scalar(p.strip() if isinstance(p, str) else p) for p in parts)


def hyperplanes_from_obj(obj, source="<input>"):
    if isinstance(obj, dict):
        obj = obj.get("hyperplanes")
    if not isinstance(obj, list):
        raise ParseError(f"{source}: expected a list of hyperplanes")
    out = []
    for j, h in enumerate(obj):
        try:
            out.append(parse_hyperplane(h))
        except ParseError as exc:
            raise ParseError(f"{source}: hyperplanes[{j}]: {exc}") from None
    return out


def load_hyperplanes(path):
    return hyperplanes_from_obj(load_json(path), path)


def points_obj(points, key="y"):
    return [{key: scalar_list(p), "mult": m} for p, m in points]


def scheme_report(scheme, classification, seed):
    return {
        "verdict": scheme.verdict,
        "length": length_value(scheme.length),
        "points": points_obj(scheme.points),
        "residual": [{"degree": d, "mult": m} for d, m in scheme.residual],
        "classification": classification.kind,
        "seed": seed,
    }


def fraction_matrix(m):
    return [scalar_list(r) for r in m]


def hyperplane_str(xi):
    return ",".join(format_scalar(Fraction(x)) for x in xi)
