"""Command-line front end: ``steinerlab <verb> [options]``.

Every verb prints one JSON document on standard output. Exit status is 0 on
success, 2 for mathematically invalid input (degenerate tensor, wrong format,
non-unstable hyperplane, non-normal-crossing arrangement) and 1 for I/O or
parse errors. Tensor and bundle arguments default to standard input, so verbs
compose through pipes::

    steinerlab make schwarzenberger --n 2 --k 3 | steinerlab unstable
"""

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import bundle as bd
from . import io
from . import tensor as tn
from .errors import DomainError, ParseError
from .scalars import DEFAULT_PRIME, GF, format_scalar

__all__ = ["main", "run", "build_parser"]


def _parse_field(text):
    if text in ("rational", "QQ", "qq"):
        return None
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise ParseError(f"bad prime in --field {text!r}") from None
        try:
            return GF(p)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    if text == "fp":
        return GF(DEFAULT_PRIME)
    raise ParseError(f"--field must be 'rational' or 'fp:<prime>', got {text!r}")


def _dims(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"bad dimension list {text!r}") from None


def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


def _load_bundle(path, check=True):
    a, meta = io.load_tensor(path)
    return bd.new_bundle(a, meta.get("n"), meta.get("k"), check=check)


def _bundle_obj(s, seed=None):
    return io.tensor_to_obj(s.tensor, s.n, s.k, seed)


def _tensor_obj(a, seed=None):
    if a.p == 2:
        n, k = a.format.steiner_params()
        return io.tensor_to_obj(a, n, k, seed)
    return io.tensor_to_obj(a, seed=seed)


# ------------------------------------------------------------------ verbs


def _certificate(a, field):
    """Certificate, re-verified over QQ whenever the modular value is zero."""
    if field is None:
        return tn.hyperdet_certificate(a), "rational"
    value = tn.hyperdet_certificate(a, field)
    if value:
        return value, f"fp:{field.p}"
    _warn(f"certificate is zero mod {field.p}; re-verifying over the rationals")
    return tn.hyperdet_certificate(a), "rational"


def _check_one(path, field, seed):
    a, _ = io.load_tensor(path)
    cert, used = _certificate(a, field)
    minors = bd.nondegenerate_by_minors(a, prime=field.p if field else None)
    return {
        "nondegenerate": bool(cert),
        "certificate_nonzero": bool(cert),
        "minors_test": minors,
        "agree": bool(cert) == minors,
        "field": used,
        "seed": seed,
    }


def _hyperdet_one(path, field, seed):
    a, _ = io.load_tensor(path)
    n, k = a.format.steiner_params()
    cert, used = _certificate(a, field)
    return {
        "certificate": format_scalar(cert),
        "nonzero": bool(cert),
        "degree": tn.certificate_degree(n, k),
        "field": used,
        "seed": seed,
    }


def _invariant_one(path, field, seed):
    s = _load_bundle(path)
    return {"w": io.length_value(bd.w_invariant(s, seed)), "seed": seed}


def _classify_one(path, field, seed):
    s = _load_bundle(path)
    c = bd.classify(s, seed)
    return {
        "classification": c.kind,
        "length": io.length_value(c.length),
        "closed_points": io.length_value(c.closed_points),
        "seed": seed,
    }


_BATCH = {
    "check": _check_one,
    "hyperdet": _hyperdet_one,
    "invariant": _invariant_one,
    "classify": _classify_one,
}


def _batch(args, field):
    fn = _BATCH[args.verb]
    paths = args.inputs or ["-"]
    if len(paths) == 1:
        return fn(paths[0], field, args.seed)
    if args.jobs > 1 and "-" not in paths:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(fn, paths, [field] * len(paths), [args.seed] * len(paths)))
    else:
        results = [fn(p, field, args.seed) for p in paths]
    return {"results": [{"input": p, **r} for p, r in zip(paths, results)], "seed": args.seed}


def _cmd_unstable(args, field):
    s = _load_bundle(args.input)
    sch = bd.unstable_scheme(s, args.seed)
    return io.scheme_report(sch, bd.classify(s, args.seed, sch), args.seed)


def _cmd_member(args, field):
    s = _load_bundle(args.input)
    member, h0 = bd.is_member(s, io.parse_hyperplane(args.hyperplane))
    return {"member": member, "h0": h0, "seed": args.seed}


def _cmd_sections(args, field):
    s = _load_bundle(args.input)
    ts = [args.t] if args.t is not None else list(range(s.k + 1))
    return {"sections": [{"t": t, "h0": bd.sections_dim(s, t)} for t in ts], "seed": args.seed}


def _cmd_elm(args, field):
    s = _load_bundle(args.input)
    return _bundle_obj(bd.elementary_transform(s, io.parse_hyperplane(args.hyperplane)))


def _cmd_make(args, field):
    kind = args.kind
    if kind == "schwarzenberger":
        _need(args, "n", "k")
        return _bundle_obj(bd.schwarzenberger(args.n, args.k))
    if kind == "logarithmic":
        _need(args, "hyperplanes")
        return _bundle_obj(bd.logarithmic(io.load_hyperplanes(args.hyperplanes)))
    dims = _make_dims(args)
    if kind == "identity":
        return _tensor_obj(tn.make_identity(dims))
    if kind == "random":
        pattern = args.pattern
        if pattern == "general":
            a = tn.random_tensor(dims, args.seed)
        elif pattern == "triangular":
            a = tn.triangular_tensor(dims, args.seed)
        else:
            a = tn.diagonal_tensor(dims, args.seed)
        return _tensor_obj(a, args.seed)
    _need(args, "beta")
    return _tensor_obj(tn.lem1_pattern_tensor(dims, _dims(args.beta), args.seed), args.seed)


def _make_dims(args):
    if args.dims:
        return _dims(args.dims)
    _need(args, "n", "k")
    return (args.n + args.k, args.n + 1, args.k)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise ParseError(f"make {args.kind} requires {' '.join(missing)}")


def _cmd_gale(args, field):
    a, _ = io.load_tensor(args.input)
    return _tensor_obj(tn.gale_permute(a))


def _cmd_stab(args, field):
    a, _ = io.load_tensor(args.input)
    r = tn.stabilizer_algebra(a)
    return {
        "dimension": r.dimension,
        "type": r.kind,
        "y_eigenvalues": [{"value": format_scalar(v), "mult": m} for v, m in r.y_eigenvalues],
        "seed": args.seed,
    }


def _cmd_iso(args, field):
    a = _load_bundle(args.first).tensor
    b = _load_bundle(args.second).tensor
    r = tn.iso_test(a, b)
    out = {"verdict": r.verdict, "nullity": r.nullity}
    if r.verdict == "Iso":
        out["phi_w"] = io.fraction_matrix(r.phi_w)
        out["phi_i"] = io.fraction_matrix(r.phi_i)
    out["seed"] = args.seed
    return out


def _cmd_segre(args, field):
    s = _load_bundle(args.input)
    z = bd.segre_intersection(s, args.seed)
    return {
        "verdict": z.verdict,
        "length": io.length_value(z.length),
        "points": io.points_obj(z.points, key="w"),
        "hyperplanes": [io.scalar_list(h) for h in z.hyperplanes],
        "residual": [{"degree": d, "mult": m} for d, m in z.residual],
        "seed": args.seed,
    }


def _cmd_tomthumb(args, field):
    r = tn.tom_thumb_check(_dims(args.dims))
    return {"dims": list(r.dims), "paths": r.paths, "totals": [list(t) for t in r.totals], "passed": True, "seed": args.seed}


def _cmd_weights(args, field):
    dims = _dims(args.dims)
    try:
        N = Fraction(args.N)
    except ValueError:
        raise ParseError(f"bad N {args.N!r}") from None
    w = tn.canonical_weights(dims, N)
    out = {"N": format_scalar(w.N), "weights": [list(x) for x in w.weights]}
    if args.tensor:
        a, _ = io.load_tensor(args.tensor)
        lo, hi = tn.hm_min_weight(a, w)
        out["min"], out["max"] = lo, hi
    out["seed"] = args.seed
    return out


def _cmd_modulidim(args, field):
    return {"dimension": bd.moduli_dimension(args.n, args.k, args.i), "seed": args.seed}


def _cmd_normalform(args, field):
    s = _load_bundle(args.input)
    hs = io.load_hyperplanes(args.hyperplanes)
    a, bs = bd.column_normal_form(s, hs)
    obj = _tensor_obj(a)
    obj["b"] = [io.scalar_list(b) for b in bs]
    return obj


_COMMANDS = {
    "unstable": _cmd_unstable,
    "member": _cmd_member,
    "sections": _cmd_sections,
    "elm": _cmd_elm,
    "make": _cmd_make,
    "gale": _cmd_gale,
    "stab": _cmd_stab,
    "iso": _cmd_iso,
    "segre": _cmd_segre,
    "tomthumb": _cmd_tomthumb,
    "weights": _cmd_weights,
    "modulidim": _cmd_modulidim,
    "normalform": _cmd_normalform,
}


# ------------------------------------------------------------------ parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--field", default="rational", help="'rational' (default) or 'fp:<prime>'")
    common.add_argument("--seed", type=int, default=0, help="PCG64 seed for randomized steps (default 0)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for multi-input verbs")
    common.add_argument("--json", action="store_true", help="JSON output (the only mode)")

    parser = _Parser(prog="steinerlab", description="Boundary-format tensors and Steiner bundles.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    for name, text in (
        ("check", "nondegeneracy by certificate and by minors"),
        ("hyperdet", "hyperdeterminant certificate"),
        ("invariant", "length of the unstable-hyperplane scheme"),
        ("classify", "Schwarzenberger / Logarithmic / Plain"),
    ):
        verb(name, text).add_argument("inputs", nargs="*", help="tensor files (default: stdin)")

    for name, text in (
        ("unstable", "scheme of unstable hyperplanes"),
        ("gale", "exchange the V and I factors"),
        ("stab", "infinitesimal stabilizer"),
        ("segre", "rank-one points of the image"),
    ):
        verb(name, text).add_argument("input", nargs="?", default="-")

    p = verb("member", "unstable-hyperplane test")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--hyperplane", required=True, help='coefficients, e.g. "1,1,0"')

    p = verb("sections", "kernel dimension of the multiplication maps")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--t", type=int, help="twist (default: 0..k)")

    p = verb("elm", "elementary transformation at an unstable hyperplane")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--hyperplane", required=True)

    p = verb("make", "construct a tensor or bundle")
    p.add_argument("kind", choices=["schwarzenberger", "logarithmic", "identity", "random", "lem1"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--dims", help='comma-separated format, e.g. "5,3,3"')
    p.add_argument("--hyperplanes", help="JSON file with a list of hyperplanes")
    p.add_argument("--pattern", choices=["general", "triangular", "diagonal"], default="general")
    p.add_argument("--beta", help="corner of the forced zero block, e.g. \"1,1\"")

    p = verb("iso", "isomorphism test")
    p.add_argument("first")
    p.add_argument("second")

    p = verb("tomthumb", "admissible-path slice totals")
    p.add_argument("--dims", required=True)

    p = verb("weights", "canonical one-parameter-subgroup weights")
    p.add_argument("--dims", required=True)
    p.add_argument("--N", default="1")
    p.add_argument("--tensor", help="evaluate (min, max) weight over this tensor's support")

    p = verb("modulidim", "dimension of the moduli locus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, required=True)

    p = verb("normalform", "column normal form at unstable hyperplanes")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--hyperplanes", required=True)
    return parser


def run(argv):
    """Execute one command; returns ``(exit_code, json_text)``."""
    try:
        args = build_parser().parse_args(argv)
        field = _parse_field(args.field)
        if field is not None:
            _warn("modular arithmetic: zero certificates are re-verified over the rationals")
        if args.verb in _BATCH:
            report = _batch(args, field)
        else:
            report = _COMMANDS[args.verb](args, field)
        return 0, io.dumps(report)
    except DomainError as exc:
        return 2, io.dumps({"error": type(exc).__name__, "message": str(exc)})
    except ParseError as exc:
        return 1, io.dumps({"error": "ParseError", "message": str(exc)})


def main(argv=None):
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code == 0 else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
