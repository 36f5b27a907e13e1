"""Steiner bundles on P^n given by nondegenerate tensors ``a[w][v][i]``.

The bundle dual ``S*`` is the kernel of ``W (x) O -> I (x) O(1)``, whose matrix
is ``M_A[i][w] = sum_v a[w][v][i] x_v`` (k rows, n+k columns). A hyperplane
``xi`` is unstable when ``image(A)`` in ``V (x) I`` meets ``xi (x) I``; these
hyperplanes form the determinantal scheme ``W(S)`` cut out by the maximal
minors of the B-matrix, the presentation of ``(V (x) I)/image(A)``.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from math import inf

import numpy as np

from .errors import (
    DegenerateTensor,
    DomainError,
    NonMemberHyperplane,
    NormalizationFailure,
    NotBoundaryFormat,
    NotNormalCrossing,
)
from .groebner import affine_dimension, buchberger, minors_ideal
from .linalg import (
    extend_to_basis,
    field_normalize,
    inverse,
    rank,
    rank_and_right_kernel,
    rref,
    solve_particular,
    subspace_intersect,
    transpose,
)
from .poly import Ring
from .scalars import QQ, GF
from .tensor import (
    BoundaryTensor,
    gale_permute,
    hyperdet_certificate,
    make_identity,
    multiplication_map,
)
from .zerodim import projective_length

__all__ = [
    "SteinerBundle",
    "new_bundle",
    "steiner_matrix",
    "nondegenerate_by_minors",
    "b_matrix",
    "UnstableScheme",
    "unstable_scheme",
    "is_member",
    "sections_dim",
    "column_normal_form",
    "elementary_transform",
    "schwarzenberger",
    "logarithmic",
    "normal_crossing",
    "w_invariant",
    "Classification",
    "classify",
    "SegreIntersection",
    "segre_intersection",
    "moduli_dimension",
    "has_multiple_point",
    "normalize_hyperplane",
    "gale",
]


@dataclass(frozen=True)
class SteinerBundle:
    """A nondegenerate tensor of format ``(n+k, n+1, k)`` with its parameters."""

    tensor: BoundaryTensor
    n: int
    k: int

    @property
    def dims(self):
        return self.tensor.dims


def new_bundle(a, n=None, k=None, check=True):
    """Validate ``a`` as a Steiner tensor; raises DegenerateTensor if Det vanishes."""
    if not isinstance(a, BoundaryTensor):
        a = BoundaryTensor(a)
    if a.p != 2:
        raise NotBoundaryFormat(f"a Steiner tensor has 3 factors, got {a.p + 1}")
    n0, k0 = a.format.steiner_params()
    if (n is not None and n != n0) or (k is not None and k != k0):
        raise NotBoundaryFormat(
            f"dims {a.dims} read as (n+k, n+1, k) give (n, k) = ({n0}, {k0}), not ({n}, {k})"
        )
    if n0 < 1 or k0 < 1:
        raise NotBoundaryFormat(f"need n, k >= 1, got ({n0}, {k0})")
    if check and not hyperdet_certificate(a):
        raise DegenerateTensor("hyperdeterminant certificate vanishes")
    return SteinerBundle(a, n0, k0)


def _tensor(s):
    return s.tensor if isinstance(s, SteinerBundle) else s


def _params(a):
    return a.format.steiner_params()


def steiner_matrix(a, ring=None):
    """``M_A``: k x (n+k) matrix of linear forms in ``x0..xn``."""
    a = _tensor(a)
    nw, nv, ni = a.dims
    if ring is None:
        ring = Ring([f"x{v}" for v in range(nv)], field=a.field)
    m = [[ring.zero() for _ in range(nw)] for _ in range(ni)]
    for w, v, i in a.support():
        m[i][w] = m[i][w] + ring.monomial([int(j == v) for j in range(nv)], a.entries[w, v, i])
    return m


def nondegenerate_by_minors(a, prime=None):
    """True iff the maximal minors of ``M_A`` vanish only at the origin.

    With ``prime`` the test is first run modulo that prime: an empty locus
    mod p implies an empty locus over QQ, while a nonempty one is rechecked
    over QQ.
    """
    a = _tensor(a)
    if a.p != 2:
        raise DomainError("nondegeneracy by minors is defined for p = 2")
    n, k = _params(a)
    if prime is not None:
        F = GF(prime)
        ring = Ring([f"x{v}" for v in range(n + 1)], field=F)
        modded = BoundaryTensor(np.vectorize(F, otypes=[object])(a.entries), field=F)
        minors = minors_ideal(steiner_matrix(modded, ring), k, ring)
        gens = [g for g in minors if g]
        if gens and affine_dimension(buchberger(gens, ring=ring)) <= 0:
            return True
    ring = Ring([f"x{v}" for v in range(n + 1)], field=a.field)
    gens = [g for g in minors_ideal(steiner_matrix(a, ring), k, ring) if g]
    if not gens:
        return False
    return affine_dimension(buchberger(gens, ring=ring)) <= 0


# ------------------------------------------------------------------ image of A


def _image_vectors(a):
    """Columns of A inside ``V (x) I``, coordinate ``v*k + i``."""
    nw, nv, ni = a.dims
    return [[a.entries[w, v, i] for v in range(nv) for i in range(ni)] for w in range(nw)]


def normalize_hyperplane(xi, n=None):
    xi = [Fraction(x) for x in xi]
    if n is not None and len(xi) != n + 1:
        raise DomainError(f"hyperplane needs {n + 1} coefficients, got {len(xi)}")
    if not any(xi):
        raise DomainError("zero hyperplane")
    return tuple(field_normalize(xi))


def _hyperplane_space(xi, ni):
    nv = len(xi)
    out = []
    for i in range(ni):
        vec = [Fraction(0)] * (nv * ni)
        for v in range(nv):
            vec[v * ni + i] = xi[v]
        out.append(vec)
    return out


def _unstable_section(a, xi):
    """Basis of ``image(A) ∩ (xi (x) I)``."""
    nw, nv, ni = a.dims
    return subspace_intersect(_image_vectors(a), _hyperplane_space(xi, ni), nv * ni, a.field)


def is_member(s, xi):
    """``(member, h0)`` where ``h0 = dim(image(A) ∩ xi (x) I)``."""
    a = _tensor(s)
    n, _ = _params(a)
    xi = normalize_hyperplane(xi, n)
    h0 = len(_unstable_section(a, xi))
    if h0 > 1:
        raise NormalizationFailure(f"h0 = {h0} > 1 at {xi}")
    return h0 >= 1, h0


def sections_dim(s, t):
    a = _tensor(s)
    m = multiplication_map(a, t)
    ncols = len(m[0]) if m else 0
    return ncols - rank(m, a.field)


# ------------------------------------------------------------------ B-matrix


def b_matrix(s, ring=None):
    """Presentation of ``(V (x) I)/image(A)`` as an ``n(k-1) x k`` matrix in ``y``.

    The image is row-reduced; the non-pivot coordinates (order ``v`` major,
    ``i`` minor) form the quotient basis, and ``B[q][i] = sum_v pi(x_v (x) e_i)_q y_v``.
    """
    a = _tensor(s)
    nw, nv, ni = a.dims
    if ring is None:
        ring = Ring([f"y{v}" for v in range(nv)], field=a.field)
    R, pivots = rref(_image_vectors(a), a.field, nv * ni)
    if len(pivots) != nw:
        raise NormalizationFailure("A is not injective")
    pset = set(pivots)
    quotient = [c for c in range(nv * ni) if c not in pset]
    qpos = {c: j for j, c in enumerate(quotient)}
    prow = {c: R[r] for r, c in enumerate(pivots)}

    def projection(c):
        if c in qpos:
            return {qpos[c]: a.field.one()}
        row = prow[c]
        return {qpos[q]: -row[q] for q in quotient if row[q]}

    B = [[ring.zero() for _ in range(ni)] for _ in quotient]
    for v in range(nv):
        yv = ring.var(v)
        for i in range(ni):
            for q, c in projection(v * ni + i).items():
                B[q][i] = B[q][i] + yv * c
    return B


# ------------------------------------------------------------------ W(S)


@dataclass
class UnstableScheme:
    """The scheme of unstable hyperplanes.

    ``points`` are ``(xi, multiplicity)`` with ``xi`` normalized;
    ``residual`` lists ``(degree, multiplicity)`` of non-rational clusters.
    """

    b: list
    ideal: list
    verdict: str
    length: object
    points: list = dc_field(default_factory=list)
    residual: list = dc_field(default_factory=list)
    seed: int = 0
    gb: object = None
    distinct: object = inf

    @property
    def is_finite(self):
        return self.verdict == "Finite"


def _w_ring(n, field=QQ):
    return Ring([f"y{v}" for v in range(n + 1)], field=field)


def _unstable_ideal(a):
    n, k = _params(a)
    ring = _w_ring(n, a.field)
    B = b_matrix(a, ring)
    if len(B) < k:
        return ring, B, []
    gens = minors_ideal(B, k, ring)
    return ring, B, gens


def unstable_scheme(s, seed=0):
    """Compute ``W(S)`` from the maximal minors of the B-matrix."""
    a = _tensor(s)
    n, k = _params(a)
    ring, B, gens = _unstable_ideal(a)
    nonzero = [g for g in gens if g]
    if not nonzero:
        return UnstableScheme(B, gens, "Infinite", inf, seed=seed)
    gb = buchberger(nonzero, ring=ring)
    rep = projective_length(gb, seed=seed)
    if not rep.is_finite:
        return UnstableScheme(B, gens, "Infinite", inf, seed=seed, gb=gb)
    if rep.length > n + k + 1:
        raise NormalizationFailure(f"finite length {rep.length} exceeds n+k+1 = {n + k + 1}")
    for xi, _ in rep.points:
        if not is_member(a, xi)[0]:
            raise NormalizationFailure(f"computed point {xi} fails the membership test")
    return UnstableScheme(
        B, gens, "Finite", rep.length, rep.points, rep.residual, seed, gb, rep.distinct
    )


def w_invariant(s, seed=0):
    """Length of ``W(S)``: an integer in ``0..n+k+1`` or ``math.inf``."""
    return unstable_scheme(s, seed).length


@dataclass(frozen=True)
class Classification:
    """``kind`` is "Schwarzenberger", "Logarithmic" or "Plain"."""

    kind: str
    length: object
    closed_points: object = inf

    def __str__(self):
        return self.kind if self.length == inf else f"{self.kind}({self.length})"


def classify(s, seed=0, scheme=None):
    a = _tensor(s)
    n, k = _params(a)
    scheme = scheme or unstable_scheme(a, seed)
    if scheme.length == inf:
        return Classification("Schwarzenberger", inf)
    # logarithmic bundles need n+k+1 distinct unstable hyperplanes, not length
    kind = "Logarithmic" if scheme.distinct >= n + k + 1 else "Plain"
    return Classification(kind, scheme.length, scheme.distinct)


def has_multiple_point(s, seed=0):
    """``{"schwarzenberger": bool, "points": [(xi, mult), ...]}`` for mult >= 2.

    For every multiple point ``H`` the elementary transform at ``H`` is
    checked to keep ``H`` unstable.
    """
    a = _tensor(s)
    sch = unstable_scheme(a, seed)
    if not sch.is_finite:
        return {"schwarzenberger": True, "points": []}
    multiple = [(xi, m) for xi, m in sch.points if m >= 2]
    _, k = _params(a)
    if k >= 2:
        for xi, _ in multiple:
            s2 = elementary_transform(a, xi)
            if not is_member(s2, xi)[0]:
                raise NormalizationFailure(f"multiple point {xi} not unstable after transforming")
    return {"schwarzenberger": False, "points": multiple}


# ------------------------------------------------------------------ transformations


def _change_basis(a, gw=None, gi_inv=None):
    """``a'[w'][v][i'] = sum gi_inv[i'][i] a[w][v][i] gw[w][w']``."""
    arr = a.entries
    if gw is not None:
        arr = np.tensordot(np.array(transpose(gw), dtype=object), arr, axes=([1], [0]))
    if gi_inv is not None:
        arr = np.moveaxis(np.tensordot(np.array(gi_inv, dtype=object), arr, axes=([1], [2])), 0, 2)
    return BoundaryTensor(arr, field=a.field)


def _split_section(a, xi):
    """``(w, b)`` with ``A w = xi (x) b``; raises if ``xi`` is not unstable."""
    nw, nv, ni = a.dims
    sec = _unstable_section(a, xi)
    if not sec:
        raise NonMemberHyperplane(f"{list(xi)} is not an unstable hyperplane")
    u = sec[0]
    v0 = next(v for v, x in enumerate(xi) if x)
    b = [u[v0 * ni + i] / xi[v0] for i in range(ni)]
    image = _image_vectors(a)
    cols = [[image[w][r] for w in range(nw)] for r in range(nv * ni)]
    w = solve_particular(cols, u, a.field)
    if w is None:
        raise NormalizationFailure("section vector not in the image of A")
    return w, b


def column_normal_form(s, hyperplanes):
    """Change the W-basis so the first columns of ``M_A`` are ``b^j xi_j``.

    Returns ``(tensor, bs)``. Any ``min(s, k)`` of the vectors ``b^j`` are
    checked to be independent.
    """
    a = _tensor(s)
    n, k = _params(a)
    hyperplanes = [normalize_hyperplane(h, n) for h in hyperplanes]
    if len(hyperplanes) > n + k:
        raise DomainError(f"at most n+k = {n + k} hyperplanes")
    if not hyperplanes:
        return a, []
    ws, bs = [], []
    for xi in hyperplanes:
        w, b = _split_section(a, xi)
        ws.append(w)
        bs.append(b)
    try:
        gw = extend_to_basis(ws, n + k, a.field)
    except ValueError:
        raise NormalizationFailure("section vectors are dependent") from None
    size = min(len(bs), k)
    for sub in combinations(range(len(bs)), size):
        if rank([bs[j] for j in sub], a.field) < size:
            raise NormalizationFailure(f"vectors b at {list(sub)} are dependent")
    return _change_basis(a, gw=gw), bs


def elementary_transform(s, xi):
    """The bundle ``S'`` in ``S_{n,k-1}`` with ``0 -> S' -> S -> O_H -> 0``."""
    a = _tensor(s)
    n, k = _params(a)
    if k < 2:
        raise DomainError("elementary transformation needs k >= 2")
    xi = normalize_hyperplane(xi, n)
    w, b = _split_section(a, xi)
    gw = extend_to_basis([w], n + k, a.field)
    gi = extend_to_basis([b], k, a.field)
    moved = _change_basis(a, gw=gw, gi_inv=inverse(gi, a.field))
    ent = moved.entries
    for v in range(n + 1):
        for i in range(k):
            want = xi[v] if i == 0 else 0
            if ent[0, v, i] != want:
                raise NormalizationFailure("first column is not (xi, 0, ..., 0)")
    sub = BoundaryTensor(ent[1:, :, 1:], field=a.field)
    try:
        return new_bundle(sub)
    except DegenerateTensor:
        raise NormalizationFailure("elementary transform is degenerate") from None


def gale(s):
    """Gale transform as a bundle in ``S_{k-1, n+1}``."""
    return new_bundle(gale_permute(_tensor(s)))


# ------------------------------------------------------------------ constructors


def schwarzenberger(n, k):
    """Identity tensor of format ``(n+k, n+1, k)``; ``M_A`` is the banded matrix."""
    if n < 1 or k < 1:
        raise DomainError("need n, k >= 1")
    return new_bundle(make_identity((n + k, n + 1, k)), check=False)


def _first_dependent(hyperplanes):
    m = len(hyperplanes)
    size = min(m, len(hyperplanes[0]))
    for sub in combinations(range(m), size):
        if rank([hyperplanes[j] for j in sub], QQ) < size:
            return sub
    return None


def normal_crossing(hyperplanes):
    """Every ``min(m, n+1)`` of the hyperplanes are linearly independent."""
    hyperplanes = [[Fraction(x) for x in h] for h in hyperplanes]
    if not hyperplanes:
        raise DomainError("empty hyperplane list")
    if len({len(h) for h in hyperplanes}) > 1:
        raise DomainError("hyperplanes of different lengths")
    return _first_dependent(hyperplanes) is None


def logarithmic(hyperplanes):
    """Steiner tensor of ``Omega(log H)`` for ``m >= n+2`` normal-crossing hyperplanes.

    With ``K`` (k x m) spanning the relations among the rows ``xi_j``, the
    column ``w = j`` of ``M_A`` is ``kappa^j xi_j`` for ``j < m``; the last
    hyperplane is absorbed in the relation.
    """
    hs = [[Fraction(x) for x in h] for h in hyperplanes]
    if not hs:
        raise DomainError("empty hyperplane list")
    nv = len(hs[0])
    if any(len(h) != nv for h in hs):
        raise DomainError("hyperplanes of different lengths")
    n, m = nv - 1, len(hs)
    if n < 1 or m < n + 2:
        raise DomainError(f"need at least n+2 = {n + 2} hyperplanes in P^{n}, got {m}")
    bad = _first_dependent(hs)
    if bad is not None:
        raise NotNormalCrossing(bad)
    k = m - n - 1
    _, kernel = rank_and_right_kernel(transpose(hs), QQ, m)
    if len(kernel) != k:
        raise NormalizationFailure("relation space has the wrong dimension")
    arr = np.empty((m - 1, nv, k), dtype=object)
    for j in range(m - 1):
        for v in range(nv):
            for i in range(k):
                arr[j, v, i] = kernel[i][j] * hs[j][v]
    a = BoundaryTensor(arr)
    s = new_bundle(a)
    for h in hs:
        if not is_member(s, h)[0]:
            raise NormalizationFailure(f"input hyperplane {h} is not unstable")
    return s


# ------------------------------------------------------------------ Segre section


@dataclass
class SegreIntersection:
    """Rank-one points of ``image(A)``; ``hyperplanes`` are their V-components."""

    ideal: list
    verdict: str
    length: object
    points: list = dc_field(default_factory=list)
    decompositions: list = dc_field(default_factory=list)
    hyperplanes: list = dc_field(default_factory=list)
    residual: list = dc_field(default_factory=list)


def segre_intersection(s, seed=0):
    """Intersect ``P(image A)`` with the Segre variety ``P(V) x P(I)``."""
    a = _tensor(s)
    nw, nv, ni = a.dims
    ring = Ring([f"w{j}" for j in range(nw)], field=a.field)
    mat = [[ring.zero() for _ in range(ni)] for _ in range(nv)]
    for w, v, i in a.support():
        mat[v][i] = mat[v][i] + ring.var(w) * a.entries[w, v, i]
    if min(nv, ni) < 2:
        return SegreIntersection([], "Infinite", inf)
    gens = minors_ideal(mat, 2, ring)
    nonzero = [g for g in gens if g]
    if not nonzero:
        return SegreIntersection(gens, "Infinite", inf)
    rep = projective_length(buchberger(nonzero, ring=ring), seed=seed)
    if not rep.is_finite:
        return SegreIntersection(gens, "Infinite", inf)
    decomps, hyper = [], []
    for pt, _ in rep.points:
        m = [[sum((pt[w] * a.entries[w, v, i] for w in range(nw)), Fraction(0)) for i in range(ni)] for v in range(nv)]
        if rank(m, QQ) != 1:
            raise NormalizationFailure(f"point {pt} is not of rank one")
        row = next(r for r in m if any(r))
        col_index = next(i for i, x in enumerate(row) if x)
        xi = normalize_hyperplane([m[v][col_index] for v in range(nv)])
        decomps.append((xi, tuple(field_normalize(row))))
        if xi not in hyper:
            hyper.append(xi)
    hyper.sort()
    return SegreIntersection(gens, "Finite", rep.length, rep.points, decomps, hyper, rep.residual)


# ------------------------------------------------------------------ moduli


def moduli_dimension(n, k, i):
    """``(k-1)(n-1)(k+n+1) - i[(n-1)(k-2) - 1]``."""
    if n < 2 or k < 3 or not 0 <= i <= n + k + 1:
        raise DomainError(f"need n >= 2, k >= 3, 0 <= i <= n+k+1; got ({n}, {k}, {i})")
    return (k - 1) * (n - 1) * (k + n + 1) - i * ((n - 1) * (k - 2) - 1)
