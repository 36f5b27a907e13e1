"""Zero-dimensional ideals: length, rational points and multiplicities.

The quotient ring ``R/I`` of a zero-dimensional ideal is a finite-dimensional
vector space with the standard monomials as basis. Multiplication by a
polynomial is a linear map on it, and (Stickelberger) its eigenvalues are the
values of the polynomial at the points of ``V(I)``, each repeated according to
the local multiplicity. A random linear form separates the points; its
rational eigenvalues give the rational points, the rest of its characteristic
polynomial is reported as residual data.

Only QQ coefficients are supported here.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm

import mpmath
import numpy as np

from .errors import NormalizationFailure, PositiveDimensional
from .groebner import affine_dimension, buchberger, hilbert_function
from .linalg import charpoly, identity, matmul, rank, rank_and_right_kernel, solve_particular
from .poly import Poly, Ring
from .scalars import QQ

__all__ = [
    "ZeroDimReport",
    "ProjectiveReport",
    "zero_dim_solve",
    "projective_length",
    "hilbert_stable_value",
    "squarefree_decomposition",
    "rational_roots",
]

MAX_DRAWS = 8


# ---------------------------------------------------------------- univariate
# Polynomials are coefficient lists, lowest degree first, without trailing zeros.


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _deriv(p):
    return _trim([i * c for i, c in enumerate(p)][1:])


def _divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    inv = 1 / b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] * inv
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] -= c * bc
        a = _trim(a)
    return _trim(q), a


def _monic(p):
    p = _trim(p)
    inv = 1 / p[-1]
    return [c * inv for c in p]


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    return _monic(a) if a else a


def _evaluate(p, x):
    v = 0
    for c in reversed(p):
        v = v * x + c
    return v


def squarefree_decomposition(p):
    """Yun's algorithm: ``[(f_1, 1), (f_2, 2), ...]`` with ``p ~ prod f_i**i``.

    Factors are monic and squarefree; trivial factors are omitted.
    """
    p = _monic([Fraction(c) for c in p])
    if len(p) <= 1:
        return []
    out = []
    dp = _deriv(p)
    a = _gcd(p, dp)
    b = _divmod(p, a)[0]
    c = _divmod(dp, a)[0]
    d = _trim([x - y for x, y in _zip_long(c, _deriv(b))])
    i = 1
    while len(b) > 1:
        a = _gcd(b, d) if d else _monic(b)
        if len(a) > 1:
            out.append((a, i))
        b = _divmod(b, a)[0]
        c = _divmod(d, a)[0] if d else []
        d = _trim([x - y for x, y in _zip_long(c, _deriv(b))])
        i += 1
    return out


def _zip_long(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


def rational_roots(p):
    """Distinct rational roots of the polynomial ``p`` (lowest degree first).

    Candidates come from high-precision numerical roots: a rational root
    ``u/v`` of a primitive integer polynomial has ``v`` dividing the leading
    coefficient, so it is an integer multiple of ``1/lead``. Every candidate
    is verified exactly.
    """
    p = _trim([Fraction(c) for c in p])
    roots = []
    if not p or len(p) == 1:
        return roots
    while not p[0]:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        p = p[1:]
    if len(p) == 1:
        return roots
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    lead = abs(ints[-1])
    digits = max(len(str(abs(c))) for c in ints)
    dps = 30 + 2 * digits + 4 * len(ints)
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c) for c in reversed(ints)]
        try:
            approx = mpmath.polyroots(coeffs, maxsteps=200 + 20 * len(ints), extraprec=4 * dps)
        except mpmath.libmp.NoConvergence:
            approx = mpmath.polyroots(coeffs, maxsteps=2000, extraprec=16 * dps)
        for r in approx:
            re = mpmath.re(r)
            if abs(mpmath.im(r)) > mpmath.mpf(10) ** (-dps // 3) * (1 + abs(re)):
                continue
            base = int(mpmath.floor(re * lead))
            for num in (base - 1, base, base + 1, base + 2):
                cand = Fraction(num, lead)
                if cand not in roots and _evaluate(p, cand) == 0:
                    roots.append(cand)
    return sorted(roots)


# --------------------------------------------------------------- multivariate


@dataclass
class ZeroDimReport:
    """Structure of a zero-dimensional affine scheme.

    ``points`` holds ``(coordinates, multiplicity)`` for rational points and
    ``residual`` holds ``(factor degree, multiplicity)`` for clusters of
    non-rational points, so that
    ``length == sum(m for _, m in points) + sum(d * m for d, m in residual)``.
    """

    length: int
    standard_monomials: list
    points: list
    residual: list
    method: str = "generic-form"
    form: list = dc_field(default_factory=list)
    distinct: int = 0

    def rational_length(self):
        return sum(m for _, m in self.points)


def multiplication_matrices(gb, std=None):
    """Matrices of multiplication by each variable on the standard-monomial basis."""
    ring = gb.ring
    if std is None:
        std = gb.standard_monomials()
    index = {m: i for i, m in enumerate(std)}
    L = len(std)
    mats = []
    for v in range(ring.nvars):
        M = [[Fraction(0)] * L for _ in range(L)]
        for j, m in enumerate(std):
            e = m[:v] + (m[v] + 1,) + m[v + 1 :]
            nf = gb.reduce(Poly(ring, {e: Fraction(1)}))
            for ee, c in nf.terms.items():
                M[index[ee]][j] = c
        mats.append(M)
    return mats


def _monomial_matrices(std, mats):
    """Multiplication matrix of every standard monomial (built by products)."""
    n = len(mats)
    L = len(std)
    out = {(0,) * n: identity(L)}
    for m in sorted(std, key=sum):
        if m in out:
            continue
        v = next(i for i, d in enumerate(m) if d)
        prev = m[:v] + (m[v] - 1,) + m[v + 1 :]
        out[m] = matmul(mats[v], out[prev])
    return out


def distinct_point_count(std, mats):
    """Number of distinct points over the algebraic closure (rank of the trace form)."""
    mono = _monomial_matrices(std, mats)
    L = len(std)
    traces = [[None] * L for _ in range(L)]
    for i in range(L):
        for j in range(i, L):
            A, B = mono[std[i]], mono[std[j]]
            t = sum(A[r][c] * B[c][r] for r in range(L) for c in range(L))
            traces[i][j] = traces[j][i] = t
    return rank(traces)


def _restrict(mat, basis_cols):
    """Matrix of ``mat`` on the invariant subspace spanned by ``basis_cols``."""
    L = len(mat)
    k = len(basis_cols)
    Q = [[basis_cols[c][r] for c in range(k)] for r in range(L)]
    cols = []
    for v in basis_cols:
        image = [sum(mat[r][c] * v[c] for c in range(L)) for r in range(L)]
        x = solve_particular(Q, image, QQ)
        if x is None:
            raise NormalizationFailure("subspace is not invariant")
        cols.append(x)
    return [[cols[c][r] for c in range(k)] for r in range(k)]


def _poly_of_matrix(coeffs, M):
    """``coeffs(M)`` for a coefficient list (lowest first)."""
    L = len(M)
    result = [[Fraction(0)] * L for _ in range(L)]
    for c in reversed(coeffs):
        result = matmul(result, M)
        for i in range(L):
            result[i][i] += c
    return result


def _generalized_eigenspace(M, factor, mult):
    P = _poly_of_matrix(factor, M)
    Pk = identity(len(M))
    for _ in range(mult):
        Pk = matmul(Pk, P)
    return rank_and_right_kernel(Pk, QQ)[1]


def _is_nilpotent(M, power):
    L = len(M)
    P = identity(L)
    for _ in range(power):
        P = matmul(P, M)
    return all(not x for r in P for x in r)


def _split_by_form(mats, form, nsep):
    """Try to resolve points using the linear form ``form``; None on failure."""
    L = len(mats[0])
    Ml = [[sum(c * m[r][s] for c, m in zip(form, mats)) for s in range(L)] for r in range(L)]
    chi = charpoly(Ml, QQ)
    levels = squarefree_decomposition(chi)
    if sum(len(f) - 1 for f, _ in levels) != nsep:
        return None
    points, residual = [], []
    for f, mult in levels:
        rem = f
        for lam in rational_roots(f):
            rem = _divmod(rem, [-lam, Fraction(1)])[0]
            basis = _generalized_eigenspace(Ml, [-lam, Fraction(1)], mult)
            if len(basis) != mult:
                return None
            coords = []
            for m in mats:
                R = _restrict(m, basis)
                t = sum(R[i][i] for i in range(mult)) / mult
                shifted = [[R[i][j] - (t if i == j else 0) for j in range(mult)] for i in range(mult)]
                if not _is_nilpotent(shifted, mult):
                    return None
                coords.append(t)
            points.append((tuple(coords), mult))
        if len(rem) > 1:
            residual.append((len(rem) - 1, mult))
    return points, residual


def _split_by_variables(mats):
    """Fallback: simultaneous generalized eigenspaces, one variable at a time."""
    L = len(mats[0])
    points, residual = [], []
    one = Fraction(1)
    stack = [([[one if r == c else Fraction(0) for r in range(L)] for c in range(L)], ())]
    while stack:
        basis, coords = stack.pop()
        v = len(coords)
        if v == len(mats):
            points.append((coords, len(basis)))
            continue
        R = _restrict(mats[v], basis)
        for f, mult in squarefree_decomposition(charpoly(R, QQ)):
            rem = f
            for lam in rational_roots(f):
                rem = _divmod(rem, [-lam, one])[0]
                sub = _generalized_eigenspace(R, [-lam, one], mult)
                # lift back to the ambient basis
                lifted = [
                    [sum(basis[k][r] * s[k] for k in range(len(basis))) for r in range(L)]
                    for s in sub
                ]
                stack.append((lifted, coords + (lam,)))
            if len(rem) > 1:
                residual.append((len(rem) - 1, mult))
    return points, residual


def zero_dim_solve(gb, seed=0, max_draws=MAX_DRAWS):
    """Length, rational points with multiplicities and residual of ``V(gb)``.

    Raises PositiveDimensional unless the ideal is zero-dimensional (the unit
    ideal gives an empty report).
    """
    dim = affine_dimension(gb)
    if dim > 0:
        raise PositiveDimensional(f"ideal has affine dimension {dim}")
    if dim < 0:
        return ZeroDimReport(0, [], [], [], method="empty")
    if gb.ring.field != QQ:
        raise NotImplementedError("point extraction is implemented over QQ only")
    std = gb.standard_monomials()
    mats = multiplication_matrices(gb, std)
    nsep = distinct_point_count(std, mats)
    rng = np.random.default_rng(seed)
    n = gb.ring.nvars
    result = None
    form = []
    for _ in range(max_draws):
        form = [Fraction(int(c)) for c in rng.integers(-9, 10, size=n)]
        if not any(form):
            continue
        result = _split_by_form(mats, form, nsep)
        if result is not None:
            method = "generic-form"
            break
    if result is None:
        result = _split_by_variables(mats)
        method = "per-variable"
        form = []
    points, residual = result
    points.sort()
    residual.sort()
    report = ZeroDimReport(len(std), std, points, residual, method, form, nsep)
    total = report.rational_length() + sum(d * m for d, m in residual)
    if total != report.length:
        raise NormalizationFailure(f"multiplicities sum to {total}, length {report.length}")
    return report


# ----------------------------------------------------------------- projective


@dataclass
class ProjectiveReport:
    """Zero-dimensional (or infinite) projective scheme.

    ``verdict`` is "Infinite" or "Finite"; for finite schemes ``length`` is
    the degree, ``points`` the rational points (normalised so the first
    nonzero coordinate is 1) with multiplicities, and ``residual`` the
    non-rational clusters as ``(degree, multiplicity)``; ``distinct`` counts
    closed points over the algebraic closure.
    """

    verdict: str
    length: object
    points: list
    residual: list
    hilbert_value: object = None
    seed: int = 0
    chart_form: list = dc_field(default_factory=list)
    distinct: int = 0

    @property
    def is_finite(self):
        return self.verdict == "Finite"


def _normalize_point(p):
    lead = next(x for x in p if x)
    return tuple(Fraction(x) / lead for x in p)


def hilbert_stable_value(gb, start=None, limit=40):
    """Stable value of the Hilbert function of a one-dimensional cone.

    Scans degrees upward from the largest generator degree until ``nvars``
    consecutive values agree.
    """
    n = gb.ring.nvars
    if start is None:
        start = max((p.total_degree() for p in gb.polys), default=0)
    run_value, run_len = None, 0
    for d in range(start, start + limit):
        h = hilbert_function(gb, d)
        if h == run_value:
            run_len += 1
        else:
            run_value, run_len = h, 1
        if run_len >= n:
            return run_value
    raise NormalizationFailure("Hilbert function did not stabilise")


def _chart_ring(ring, var):
    names = ring.names[:var] + ring.names[var + 1 :]
    return Ring(names, "grevlex", ring.field)


def projective_length(gb, seed=0, max_draws=MAX_DRAWS, verify_charts=True):
    """Projective scheme defined by a homogeneous Groebner basis.

    Infinite when the affine cone has dimension at least 2. Otherwise a seeded
    random change of coordinates ``y0 -> l(y)`` with ``l = y0 + sum c_j y_j``
    moves every point into the chart ``l != 0``; the draw is accepted when the
    chart length matches the stable Hilbert function value. Each standard
    chart ``y_j = 1`` is then solved independently and must reproduce the
    same rational points and multiplicities.
    """
    ring = gb.ring
    if any(not p.is_homogeneous() for p in gb.polys):
        raise ValueError("projective_length needs homogeneous generators")
    n = ring.nvars
    dim = affine_dimension(gb)
    if dim >= 2:
        return ProjectiveReport("Infinite", None, [], [], None, seed)
    if dim <= 0:
        return ProjectiveReport("Finite", 0, [], [], 0, seed)
    hval = hilbert_stable_value(gb)
    rng = np.random.default_rng(seed)
    chart_ring = _chart_ring(ring, 0)
    lin_ring = Ring(ring.names, "grevlex", ring.field)
    gens = [Poly(lin_ring, p.terms) for p in gb.polys]
    accepted = None
    for _ in range(max_draws):
        c = [Fraction(int(x)) for x in rng.integers(-5, 6, size=n - 1)]
        # old y0 = new y0 - sum c_j y_j ; old y_j = new y_j
        images = [lin_ring.linear_form([1] + [-x for x in c])] + lin_ring.gens()[1:]
        moved = [g.compose(images, lin_ring) for g in gens]
        chart = [m.dehomogenize(0, chart_ring) for m in moved]
        chart = [p for p in chart if p]
        cgb = buchberger(chart, ring=chart_ring)
        rep = zero_dim_solve(cgb, seed=seed)
        if rep.length == hval:
            accepted = (c, rep)
            break
    if accepted is None:
        raise NormalizationFailure("no coordinate change captured every point")
    c, rep = accepted
    points = []
    for coords, mult in rep.points:
        y0 = 1 - sum(cj * yj for cj, yj in zip(c, coords))
        points.append((_normalize_point((y0,) + tuple(coords)), mult))
    points.sort()
    if verify_charts:
        _verify_charts(gens, lin_ring, points, seed)
    return ProjectiveReport(
        "Finite", rep.length, points, rep.residual, hval, seed, [1] + c, rep.distinct
    )


def _verify_charts(gens, ring, points, seed):
    lookup = dict(points)
    for j in range(ring.nvars):
        cr = _chart_ring(ring, j)
        chart = [p for p in (g.dehomogenize(j, cr) for g in gens) if p]
        cgb = buchberger(chart, ring=cr)
        if affine_dimension(cgb) > 0:
            raise NormalizationFailure(f"chart {j} is positive dimensional")
        rep = zero_dim_solve(cgb, seed=seed)
        seen = set()
        for coords, mult in rep.points:
            pt = _normalize_point(coords[:j] + (Fraction(1),) + coords[j:])
            if lookup.get(pt) != mult:
                raise NormalizationFailure(f"chart {j}: point {pt} (mult {mult}) not matched")
            seen.add(pt)
        for pt, _ in points:
            if pt[j] and pt not in seen:
                raise NormalizationFailure(f"chart {j} lost point {pt}")
