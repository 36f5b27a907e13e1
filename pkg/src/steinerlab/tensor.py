"""Boundary-format tensors.

A tensor of format ``(k0+1) x (k1+1) x ... x (kp+1)`` with ``k0 = k1 + ... + kp``
is stored as a numpy object array of exact scalars, index ``i0`` outermost.
For ``p = 2`` the three factors play the roles W, V, I of a Steiner bundle on
``P(V)``: ``dims = (n+k, n+1, k)``.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from math import comb, factorial, prod

import numpy as np

from .errors import DegenerateTensor, DomainError, EnumerationTooLarge, NormalizationFailure, NotBoundaryFormat
from .groebner import monomials_of_degree
from .linalg import as_rows, charpoly, determinant_exact, matmul, rank_and_right_kernel
from .poly import Ring, grevlex_key
from .scalars import QQ, field_of
from .zerodim import rational_roots, squarefree_decomposition

__all__ = [
    "BoundaryFormat",
    "BoundaryTensor",
    "validate_format",
    "flatten_MA",
    "is_triangular_given_basis",
    "is_diagonal_given_basis",
    "is_identity_given_basis",
    "make_identity",
    "WeightVector",
    "canonical_weights",
    "hm_min_weight",
    "TomThumbReport",
    "tom_thumb_check",
    "lem1_pattern_tensor",
    "random_tensor",
    "sparse_tensor",
    "triangular_tensor",
    "diagonal_tensor",
    "multiplication_map",
    "hyperdet_certificate",
    "certificate_degree",
    "StabilizerReport",
    "stabilizer_algebra",
    "IsoResult",
    "iso_test",
    "gale_permute",
    "apply_group_element",
]

MAX_PATHS = 10**6


@dataclass(frozen=True)
class BoundaryFormat:
    dims: tuple

    @property
    def p(self):
        return len(self.dims) - 1

    @property
    def ks(self):
        return tuple(d - 1 for d in self.dims)

    def steiner_params(self):
        """``(n, k)`` when the format is read as ``(n+k, n+1, k)``."""
        if self.p != 2:
            raise DomainError("Steiner parameters need p = 2")
        return self.dims[1] - 1, self.dims[2]


def validate_format(dims):
    dims = tuple(int(d) for d in dims)
    if len(dims) < 3:
        raise NotBoundaryFormat(f"need at least 3 factors, got {len(dims)}")
    if any(d < 1 for d in dims):
        raise NotBoundaryFormat(f"dimensions must be positive: {dims}")
    ks = [d - 1 for d in dims]
    if ks[0] != sum(ks[1:]):
        raise NotBoundaryFormat(
            f"k0 = {ks[0]} but k1 + ... + kp = {' + '.join(map(str, ks[1:]))} = {sum(ks[1:])}"
        )
    return BoundaryFormat(dims)


class BoundaryTensor:
    """Dense boundary-format tensor with exact entries (read-only)."""

    __slots__ = ("format", "entries", "field")

    def __init__(self, entries, dims=None, field=None):
        arr = np.array(entries, dtype=object)
        if dims is not None and tuple(arr.shape) != tuple(dims):
            raise NotBoundaryFormat(f"entry array has shape {arr.shape}, expected {tuple(dims)}")
        self.format = validate_format(arr.shape)
        if field is None:
            field = field_of(arr.flat)
        arr = np.vectorize(field, otypes=[object])(arr) if arr.size else arr
        arr.flags.writeable = False
        self.entries = arr
        self.field = field

    @property
    def dims(self):
        return self.format.dims

    @property
    def p(self):
        return self.format.p

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other):
        return (
            isinstance(other, BoundaryTensor)
            and self.dims == other.dims
            and all(x == y for x, y in zip(self.entries.flat, other.entries.flat))
        )

    def __hash__(self):
        return hash((self.dims, tuple(self.entries.flat)))

    def __repr__(self):
        return f"BoundaryTensor(dims={self.dims}, nonzero={len(self.support())})"

    def support(self):
        return [idx for idx in np.ndindex(*self.dims) if self.entries[idx]]

    def scale(self, c):
        return BoundaryTensor(self.entries * self.field(c), field=self.field)

    def is_zero(self):
        return not self.support()

    def to_nested(self):
        return self.entries.tolist()


def _fresh(dims, field=QQ):
    arr = np.empty(dims, dtype=object)
    arr.fill(field.zero())
    return arr


# ------------------------------------------------------------------ flattening


def flatten_MA(a, ring=None):
    """Matrix ``m[i1][i0] = sum a[i0][i1][i2..ip] x2_{i2} ... xp_{ip}``.

    Entries are multilinear polynomials in the variables of factors 2..p. For
    ``p = 2`` the variables are named ``x0, x1, ...``; otherwise ``x{j}_{i}``.
    """
    dims = a.dims
    if ring is None:
        if a.p == 2:
            names = [f"x{i}" for i in range(dims[2])]
        else:
            names = [f"x{j}_{i}" for j in range(2, a.p + 1) for i in range(dims[j])]
        ring = Ring(names, field=a.field)
    offsets = np.cumsum([0] + list(dims[2:-1]))
    m = [[ring.zero() for _ in range(dims[0])] for _ in range(dims[1])]
    for idx in np.ndindex(*dims):
        c = a.entries[idx]
        if not c:
            continue
        e = [0] * ring.nvars
        for j, ij in enumerate(idx[2:]):
            e[offsets[j] + ij] += 1
        m[idx[1]][idx[0]] = m[idx[1]][idx[0]] + ring.monomial(e, c)
    return m


# ------------------------------------------------------------------ patterns


def is_triangular_given_basis(a):
    return all(i[0] <= sum(i[1:]) for i in a.support())


def is_diagonal_given_basis(a):
    return all(i[0] == sum(i[1:]) for i in a.support())


def is_identity_given_basis(a):
    return all(
        a.entries[i] == (1 if i[0] == sum(i[1:]) else 0) for i in np.ndindex(*a.dims)
    )


def make_identity(dims):
    fmt = validate_format(dims)
    arr = _fresh(fmt.dims)
    for idx in np.ndindex(*fmt.dims):
        if idx[0] == sum(idx[1:]):
            arr[idx] = Fraction(1)
    return BoundaryTensor(arr)


# ------------------------------------------------------------------ weights


@dataclass(frozen=True)
class WeightVector:
    """Integer weight list per factor; ``weights[0]`` is for factor 0."""

    weights: tuple
    N: Fraction


def canonical_weights(dims, N=1):
    """The weights ``a^0_i = N(k0 - 2i)`` and ``a^j_i = N(2i - k_j)``.

    Half-integral ``N`` is allowed only when every ``k_j`` (j >= 1) is even.
    """
    fmt = validate_format(dims)
    ks = fmt.ks
    N = Fraction(N)
    if N.denominator not in (1, 2):
        raise DomainError(f"N = {N} must be an integer or a half-integer")
    if N.denominator == 2 and any(k % 2 for k in ks[1:]):
        raise DomainError(f"half-integral N needs every k_j even, got {ks[1:]}")
    lists = [[N * (ks[0] - 2 * i) for i in range(ks[0] + 1)]]
    for k in ks[1:]:
        lists.append([N * (2 * i - k) for i in range(k + 1)])
    out = []
    for w in lists:
        if any(x.denominator != 1 for x in w) or sum(w) != 0:
            raise NormalizationFailure(f"weights {w} are not integral of sum zero")
        out.append(tuple(int(x) for x in w))
    return WeightVector(tuple(out), N)


def hm_min_weight(a, weights):
    """``(min, max)`` of ``sum_j w^j_{i_j}`` over the support of ``a``.

    ``weights`` is a WeightVector or a list of per-factor integer lists.
    Returns ``(None, None)`` for the zero tensor.
    """
    if isinstance(weights, WeightVector):
        weights = weights.weights
    if len(weights) != len(a.dims) or any(len(w) != d for w, d in zip(weights, a.dims)):
        raise DomainError("weight list lengths do not match the format")
    vals = [sum(w[i] for w, i in zip(weights, idx)) for idx in a.support()]
    if not vals:
        return None, None
    return min(vals), max(vals)


# ------------------------------------------------------------------ Tom Thumb


@dataclass
class TomThumbReport:
    """Slice totals per direction; ``totals[t]`` lists the totals of direction t+1."""

    dims: tuple
    paths: int
    totals: list


def _multiset_permutations(counts):
    total = sum(counts)
    if total == 0:
        yield ()
        return
    for d, c in enumerate(counts):
        if c:
            counts[d] -= 1
            for rest in _multiset_permutations(counts):
                yield (d,) + rest
            counts[d] += 1


def tom_thumb_check(dims, max_paths=MAX_PATHS):
    """Enumerate admissible paths in the box and compare parallel slice counts.

    A path visits ``k0 + 1`` points from the origin to ``(k1, ..., kp)``, one
    coordinate step at a time. For each direction the number of visited points
    in each slice, summed over all paths, must not depend on the slice.
    """
    fmt = validate_format(dims)
    ks = fmt.ks[1:]
    npaths = factorial(sum(ks)) // prod(factorial(k) for k in ks)
    if npaths > max_paths:
        raise EnumerationTooLarge(f"{npaths} admissible paths exceed the limit {max_paths}")
    sums = [[0] * (k + 1) for k in ks]
    count = 0
    for steps in _multiset_permutations(list(ks)):
        count += 1
        pos = [0] * len(ks)
        for d, j in enumerate(pos):
            sums[d][j] += 1
        for s in steps:
            pos[s] += 1
            for d, j in enumerate(pos):
                sums[d][j] += 1
    for d, row in enumerate(sums):
        if len(set(row)) > 1:
            raise NormalizationFailure(f"direction {d + 1}: unequal slice totals {row}")
    return TomThumbReport(fmt.dims, count, [tuple(r) for r in sums])


# ------------------------------------------------------------------ generators


def _rng(seed):
    return np.random.default_rng(seed)


def random_tensor(dims, seed=0, low=-3, high=3, mask=None):
    """Seeded tensor with integer entries in ``[low, high]``.

    ``mask(idx)`` returning False forces a zero at ``idx``.
    """
    fmt = validate_format(dims)
    rng = _rng(seed)
    vals = rng.integers(low, high + 1, size=fmt.dims)
    arr = _fresh(fmt.dims)
    for idx in np.ndindex(*fmt.dims):
        if mask is None or mask(idx):
            arr[idx] = Fraction(int(vals[idx]))
    return BoundaryTensor(arr)


def sparse_tensor(dims, seed=0):
    """Seeded tensor with entries drawn uniformly from {-1, 0, 1}."""
    return random_tensor(dims, seed, -1, 1)


def triangular_tensor(dims, seed=0, low=-3, high=3):
    return random_tensor(dims, seed, low, high, mask=lambda i: i[0] <= sum(i[1:]))


def diagonal_tensor(dims, seed=0, low=1, high=5):
    """Seeded tensor supported on ``i0 = i1 + ... + ip`` with nonzero entries."""
    fmt = validate_format(dims)
    rng = _rng(seed)
    arr = _fresh(fmt.dims)
    for idx in np.ndindex(*fmt.dims):
        if idx[0] == sum(idx[1:]):
            v = int(rng.integers(low, high + 1))
            arr[idx] = Fraction(v if v else 1)
    return BoundaryTensor(arr)


def lem1_pattern_tensor(dims, beta, seed=0, low=-3, high=3):
    """Seeded tensor vanishing where ``i_t <= beta_t`` (t >= 1) and ``i0 >= sum(beta)``."""
    fmt = validate_format(dims)
    beta = tuple(int(b) for b in beta)
    if len(beta) != fmt.p or any(not 0 <= b <= k for b, k in zip(beta, fmt.ks[1:])):
        raise DomainError(f"beta {beta} outside the box {fmt.ks[1:]}")
    b0 = sum(beta)

    def keep(idx):
        return not (idx[0] >= b0 and all(i <= b for i, b in zip(idx[1:], beta)))

    return random_tensor(dims, seed, low, high, mask=keep)


# ------------------------------------------------------------------ multiplication map


def _require_p2(a):
    if a.p != 2:
        raise DomainError(f"operation defined for p = 2 only, got p = {a.p}")


def _graded_monomials(nvars, d):
    return sorted(monomials_of_degree(nvars, d), key=grevlex_key, reverse=True)


def multiplication_map(a, t):
    """Matrix of ``W (x) S^t V -> I (x) S^(t+1) V`` induced by ``a[w][v][i]``.

    Rows are ``(i, m')`` and columns ``(w, m)``, index pairs ordered with the
    first component major and monomials in decreasing grevlex order.
    """
    _require_p2(a)
    if t < 0:
        raise DomainError("twist must be non-negative")
    nw, nv, ni = a.dims
    src = _graded_monomials(nv, t)
    dst = _graded_monomials(nv, t + 1)
    dpos = {m: j for j, m in enumerate(dst)}
    zero = a.field.zero()
    rows = [[zero] * (nw * len(src)) for _ in range(ni * len(dst))]
    for w, v, i in a.support():
        c = a.entries[w, v, i]
        for j, m in enumerate(src):
            m2 = m[:v] + (m[v] + 1,) + m[v + 1 :]
            r = i * len(dst) + dpos[m2]
            col = w * len(src) + j
            rows[r][col] = rows[r][col] + c
    return rows


def hyperdet_certificate(a, field=None):
    """Determinant of the square multiplication map at ``t = k - 1``.

    Nonzero exactly for nondegenerate tensors; homogeneous of degree
    ``k * C(n+k, k)`` in the entries. Pass ``field=GF(p)`` for a modular value.
    """
    _require_p2(a)
    n, k = a.format.steiner_params()
    m = multiplication_map(a, k - 1)
    if field is not None and field != a.field:
        m = [[field(x) for x in r] for r in m]
    return determinant_exact(m, field or a.field)


def certificate_degree(n, k):
    return k * comb(n + k, k)


# ------------------------------------------------------------------ group action


def apply_group_element(a, gs):
    """``(g.a)[j0..jp] = sum g0[j0][i0] ... gp[jp][ip] a[i0..ip]``."""
    if len(gs) != len(a.dims):
        raise DomainError(f"need {len(a.dims)} matrices, got {len(gs)}")
    arr = a.entries
    for axis, g in enumerate(gs):
        g = as_rows(g, a.field)
        d = a.dims[axis]
        if len(g) != d or any(len(r) != d for r in g):
            raise DomainError(f"factor {axis}: expected a {d}x{d} matrix")
        if not determinant_exact(g, a.field):
            raise DomainError(f"factor {axis}: singular matrix")
        G = np.array(g, dtype=object)
        arr = np.moveaxis(np.tensordot(G, arr, axes=([1], [axis])), 0, axis)
    return BoundaryTensor(arr, field=a.field)


def gale_permute(a):
    """Swap the V and I factors: ``a'[w][i][v] = a[w][v][i]``."""
    _require_p2(a)
    return BoundaryTensor(np.transpose(a.entries, (0, 2, 1)), field=a.field)


# ------------------------------------------------------------------ stabilizer


@dataclass
class StabilizerReport:
    """Infinitesimal projective stabilizer.

    ``kind`` is one of "Trivial", "Additive", "Multiplicative", "SL2" or
    "Anomaly" (a dimension or generator shape the classification excludes).
    ``generators`` holds ``(X, Y, Z, lam)`` tuples; ``y_eigenvalues`` the
    rational eigenvalues of Y with multiplicities when Y is semisimple.
    """

    dimension: int
    kind: str
    generators: list = dc_field(default_factory=list)
    y_eigenvalues: list = dc_field(default_factory=list)


def _stabilizer_system(a):
    nw, nv, ni = a.dims
    sizes = [nw * nw, nv * nv, ni * ni, 1]
    offs = np.cumsum([0] + sizes)
    nunk = int(offs[-1])
    zero = Fraction(0)
    rows = []
    ent = a.entries
    for w, v, i in np.ndindex(nw, nv, ni):
        r = [zero] * nunk
        # (X.a)[w,v,i] = sum_w' X[w][w'] a[w'][v][i], likewise for Y and Z
        for w2 in range(nw):
            if ent[w2, v, i]:
                r[offs[0] + w * nw + w2] += ent[w2, v, i]
        for v2 in range(nv):
            if ent[w, v2, i]:
                r[offs[1] + v * nv + v2] += ent[w, v2, i]
        for i2 in range(ni):
            if ent[w, v, i2]:
                r[offs[2] + i * ni + i2] += ent[w, v, i2]
        r[offs[3]] = -ent[w, v, i]
        rows.append(r)
    for f, d in enumerate((nw, nv, ni)):
        r = [zero] * nunk
        for j in range(d):
            r[offs[f] + j * d + j] = Fraction(1)
        rows.append(r)
    return rows, offs, nunk


def _unpack(vec, offs, dims):
    mats = []
    for f, d in enumerate(dims):
        base = offs[f]
        mats.append([[vec[base + r * d + c] for c in range(d)] for r in range(d)])
    return mats[0], mats[1], mats[2], vec[offs[3]]


def _matrix_poly(coeffs, M):
    n = len(M)
    acc = [[Fraction(0)] * n for _ in range(n)]
    for c in reversed(coeffs):
        acc = matmul(acc, M)
        for i in range(n):
            acc[i][i] += c
    return acc


def _is_zero_matrix(M):
    return all(not x for r in M for x in r)


def stabilizer_algebra(a, check=True):
    """Solve ``X.a + Y.a + Z.a = lam a`` with trace-free X, Y, Z."""
    _require_p2(a)
    if a.field != QQ:
        raise DomainError("stabilizer computation is implemented over QQ")
    if check and not hyperdet_certificate(a):
        raise DegenerateTensor("stabilizer classification needs a nondegenerate tensor")
    rows, offs, nunk = _stabilizer_system(a)
    _, ker = rank_and_right_kernel(rows, QQ, nunk)
    gens = [_unpack(v, offs, a.dims) for v in ker]
    dim = len(gens)
    if dim == 0:
        return StabilizerReport(0, "Trivial")
    if dim == 3:
        return StabilizerReport(3, "SL2", gens)
    if dim != 1:
        return StabilizerReport(dim, "Anomaly", gens)
    Y = gens[0][1]
    nv = len(Y)
    chi = charpoly(Y, QQ)
    Ypow = Y
    for _ in range(nv - 1):
        Ypow = matmul(Ypow, Y)
    if _is_zero_matrix(Ypow):
        return StabilizerReport(1, "Additive", gens)
    radical = [Fraction(1)]
    for f, _ in squarefree_decomposition(chi):
        radical = _poly_mul(radical, f)
    if not _is_zero_matrix(_matrix_poly(radical, Y)):
        return StabilizerReport(1, "Anomaly", gens)
    eig = []
    for f, mult in squarefree_decomposition(chi):
        eig.extend((r, mult) for r in rational_roots(f))
    eig.sort()
    return StabilizerReport(1, "Multiplicative", gens, eig)


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


# ------------------------------------------------------------------ isomorphism


@dataclass
class IsoResult:
    """``verdict`` is "Iso", "NotIso" or "Indeterminate".

    For "Iso", ``phi_w`` and ``phi_i`` satisfy ``A_v phi_w = phi_i B_v`` for
    every slice, where ``A_v[i][w] = a[w][v][i]``.
    """

    verdict: str
    nullity: int
    phi_w: list = None
    phi_i: list = None


def iso_test(a, b):
    """Decide whether two Steiner tensors give isomorphic bundles."""
    _require_p2(a)
    _require_p2(b)
    if a.dims != b.dims:
        raise DomainError(f"format mismatch: {a.dims} vs {b.dims}")
    nw, nv, ni = a.dims
    nunk = nw * nw + ni * ni
    zero = Fraction(0)
    A, B = a.entries, b.entries
    rows = []
    # unknown PhiW[r][c] at r*nw + c, PhiI[r][c] at nw*nw + r*ni + c
    for v, i, w in product(range(nv), range(ni), range(nw)):
        r = [zero] * nunk
        for w2 in range(nw):
            if A[w2, v, i]:
                r[w2 * nw + w] += A[w2, v, i]
        for i2 in range(ni):
            if B[w, v, i2]:
                r[nw * nw + i * ni + i2] -= B[w, v, i2]
        if any(r):
            rows.append(r)
    _, ker = rank_and_right_kernel(rows, QQ, nunk) if rows else (0, [])
    nullity = len(ker)
    if nullity == 0:
        return IsoResult("NotIso", 0)
    if nullity > 1:
        return IsoResult("Indeterminate", nullity)
    vec = ker[0]
    phi_w = [[vec[r * nw + c] for c in range(nw)] for r in range(nw)]
    phi_i = [[vec[nw * nw + r * ni + c] for c in range(ni)] for r in range(ni)]
    if determinant_exact(phi_w, QQ) and determinant_exact(phi_i, QQ):
        return IsoResult("Iso", 1, phi_w, phi_i)
    return IsoResult("Indeterminate", 1, phi_w, phi_i)
