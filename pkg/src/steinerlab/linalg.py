"""Dense exact linear algebra over QQ or GF(p).

Matrices are lists of rows (any nested sequence or 2-D numpy object array is
accepted on input). Pivoting is deterministic: within each column the first
row (from the top of the unreduced part) holding a nonzero entry is used, so
results are reproducible bit for bit.
"""

from fractions import Fraction
from math import lcm

from .errors import FieldMismatch
from .scalars import QQ, Mod, field_of

__all__ = [
    "as_rows",
    "identity",
    "transpose",
    "matmul",
    "matvec",
    "rref",
    "rank",
    "rank_and_right_kernel",
    "determinant_exact",
    "inverse",
    "subspace_intersect",
    "extend_to_basis",
    "charpoly",
    "solve_particular",
]


def as_rows(m, field=None):
    """Copy ``m`` into a list of lists, normalising ints to the field."""
    rows = [list(r) for r in m]
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
    if field is None:
        field = field_of(x for r in rows for x in r)
    return [[field(x) for x in r] for r in rows]


def _shape(rows, ncols=None):
    if not rows:
        return 0, (ncols or 0)
    return len(rows), len(rows[0])


def identity(n, field=QQ):
    one, zero = field.one(), field.zero()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(c) for c in zip(*m)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(r, c)), 0 * r[0] if r else 0) for c in bt] for r in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(r, v)), 0 * v[0] if v else 0) for r in a]


def rref(m, field=None, ncols=None):
    """Reduced row echelon form. Returns ``(R, pivot_columns)``."""
    rows = as_rows(m, field)
    nr, nc = _shape(rows, ncols)
    r = 0
    pivots = []
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(m, field=None):
    return len(rref(m, field)[1])


def rank_and_right_kernel(m, field=None, ncols=None):
    """Rank and a basis of ``{v : m v = 0}``.

    The basis is the reduced echelon kernel: one vector per free column, in
    increasing column order, with a 1 in that free column.
    """
    rows = as_rows(m, field)
    if field is None:
        field = field_of(x for r in rows for x in r)
    nc = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    R, pivots = rref(rows, field, nc)
    pset = set(pivots)
    zero, one = field.zero(), field.one()
    basis = []
    for f in range(nc):
        if f in pset:
            continue
        v = [zero] * nc
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f]
        basis.append(v)
    return len(pivots), basis


def _bareiss_int(rows):
    n = len(rows)
    a = [r[:] for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai = a[i]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def determinant_exact(m, field=None):
    """Exact determinant.

    Over QQ the rows are scaled to integers and Bareiss fraction-free
    elimination is used; over GF(p) plain Gaussian elimination.
    """
    rows = as_rows(m, field)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError(f"determinant of a non-square {n}x{len(rows[0])} matrix")
    if field is None:
        field = field_of(x for r in rows for x in r)
    if n == 0:
        return field.one()
    if field == QQ:
        scale = 1
        ints = []
        for r in rows:
            d = lcm(*(x.denominator for x in r))
            scale *= d
            ints.append([int(x * d) for x in r])
        return Fraction(_bareiss_int(ints), scale)
    det = field.one()
    a = rows
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return field.zero()
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def inverse(m, field=None):
    rows = as_rows(m, field)
    n = len(rows)
    if field is None:
        field = field_of(x for r in rows for x in r)
    aug = [r + e for r, e in zip(rows, identity(n, field))]
    R, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R]


def solve_particular(m, b, field=None):
    """One solution of ``m x = b`` (free variables zero), or None."""
    rows = as_rows(m, field)
    if field is None:
        field = field_of([x for r in rows for x in r] + list(b))
    nc = len(rows[0]) if rows else 0
    aug = [r + [field(bi)] for r, bi in zip(rows, b)]
    R, pivots = rref(aug, field, nc + 1)
    if nc in pivots:
        return None
    x = [field.zero()] * nc
    for i, pc in enumerate(pivots):
        x[pc] = R[i][nc]
    return x


def _column_matrix(vectors, dim):
    return [[v[i] for v in vectors] for i in range(dim)]


def subspace_intersect(a_basis, b_basis, dim=None, field=None):
    """Basis of ``span(a) ∩ span(b)`` via the kernel of ``[A | -B]``."""
    a_basis = [list(v) for v in a_basis]
    b_basis = [list(v) for v in b_basis]
    dims = {len(v) for v in a_basis + b_basis}
    if dim is not None:
        dims.add(dim)
    if len(dims) > 1:
        raise ValueError(f"ambient dimension mismatch: {sorted(dims)}")
    if not a_basis or not b_basis:
        return []
    dim = dims.pop()
    if field is None:
        field = field_of(x for v in a_basis + b_basis for x in v)
    cols = a_basis + [[-x for x in v] for v in b_basis]
    _, ker = rank_and_right_kernel(_column_matrix(cols, dim), field, len(cols))
    na = len(a_basis)
    zero = field.zero()
    cands = []
    for k in ker:
        w = [zero] * dim
        for coef, v in zip(k[:na], a_basis):
            if coef:
                w = [x + coef * y for x, y in zip(w, v)]
        cands.append(w)
    if not cands:
        return []
    # keep an independent subset (inputs need not be independent)
    _, piv = rref(_column_matrix(cands, dim), field, len(cands))
    return [field_normalize(cands[i]) for i in piv]


def field_normalize(v):
    """Scale ``v`` so its first nonzero coordinate is 1."""
    lead = next((x for x in v if x), None)
    if lead is None:
        return list(v)
    inv = 1 / lead
    return [x * inv for x in v]


def extend_to_basis(vectors, ambient_dim, field=None):
    """Invertible matrix whose first columns are ``vectors``.

    The remaining columns are standard basis vectors taken greedily in
    increasing index order whenever they keep the set independent.
    """
    vectors = [list(v) for v in vectors]
    if field is None:
        field = field_of(x for v in vectors for x in v) if vectors else QQ
    vectors = [[field(x) for x in v] for v in vectors]
    if any(len(v) != ambient_dim for v in vectors):
        raise ValueError("vector length differs from ambient dimension")
    if vectors and rank(_column_matrix(vectors, ambient_dim), field) < len(vectors):
        raise ValueError("input vectors are linearly dependent")
    cols = list(vectors)
    current = len(cols)
    for i in range(ambient_dim):
        if current == ambient_dim:
            break
        e = [field.zero()] * ambient_dim
        e[i] = field.one()
        trial = cols + [e]
        if rank(_column_matrix(trial, ambient_dim), field) == current + 1:
            cols = trial
            current += 1
    return _column_matrix(cols, ambient_dim)


def charpoly(m, field=None):
    """Characteristic polynomial ``det(t I - m)`` as coefficients, lowest first.

    Reduction to upper Hessenberg form followed by the usual recurrence;
    O(n^3) field operations and exact in any field.
    """
    a = as_rows(m, field)
    n = len(a)
    if field is None:
        field = field_of(x for r in a for x in r)
    zero, one = field.zero(), field.one()
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if a[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            a[j + 1], a[piv] = a[piv], a[j + 1]
            for r in a:
                r[j + 1], r[piv] = r[piv], r[j + 1]
        inv = 1 / a[j + 1][j]
        for i in range(j + 2, n):
            f = a[i][j] * inv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[j + 1])]
                for r in a:
                    r[j + 1] = r[j + 1] + f * r[i]
    # p[k] = charpoly of leading k x k block, coefficient lists lowest first
    polys = [[one]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        # (t - a[k-1][k-1]) * p_{k-1}
        cur = [zero] + prev
        cur = [c - a[k - 1][k - 1] * (prev[i] if i < len(prev) else zero) for i, c in enumerate(cur)]
        prod = one
        for i in range(1, k):
            prod = prod * a[k - i][k - i - 1]
            h = a[k - i - 1][k - 1] * prod
            if h:
                q = polys[k - i - 1]
                for d, c in enumerate(q):
                    cur[d] = cur[d] - h * c
        polys.append(cur)
    return polys[n]


def check_same_field(*matrices):
    fields = {field_of(x for r in m for x in r) for m in matrices if m and m[0]}
    if len(fields) > 1:
        raise FieldMismatch(f"mixed fields: {fields}")
    return fields.pop() if fields else QQ


def to_mod(m, p):
    return [[Mod(x.numerator, p) * pow(x.denominator, -1, p) if isinstance(x, Fraction) else Mod(x, p) for x in r] for r in m]
