from fractions import Fraction as F
from itertools import product
from math import comb, factorial

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from steinerlab.bundle import logarithmic, schwarzenberger, steiner_matrix
from steinerlab.errors import (
    DegenerateTensor,
    DomainError,
    EnumerationTooLarge,
    NotBoundaryFormat,
)
from steinerlab.linalg import determinant_exact, identity, inverse, matmul
from steinerlab.poly import Ring
from steinerlab.tensor import (
    BoundaryTensor,
    apply_group_element,
    canonical_weights,
    certificate_degree,
    diagonal_tensor,
    flatten_MA,
    gale_permute,
    hm_min_weight,
    hyperdet_certificate,
    is_diagonal_given_basis,
    is_identity_given_basis,
    is_triangular_given_basis,
    iso_test,
    lem1_pattern_tensor,
    make_identity,
    multiplication_map,
    random_tensor,
    stabilizer_algebra,
    tom_thumb_check,
    triangular_tensor,
    validate_format,
)

SIX_LINES = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, -1, 2)]


def unimodular(d, seed):
    """Seeded integer matrix of determinant 1 (product of elementary matrices)."""
    rng = np.random.default_rng(seed)
    g = identity(d)
    for _ in range(3 * d):
        i, j = rng.choice(d, 2, replace=False)
        e = identity(d)
        e[i][j] = F(int(rng.integers(-2, 3)))
        g = matmul(e, g)
    return g


def invertible(d, seed):
    rng = np.random.default_rng(seed)
    while True:
        g = [[F(int(x)) for x in row] for row in rng.integers(-3, 4, size=(d, d))]
        if determinant_exact(g):
            return g


def proportional(a, b):
    fa = [x for r in a for x in r]
    fb = [x for r in b for x in r]
    j = next(i for i, x in enumerate(fb) if x)
    c = fa[j] / fb[j]
    return c != 0 and all(x == c * y for x, y in zip(fa, fb))


# ---------------------------------------------------------------- formats


@pytest.mark.parametrize("dims", [(3, 2, 2), (5, 3, 3), (4, 2, 3), (4, 2, 2, 2)])
def test_valid_formats(dims):
    assert validate_format(dims).dims == dims


@pytest.mark.parametrize("dims", [(2, 2, 2), (4, 2, 2), (3, 2), (0, 1, 1)])
def test_invalid_formats(dims):
    with pytest.raises(NotBoundaryFormat):
        validate_format(dims)


def test_invalid_format_reports_the_sum():
    with pytest.raises(NotBoundaryFormat, match="1 \\+ 1 = 2"):
        validate_format((2, 2, 2))


def test_tensor_shape_mismatch():
    with pytest.raises(NotBoundaryFormat):
        BoundaryTensor(np.zeros((3, 2, 2), dtype=int), dims=(5, 3, 3))


# ---------------------------------------------------------------- flattening


def test_flatten_identity_banded():
    m = flatten_MA(make_identity((3, 2, 2)))
    x0, x1 = Ring(["x0", "x1"]).gens()
    zero = x0 - x0
    assert m == [[x0, x1, zero], [zero, x0, x1]]


def test_flatten_zero_tensor():
    a = BoundaryTensor(np.zeros((4, 3, 2), dtype=int))
    assert all(not e for row in flatten_MA(a) for e in row)


def test_flatten_matches_defining_sum():
    a = random_tensor((4, 3, 2), seed=3)
    m = flatten_MA(a)
    assert (len(m), len(m[0])) == (3, 4)
    ring = m[0][0].ring
    xs = ring.gens()
    for i1, i0 in product(range(3), range(4)):
        expect = ring.zero()
        for i2 in range(2):
            expect = expect + a[i0, i1, i2] * xs[i2]
        assert m[i1][i0] == expect
    # the Steiner-side matrix of the same tensor is k x (n+k)
    s = steiner_matrix(a)
    assert (len(s), len(s[0])) == (2, 4)


def test_flatten_p3_is_multilinear():
    a = make_identity((4, 2, 2, 2))
    m = flatten_MA(a)
    assert (len(m), len(m[0])) == (2, 4)
    assert all(p.total_degree() == 2 for row in m for p in row if p)


# ---------------------------------------------------------------- patterns


def test_identity_predicates():
    a = make_identity((5, 3, 3))
    assert is_triangular_given_basis(a) and is_diagonal_given_basis(a) and is_identity_given_basis(a)


def test_diagonal_predicates():
    a = diagonal_tensor((5, 3, 3), seed=0, low=2, high=5)
    assert is_triangular_given_basis(a) and is_diagonal_given_basis(a)
    assert not is_identity_given_basis(a)


def test_off_diagonal_cell_breaks_diagonal_only():
    arr = make_identity((5, 3, 3)).entries.copy()
    arr[0, 1, 0] = F(7)
    a = BoundaryTensor(arr)
    assert is_triangular_given_basis(a)
    assert not is_diagonal_given_basis(a)
    arr[3, 1, 0] = F(1)
    assert not is_triangular_given_basis(BoundaryTensor(arr))


def test_identity_support():
    a = make_identity((3, 2, 2))
    assert a.support() == [(0, 0, 0), (1, 0, 1), (1, 1, 0), (2, 1, 1)]
    assert len(make_identity((5, 3, 3)).support()) == 9


@pytest.mark.parametrize("dims", [(3, 2, 2), (5, 3, 3), (4, 2, 3), (4, 2, 2, 2), (6, 2, 3, 3)])
def test_identity_support_counts_box_points(dims):
    assert len(make_identity(dims).support()) == int(np.prod(dims[1:]))


# ---------------------------------------------------------------- weights


def test_canonical_weights_example():
    w = canonical_weights((4, 2, 3), 1)
    assert w.weights == ((3, 1, -1, -3), (-1, 1), (-2, 0, 2))


def test_half_integral_weights():
    w = canonical_weights((5, 3, 3), F(1, 2))
    assert w.weights == ((2, 1, 0, -1, -2), (-1, 0, 1), (-1, 0, 1))
    with pytest.raises(DomainError):
        canonical_weights((4, 2, 3), F(1, 2))
    with pytest.raises(DomainError):
        canonical_weights((4, 2, 3), F(1, 3))


@pytest.mark.parametrize("dims", [(3, 2, 2), (5, 3, 3), (4, 2, 3), (6, 3, 2, 3)])
def test_weights_monotone_and_balanced(dims):
    w = canonical_weights(dims, 2).weights
    assert all(sum(x) == 0 for x in w)
    assert list(w[0]) == sorted(w[0], reverse=True)
    assert all(list(x) == sorted(x) for x in w[1:])


def test_hm_examples():
    a = make_identity((5, 3, 3))
    assert hm_min_weight(a, canonical_weights((5, 3, 3))) == (0, 0)
    zeros = [[0] * d for d in a.dims]
    assert hm_min_weight(random_tensor((5, 3, 3), 1), zeros) == (0, 0)
    with pytest.raises(DomainError):
        hm_min_weight(a, [[0] * 5, [0] * 3])


formats = st.sampled_from([(3, 2, 2), (4, 2, 3), (5, 3, 3), (4, 3, 2), (4, 2, 2, 2), (5, 2, 3, 2)])


@settings(max_examples=40, deadline=None)
@given(formats, st.integers(0, 10**6))
def test_triangular_pattern_has_nonnegative_weight(dims, seed):
    a = triangular_tensor(dims, seed)
    lo, _ = hm_min_weight(a, canonical_weights(dims))
    assert lo is None or lo >= 0


# ---------------------------------------------------------------- Tom Thumb


def test_tom_thumb_examples():
    rep = tom_thumb_check((3, 2, 2))
    assert rep.paths == 2 and rep.totals == [(3, 3), (3, 3)]
    rep = tom_thumb_check((4, 2, 3))
    assert rep.paths == 3 and rep.totals == [(6, 6), (4, 4, 4)]
    assert tom_thumb_check((3, 3, 1)).paths == 1


def compositions(total, m):
    if m == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, m - 1):
            yield (first,) + rest


def boundary_formats(max_k0):
    out = []
    for p in range(2, max_k0 + 1):
        for k0 in range(max_k0 + 1):
            for ks in compositions(k0, p):
                out.append((k0 + 1,) + tuple(k + 1 for k in ks))
    return out


def test_tom_thumb_small_formats_exhaustive():
    for dims in boundary_formats(4):
        rep = tom_thumb_check(dims)
        ks = [d - 1 for d in dims[1:]]
        assert rep.paths == factorial(sum(ks)) // int(np.prod([factorial(k) for k in ks]))
        # every path has k0 + 1 points, split evenly over the slices of each direction
        for k, row in zip(ks, rep.totals):
            assert row[0] * (k + 1) == rep.paths * (sum(ks) + 1)


def test_tom_thumb_guard():
    with pytest.raises(EnumerationTooLarge):
        tom_thumb_check((13, 7, 7), max_paths=100)


# ---------------------------------------------------------------- lem1 pattern


def test_lem1_full_box():
    a = lem1_pattern_tensor((5, 3, 3), (2, 2), seed=1)
    assert not a.entries[4].any()
    assert hyperdet_certificate(a) == 0


def test_lem1_origin():
    a = lem1_pattern_tensor((5, 3, 3), (0, 0), seed=1)
    assert all(a[w, 0, 0] == 0 for w in range(5))
    assert hyperdet_certificate(a) == 0


def test_lem1_rejects_out_of_range():
    with pytest.raises(DomainError):
        lem1_pattern_tensor((5, 3, 3), (3, 0))


@pytest.mark.parametrize("dims", [(3, 2, 2), (4, 3, 2), (4, 2, 3), (5, 3, 3)])
@pytest.mark.parametrize("seed", range(6))
def test_lem1_certificate_vanishes(dims, seed):
    rng = np.random.default_rng(seed)
    beta = tuple(int(rng.integers(0, d)) for d in dims[1:])
    assert hyperdet_certificate(lem1_pattern_tensor(dims, beta, seed)) == 0


# ---------------------------------------------------------------- multiplication map


@pytest.mark.parametrize("n,k", [(1, 2), (2, 2), (1, 3), (2, 3), (3, 2)])
def test_multiplication_map_square_at_k_minus_1(n, k):
    m = multiplication_map(make_identity((n + k, n + 1, k)), k - 1)
    assert len(m) == len(m[0]) == k * comb(n + k, n) == certificate_degree(n, k)


def test_identity_12_certificate_against_sympy():
    a = make_identity((3, 2, 2))
    m = multiplication_map(a, 1)
    assert len(m) == 6
    ref = sympy.Matrix([[int(x) for x in r] for r in m]).det()
    assert hyperdet_certificate(a) == ref and abs(ref) == 1


def test_multiplication_map_t0_is_flattening():
    a = random_tensor((4, 3, 2), seed=5)
    m = multiplication_map(a, 0)
    # rows (i, x_v) with x0 > x1 > x2, columns w
    for i, v, w in product(range(2), range(3), range(4)):
        assert m[i * 3 + v][w] == a[w, v, i]


def test_multiplication_map_rejects_other_p():
    with pytest.raises(DomainError):
        multiplication_map(make_identity((4, 2, 2, 2)), 0)


@pytest.mark.parametrize("dims,exp", [((3, 2, 2), 6), ((4, 3, 2), 12), ((4, 2, 3), 12)])
def test_degree_law(dims, exp):
    a = random_tensor(dims, seed=11)
    assert hyperdet_certificate(a.scale(2)) == 2**exp * hyperdet_certificate(a)


def test_certificate_random_sympy_oracle():
    a = random_tensor((4, 3, 2), seed=2)
    m = multiplication_map(a, 1)
    ref = sympy.Matrix([[int(x) for x in r] for r in m]).det()
    assert hyperdet_certificate(a) == ref != 0


# ---------------------------------------------------------------- group action


def test_group_identity_and_permutation():
    a = random_tensor((4, 3, 2), seed=7)
    assert apply_group_element(a, [identity(4), identity(3), identity(2)]) == a
    perm = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    b = apply_group_element(a, [identity(4), perm, identity(2)])
    for w, v, i in np.ndindex(4, 3, 2):
        assert b[w, v, i] == a[w, (v + 1) % 3, i]


def test_group_rejects_singular():
    a = make_identity((3, 2, 2))
    with pytest.raises(DomainError):
        apply_group_element(a, [identity(3), [[1, 1], [1, 1]], identity(2)])


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(3, 2, 2), (4, 3, 2), (4, 2, 3)]), st.integers(0, 10**6))
def test_certificate_invariant_under_sl(dims, seed):
    a = random_tensor(dims, seed)
    gs = [unimodular(d, seed + j) for j, d in enumerate(dims)]
    assert hyperdet_certificate(apply_group_element(a, gs)) == hyperdet_certificate(a)


def test_certificate_scales_with_w_determinant():
    # g_W acts on the columns of the square map; each W-block has C(n+k-1, n) columns
    a = random_tensor((4, 3, 2), seed=1)
    g = invertible(4, 3)
    b = apply_group_element(a, [g, identity(3), identity(2)])
    assert hyperdet_certificate(b) == hyperdet_certificate(a) * determinant_exact(g) ** comb(3, 2)


# ---------------------------------------------------------------- Gale


def test_gale_bookkeeping():
    a = random_tensor((4, 3, 2), seed=0)
    b = gale_permute(a)
    assert b.dims == (4, 2, 3)
    assert gale_permute(b) == a
    assert gale_permute(make_identity((5, 3, 3))).dims == (5, 3, 3)


@pytest.mark.parametrize("dims", [(3, 2, 2), (4, 3, 2), (4, 2, 3), (5, 3, 3)])
def test_gale_preserves_vanishing(dims):
    for seed in range(25):
        a = random_tensor(dims, seed, -1, 1)
        assert bool(hyperdet_certificate(a)) == bool(hyperdet_certificate(gale_permute(a)))


# ---------------------------------------------------------------- stabilizer


@pytest.mark.parametrize("dims", [(3, 2, 2), (4, 3, 2), (5, 3, 3)])
def test_identity_stabilizer_is_sl2(dims):
    rep = stabilizer_algebra(make_identity(dims))
    assert (rep.dimension, rep.kind) == (3, "SL2")


def test_diagonal_stabilizer_is_multiplicative():
    rep = stabilizer_algebra(diagonal_tensor((5, 3, 3), seed=4))
    assert (rep.dimension, rep.kind) == (1, "Multiplicative")
    eig = [e for e, _ in rep.y_eigenvalues]
    assert len(eig) == 3 and eig[1] == 0 and eig[0] == -eig[2] != 0


@pytest.mark.parametrize("seed", range(5))
def test_generic_stabilizer_trivial(seed):
    assert stabilizer_algebra(random_tensor((5, 3, 3), seed)).dimension == 0


def test_stabilizer_rejects_degenerate():
    with pytest.raises(DegenerateTensor):
        stabilizer_algebra(lem1_pattern_tensor((5, 3, 3), (1, 1), seed=0))


@pytest.mark.parametrize("seed", range(3))
def test_stabilizer_dimension_is_orbit_invariant(seed):
    base = [make_identity((5, 3, 3)), diagonal_tensor((5, 3, 3), seed), random_tensor((5, 3, 3), seed)]
    for a in base:
        gs = [invertible(d, seed + 10 * j) for j, d in enumerate(a.dims)]
        b = apply_group_element(a, gs)
        assert stabilizer_algebra(b).dimension == stabilizer_algebra(a).dimension


def test_stabilizer_generator_solves_the_system():
    a = diagonal_tensor((5, 3, 3), seed=2)
    X, Y, Z, lam = stabilizer_algebra(a).generators[0]
    for w, v, i in np.ndindex(*a.dims):
        lhs = (
            sum(X[w][u] * a[u, v, i] for u in range(5))
            + sum(Y[v][u] * a[w, u, i] for u in range(3))
            + sum(Z[i][u] * a[w, v, u] for u in range(3))
        )
        assert lhs == lam * a[w, v, i]


# ---------------------------------------------------------------- isomorphism


def test_iso_self():
    a = random_tensor((5, 3, 3), seed=1)
    res = iso_test(a, a)
    assert res.verdict == "Iso" and res.nullity == 1
    assert proportional(res.phi_w, identity(5)) and proportional(res.phi_i, identity(3))


@pytest.mark.parametrize("seed", range(3))
def test_iso_recovers_group_element(seed):
    a = random_tensor((5, 3, 3), seed)
    X, Y = invertible(5, seed + 100), invertible(3, seed + 200)
    b = apply_group_element(a, [X, identity(3), Y])
    res = iso_test(a, b)
    assert res.verdict == "Iso"
    Xt = [list(r) for r in zip(*X)]
    assert proportional(res.phi_w, Xt)
    assert proportional(res.phi_i, inverse(Y))
    # the certificate intertwines every slice
    for v in range(3):
        av = [[a[w, v, i] for w in range(5)] for i in range(3)]
        bv = [[b[w, v, i] for w in range(5)] for i in range(3)]
        assert matmul(av, res.phi_w) == matmul(res.phi_i, bv)


def test_iso_schwarzenberger_vs_logarithmic():
    res = iso_test(schwarzenberger(2, 3).tensor, logarithmic(SIX_LINES).tensor)
    assert res.verdict == "NotIso" and res.nullity == 0


def test_iso_format_mismatch():
    with pytest.raises(DomainError):
        iso_test(make_identity((5, 3, 3)), make_identity((4, 3, 2)))
