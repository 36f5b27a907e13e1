from fractions import Fraction as F
from itertools import combinations
from math import inf

import numpy as np
import pytest
import sympy

from steinerlab.bundle import (
    b_matrix,
    classify,
    column_normal_form,
    elementary_transform,
    gale,
    has_multiple_point,
    is_member,
    logarithmic,
    moduli_dimension,
    new_bundle,
    nondegenerate_by_minors,
    normal_crossing,
    schwarzenberger,
    sections_dim,
    segre_intersection,
    steiner_matrix,
    unstable_scheme,
    w_invariant,
)
from steinerlab.errors import (
    DegenerateTensor,
    DomainError,
    NonMemberHyperplane,
    NotBoundaryFormat,
    NotNormalCrossing,
)
from steinerlab.groebner import affine_dimension, buchberger, ideal_product_containment, minors_ideal
from steinerlab.linalg import determinant_exact, rank
from steinerlab.poly import Ring
from steinerlab.tensor import (
    apply_group_element,
    diagonal_tensor,
    hyperdet_certificate,
    iso_test,
    lem1_pattern_tensor,
    multiplication_map,
    random_tensor,
    triangular_tensor,
)

SIX = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, 4, 9)]
SEVEN = SIX + [(1, -1, 2)]


@pytest.fixture(scope="module")
def six():
    return logarithmic(SIX)


@pytest.fixture(scope="module")
def seven():
    return logarithmic(SEVEN)


def random_bundle(dims, seed, make=random_tensor):
    while True:
        a = make(dims, seed)
        if hyperdet_certificate(a):
            return new_bundle(a)
        seed += 1000


def invertible(d, seed):
    rng = np.random.default_rng(seed)
    while True:
        g = [[F(int(x)) for x in row] for row in rng.integers(-3, 4, size=(d, d))]
        if determinant_exact(g):
            return g


def point_ideal(ring, xi):
    ys = ring.gens()
    m = len(ys)
    return [xi[i] * ys[j] - xi[j] * ys[i] for i in range(m) for j in range(i + 1, m)]


def w_ideal(s):
    ring = Ring([f"y{v}" for v in range(s.n + 1)])
    B = b_matrix(s, ring)
    gens = [g for g in minors_ideal(B, s.k, ring) if g] if len(B) >= s.k else []
    return ring, buchberger(gens, ring=ring) if gens else None


def coefficient_rows(B, nv, k):
    """Row q of B as a functional on V (x) I, coordinate v*k + i."""
    rows = []
    for row in B:
        vec = [F(0)] * (nv * k)
        for i, p in enumerate(row):
            for e, c in p.terms.items():
                vec[e.index(1) * k + i] += c
        rows.append(vec)
    return rows


# ---------------------------------------------------------------- construction


def test_new_bundle_examples():
    s = new_bundle(schwarzenberger(2, 2).tensor)
    assert (s.n, s.k) == (2, 2)
    with pytest.raises(DegenerateTensor):
        new_bundle(lem1_pattern_tensor((4, 3, 2), (1, 1), seed=0))
    with pytest.raises(NotBoundaryFormat):
        new_bundle(random_tensor((4, 2, 3), 0), n=2, k=2)


def test_schwarzenberger_banded():
    m = steiner_matrix(schwarzenberger(1, 2).tensor)
    x0, x1 = Ring(["x0", "x1"]).gens()
    zero = x0 - x0
    assert m == [[x0, x1, zero], [zero, x0, x1]]


# ---------------------------------------------------------------- nondegeneracy


def test_minors_examples():
    assert nondegenerate_by_minors(schwarzenberger(2, 2).tensor)
    assert len(minors_ideal(steiner_matrix(schwarzenberger(2, 2).tensor), 2)) == 6
    assert not nondegenerate_by_minors(lem1_pattern_tensor((4, 3, 2), (1, 0), seed=2))


@pytest.mark.parametrize("dims", [(3, 2, 2), (4, 3, 2), (4, 2, 3), (5, 3, 3)])
def test_minors_agree_with_certificate(dims):
    for seed in range(12):
        a = random_tensor(dims, seed, -1, 1) if seed % 2 else random_tensor(dims, seed)
        cert = hyperdet_certificate(a) != 0
        assert nondegenerate_by_minors(a) == cert
        assert nondegenerate_by_minors(a, prime=101) == cert


# ---------------------------------------------------------------- B-matrix


def test_b_matrix_schwarzenberger_22():
    B = b_matrix(schwarzenberger(2, 2))
    assert (len(B), len(B[0])) == (2, 2)
    det = B[0][0] * B[1][1] - B[0][1] * B[1][0]
    conic = Ring(["y0", "y1", "y2"])("y0*y2 - y1^2")
    c = det.lc() / conic.lc()
    assert det == conic * c


def test_b_matrix_12():
    B = b_matrix(schwarzenberger(1, 2))
    y0, y1 = Ring(["y0", "y1"]).gens()
    assert len(B) == 1
    c = B[0][1].lc()
    assert B[0][0] == -y1 * c and B[0][1] == y0 * c


@pytest.mark.parametrize("n,k", [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4)])
def test_b_matrix_schwarzenberger_relations(n, k):
    # B annihilates image(A); for the identity tensor that annihilator is spanned
    # by the differences e_(a,i) - e_(b,j) with a + i = b + j
    s = schwarzenberger(n, k)
    B = b_matrix(s)
    assert len(B) == n * (k - 1)
    rows = coefficient_rows(B, n + 1, k)
    diffs = []
    for a in range(n + 1):
        for i in range(k):
            for b in range(n + 1):
                j = a + i - b
                if 0 <= j < k and (b, j) != (a, i):
                    vec = [F(0)] * ((n + 1) * k)
                    vec[a * k + i] += 1
                    vec[b * k + j] -= 1
                    diffs.append(vec)
    assert rank(rows) == rank(diffs) == rank(rows + diffs) == n * (k - 1)


def test_b_matrix_kills_image(six):
    a = six.tensor
    rows = coefficient_rows(b_matrix(six), 3, 3)
    for w in range(5):
        col = [a[w, v, i] for v in range(3) for i in range(3)]
        assert all(sum(r[c] * col[c] for c in range(9)) == 0 for r in rows)


# ---------------------------------------------------------------- W(S) of Schwarzenberger bundles


@pytest.mark.parametrize("n,k", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_schwarzenberger_infinite_along_the_curve(n, k):
    s = schwarzenberger(n, k)
    sch = unstable_scheme(s)
    assert sch.verdict == "Infinite" and w_invariant(s) == inf
    T = Ring(["t"])
    t = T.var(0)
    curve = [t**j for j in range(n + 1)]
    assert all(not g.compose(curve, T) for g in sch.ideal)
    for tv in (0, 1, -1, 2):
        xi = [F(tv) ** j for j in range(n + 1)]
        assert is_member(s, xi) == (True, 1)


def test_membership_examples():
    s = schwarzenberger(2, 2)
    assert is_member(s, (1, 1, 1)) == (True, 1)
    assert is_member(s, (1, 1, 0)) == (False, 0)
    with pytest.raises(DomainError):
        is_member(s, (0, 0, 0))


def test_membership_bound_on_sample(six):
    rng = np.random.default_rng(0)
    for s in (six, schwarzenberger(2, 3), random_bundle((5, 3, 3), 1)):
        for _ in range(20):
            xi = [int(x) for x in rng.integers(-3, 4, size=3)]
            if any(xi):
                assert is_member(s, xi)[1] <= 1


# ---------------------------------------------------------------- sections


@pytest.mark.parametrize("n,k", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_sections_vanish_below_k(n, k):
    s = schwarzenberger(n, k)
    assert [sections_dim(s, t) for t in range(k)] == [0] * k
    assert sections_dim(s, k) > 0


def test_sections_schwarzenberger_23_t3_against_sympy():
    s = schwarzenberger(2, 3)
    m = multiplication_map(s.tensor, 3)
    ref = len(m[0]) - sympy.Matrix([[int(x) for x in r] for r in m]).rank()
    assert sections_dim(s, 3) == ref


def test_sections_generic_23():
    s = random_bundle((5, 3, 3), 0)
    assert [sections_dim(s, t) for t in range(5)] == [0, 0, 0, 5, 12]


# ---------------------------------------------------------------- six-line instance


def test_six_line_scheme(six):
    sch = unstable_scheme(six)
    assert sch.verdict == "Finite" and sch.length == 6
    assert sorted(p for p, _ in sch.points) == sorted(tuple(F(x) for x in h) for h in SIX)
    assert all(m == 1 for _, m in sch.points) and sch.residual == []
    assert normal_crossing([p for p, _ in sch.points])


def test_six_points_lie_on_no_conic():
    # the conic through six points is a kernel vector of the 6 x 6 monomial matrix
    rows = [[y0 * y0, y1 * y1, y2 * y2, y0 * y1, y0 * y2, y1 * y2] for y0, y1, y2 in SIX]
    assert rank(rows) == 6


def test_six_line_classification(six):
    c = classify(six)
    assert (c.kind, c.length) == ("Logarithmic", 6)
    assert has_multiple_point(six) == {"schwarzenberger": False, "points": []}


def test_rebuild_from_unstable_lines(six):
    pts = [p for p, _ in unstable_scheme(six).points]
    rebuilt = logarithmic(pts)
    assert iso_test(six.tensor, rebuilt.tensor).verdict == "Iso"
    moved = logarithmic(SIX[:5] + [(1, 4, 8)])
    assert iso_test(six.tensor, moved.tensor).verdict == "NotIso"


def test_logarithmic_order_does_not_matter(six):
    other = logarithmic(list(reversed(SIX)))
    assert iso_test(six.tensor, other.tensor).verdict == "Iso"


def test_logarithmic_errors():
    with pytest.raises(NotNormalCrossing):
        logarithmic([(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 2, 3)])
    with pytest.raises(DomainError):
        logarithmic([(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_five_lines_give_schwarzenberger():
    s = logarithmic(SIX[:5])
    assert (s.n, s.k) == (2, 2)
    assert classify(s).kind == "Schwarzenberger"


def test_seven_lines(seven):
    sch = unstable_scheme(seven)
    assert (seven.n, seven.k) == (2, 4)
    assert sch.length == 7 and len(sch.points) == 7


def test_normal_crossing_examples():
    assert normal_crossing([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert not normal_crossing([(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    assert normal_crossing([(1, 0, 0), (1, 1, 0)])
    assert not normal_crossing([(1, 0, 0), (2, 0, 0)])


# ---------------------------------------------------------------- column normal form


def test_column_normal_form_schwarzenberger():
    s = schwarzenberger(2, 2)
    a, bs = column_normal_form(s, [(1, 0, 0)])
    m = steiner_matrix(a)
    x0 = Ring(["x0", "x1", "x2"]).var(0)
    assert [m[i][0] for i in range(2)] == [x0 * b for b in bs[0]]
    assert column_normal_form(s, []) == (s.tensor, [])
    with pytest.raises(NonMemberHyperplane):
        column_normal_form(s, [(1, 1, 0)])


def test_column_normal_form_six_lines(six):
    a, bs = column_normal_form(six, SIX[:5])
    assert hyperdet_certificate(a) != 0
    m = steiner_matrix(a)
    ring = m[0][0].ring
    for j, (xi, b) in enumerate(zip(SIX, bs)):
        form = ring.linear_form(xi)
        assert [m[i][j] for i in range(3)] == [form * bi for bi in b]
    # any three of the five b vectors are independent
    assert all(rank([bs[j] for j in sub]) == 3 for sub in combinations(range(5), 3))


# ---------------------------------------------------------------- elementary transformation


def test_elementary_schwarzenberger_23():
    s2 = elementary_transform(schwarzenberger(2, 3), (1, 0, 0))
    assert (s2.n, s2.k) == (2, 2)
    assert iso_test(s2.tensor, schwarzenberger(2, 2).tensor).verdict == "Iso"


def test_elementary_errors():
    with pytest.raises(NonMemberHyperplane):
        elementary_transform(schwarzenberger(2, 3), (1, 1, 0))
    with pytest.raises(DomainError):
        elementary_transform(schwarzenberger(2, 1), (1, 0, 0))


@pytest.mark.parametrize(
    "which,xi",
    [("schw23", (1, 0, 0)), ("schw23", (1, -1, 1)), ("schw32", (1, 2, 4, 8)), ("six", (1, 2, 3)), ("seven", (0, 1, 0)), ("seven", (1, -1, 2))],
)
def test_elementary_containment(which, xi, six, seven):
    s = {"schw23": schwarzenberger(2, 3), "schw32": schwarzenberger(3, 2), "six": six, "seven": seven}[which]
    s2 = elementary_transform(s, xi)
    ring, j = w_ideal(s)
    _, j2 = w_ideal(s2)
    if j2 is not None:
        assert ideal_product_containment(j2, point_ideal(ring, [F(x) for x in xi]), j)
    assert w_invariant(s2) >= w_invariant(s) - 1


def test_elementary_multiplicities(seven):
    before = dict(unstable_scheme(seven).points)
    h = (F(1), F(2), F(3))
    after = dict(unstable_scheme(elementary_transform(seven, h)).points)
    assert h not in after
    assert all(after.get(p, 0) >= m for p, m in before.items() if p != h)


# ---------------------------------------------------------------- invariants and classification


def test_w_invariant_under_gl(six):
    for s in (six, random_bundle((5, 3, 3), 2)):
        base = w_invariant(s)
        for seed in range(2):
            gs = [invertible(d, seed * 7 + j) for j, d in enumerate(s.dims)]
            assert w_invariant(new_bundle(apply_group_element(s.tensor, gs))) == base


def test_generic_23_has_length_six():
    s = random_bundle((5, 3, 3), 0)
    sch = unstable_scheme(s)
    assert sch.verdict == "Finite" and sch.length == 6
    assert sum(m for _, m in sch.points) + sum(d * m for d, m in sch.residual) == 6


@pytest.mark.parametrize("n", [1, 2, 3])
def test_k2_bundles_are_schwarzenberger(n):
    for seed in range(3):
        assert classify(random_bundle((n + 2, n + 1, 2), seed)).kind == "Schwarzenberger"


def test_diagonal_bundle_has_two_points():
    s = new_bundle(diagonal_tensor((5, 3, 3), seed=4))
    c = classify(s)
    assert c.kind == "Plain" and c.closed_points == 2
    assert [is_member(s, e)[0] for e in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]] == [True, False, True]
    report = has_multiple_point(s)
    assert not report["schwarzenberger"] and len(report["points"]) == 2


@pytest.mark.parametrize("seed", range(4))
def test_triangular_bundles_have_length_at_least_two(seed):
    s = random_bundle((5, 3, 3), seed, triangular_tensor)
    assert w_invariant(s) >= 2


@pytest.mark.parametrize("seed", range(3))
def test_rank_drops_by_at_most_one(seed):
    s = random_bundle((5, 3, 3), seed)
    for bundle in (s, schwarzenberger(2, 3), schwarzenberger(3, 2)):
        B = b_matrix(bundle)
        ring = B[0][0].ring
        gens = [g for g in minors_ideal(B, bundle.k - 1, ring) if g]
        assert affine_dimension(buchberger(gens, ring=ring)) <= 0


def test_gale():
    g = gale(schwarzenberger(2, 2))
    assert (g.n, g.k) == (1, 3)
    assert classify(g).kind == "Schwarzenberger"
    s = random_bundle((5, 3, 3), 3)
    assert gale(gale(s)).tensor == s.tensor


# ---------------------------------------------------------------- Segre section


def test_segre_six_lines(six):
    seg = segre_intersection(six)
    assert seg.verdict == "Finite" and seg.length == 6
    assert seg.hyperplanes == sorted(tuple(F(x) for x in h) for h in SIX)


def test_segre_generic_and_schwarzenberger():
    assert segre_intersection(random_bundle((5, 3, 3), 0)).length == 6
    assert segre_intersection(schwarzenberger(2, 2)).verdict == "Infinite"


# ---------------------------------------------------------------- moduli dimension


@pytest.mark.parametrize("args,value", [((2, 3, 0), 12), ((2, 3, 6), 12), ((3, 3, 7), 21)])
def test_moduli_dimension(args, value):
    assert moduli_dimension(*args) == value


@pytest.mark.parametrize("args", [(1, 3, 0), (2, 2, 0), (2, 3, 7), (2, 3, -1)])
def test_moduli_dimension_range(args):
    with pytest.raises(DomainError):
        moduli_dimension(*args)
