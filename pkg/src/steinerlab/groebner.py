"""Buchberger's algorithm and ideal-theoretic queries built on it.

The S-pair queue is processed in order of (degree of lcm, pair index) and
pruned with Buchberger's two criteria in the Gebauer-Moeller formulation.
The returned basis is the reduced one: monic, interreduced and sorted by
decreasing leading monomial, so two generating sets of the same ideal give
equal ``GroebnerBasis.polys`` lists.
"""

from itertools import combinations, combinations_with_replacement

from .poly import Poly, Ring

__all__ = [
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "ideal_membership",
    "ideal_product_containment",
    "affine_dimension",
    "hilbert_function",
    "minors_ideal",
    "monomials_of_degree",
]


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


def _reduce_terms(f, basis, key, full=True):
    """Normal form of the term dict ``f`` w.r.t. ``basis`` (list of (lm, terms), monic)."""
    f = dict(f)
    rem = {}
    while f:
        e = max(f, key=key)
        c = f[e]
        for ge, g in basis:
            if _divides(ge, e):
                shift = tuple(x - y for x, y in zip(e, ge))
                for ee, cc in g.items():
                    t = tuple(x + y for x, y in zip(ee, shift))
                    v = f.get(t)
                    v = -c * cc if v is None else v - c * cc
                    if v:
                        f[t] = v
                    else:
                        del f[t]
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[e] = c
            del f[e]
    return rem


def _monic(terms, key):
    e = max(terms, key=key)
    inv = 1 / terms[e]
    return e, {k: v * inv for k, v in terms.items()}


class GroebnerBasis:
    """Reduced Groebner basis of an ideal.

    Attributes
    ----------
    ring : Ring
        The ambient ring; its monomial order is the order of the basis.
    generators : list of Poly
        The generating set the basis was computed from.
    polys : list of Poly
        Reduced basis, monic, sorted by decreasing leading monomial.
    """

    def __init__(self, ring, generators, polys):
        self.ring = ring
        self.generators = list(generators)
        self.polys = list(polys)
        self._pairs = [(p.lm(), p.terms) for p in self.polys]

    @property
    def order(self):
        return self.ring.order

    def leading_monomials(self):
        return [lm for lm, _ in self._pairs]

    def is_unit(self):
        return any(sum(lm) == 0 for lm, _ in self._pairs)

    def is_zero_ideal(self):
        return not self.polys

    def reduce(self, f):
        f = self.ring(f)
        if f.ring != self.ring:
            f = Poly(self.ring, f.terms)
        return Poly(self.ring, _reduce_terms(f.terms, self._pairs, self.ring.key))

    def contains(self, f):
        return not self.reduce(f)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and [p.terms for p in self.polys] == [q.terms for q in other.polys]
        )

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(p) for p in self.polys)}])"

    def standard_monomials(self, max_count=100000):
        """Monomials outside the leading-term ideal (finite case only)."""
        lms = self.leading_monomials()
        n = self.ring.nvars
        if self.is_unit():
            return []
        if affine_dimension(self) > 0:
            raise ValueError("infinitely many standard monomials")
        seen = {(0,) * n}
        frontier = [(0,) * n]
        while frontier:
            nxt = []
            for e in frontier:
                for i in range(n):
                    m = e[:i] + (e[i] + 1,) + e[i + 1 :]
                    if m in seen or any(_divides(l, m) for l in lms):
                        continue
                    seen.add(m)
                    nxt.append(m)
            if len(seen) > max_count:
                raise ValueError("too many standard monomials")
            frontier = nxt
        return sorted(seen, key=self.ring.key, reverse=True)


def _pair_key(pair, lms):
    i, j = pair
    return (sum(_lcm(lms[i], lms[j])), i, j)


def buchberger(generators, order=None, ring=None):
    """Reduced Groebner basis of the ideal generated by ``generators``.

    ``order`` ("grevlex" or "lex") overrides the ring's order.
    """
    generators = list(generators)
    if ring is None:
        if not generators:
            raise ValueError("ring required for an empty generator list")
        ring = generators[0].ring
    if any(g.ring.names != ring.names for g in generators):
        raise ValueError("generators live in different rings")
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    key = ring.key

    polys = []  # (lm, monic terms)
    for g in generators:
        if g.terms:
            polys.append(_monic(dict(g.terms), key))
    # pre-sort for input-order independence of the run
    polys.sort(
        key=lambda t: (
            key(t[0]),
            sorted((key(e), getattr(c, "v", c)) for e, c in t[1].items()),
        )
    )

    lms = []
    store = []
    active = []
    pairs = set()

    def update(h):
        nonlocal active, pairs
        lh = lms[h]
        cands = [(g, h) for g in active]
        kept = []
        for idx, (g, _) in enumerate(cands):
            lgh = _lcm(lms[g], lh)
            if _coprime(lms[g], lh):
                kept.append((g, h))
                continue
            others = [p for p in cands[idx + 1 :]] + kept
            if not any(_divides(_lcm(lms[o], lh), lgh) for o, _ in others):
                kept.append((g, h))
        new_pairs = {p for p in kept if not _coprime(lms[p[0]], lh)}
        survivors = set()
        for g1, g2 in pairs:
            l12 = _lcm(lms[g1], lms[g2])
            if (
                _divides(lh, l12)
                and _lcm(lms[g1], lh) != l12
                and _lcm(lms[g2], lh) != l12
            ):
                continue
            survivors.add((g1, g2))
        pairs = survivors | new_pairs
        active = [g for g in active if not _divides(lh, lms[g])] + [h]

    def add(lm, terms):
        lms.append(lm)
        store.append(terms)
        update(len(lms) - 1)

    for lm, terms in polys:
        add(lm, terms)

    while pairs:
        pair = min(pairs, key=lambda p: _pair_key(p, lms))
        pairs.discard(pair)
        i, j = pair
        l = _lcm(lms[i], lms[j])
        s = {}
        for idx, sign in ((i, 1), (j, -1)):
            shift = tuple(x - y for x, y in zip(l, lms[idx]))
            for e, c in store[idx].items():
                t = tuple(x + y for x, y in zip(e, shift))
                v = s.get(t)
                v = sign * c if v is None else v + sign * c
                if v:
                    s[t] = v
                else:
                    s.pop(t, None)
        basis = [(lms[g], store[g]) for g in active]
        r = _reduce_terms(s, basis, key, full=False)
        if r:
            lm, terms = _monic(r, key)
            if sum(lm) == 0:
                one = ring.one()
                return GroebnerBasis(ring, generators, [one])
            add(lm, terms)

    # minimal basis then interreduction
    chosen = []
    for g in sorted(active, key=lambda g: key(lms[g])):
        if not any(_divides(lms[c], lms[g]) for c in chosen):
            chosen.append(g)
    reduced = []
    for g in chosen:
        others = [(lms[c], store[c]) for c in chosen if c != g]
        tail = {e: c for e, c in store[g].items() if e != lms[g]}
        tail = _reduce_terms(tail, others, key, full=True)
        tail[lms[g]] = store[g][lms[g]]
        reduced.append(Poly(ring, tail))
    reduced.sort(key=lambda p: key(p.lm()), reverse=True)
    return GroebnerBasis(ring, generators, reduced)


def normal_form(f, gb):
    return gb.reduce(f)


def ideal_membership(f, gb):
    """True iff ``f`` lies in the ideal of ``gb``."""
    return gb.contains(f)


def ideal_product_containment(a, linear_forms, b):
    """True iff every product (generator of ``a``) x (form) lies in ``b``."""
    for g in a.polys:
        for l in linear_forms:
            if not b.contains(Poly(b.ring, (g * l).terms)):
                return False
    return True


def affine_dimension(gb):
    """Krull dimension of ``ring/ideal``; -1 for the unit ideal.

    Maximum size of a set of variables containing the support of no leading
    monomial.
    """
    if gb.is_unit():
        return -1
    n = gb.ring.nvars
    supports = [frozenset(i for i, x in enumerate(lm) if x) for lm in gb.leading_monomials()]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = frozenset(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def monomials_of_degree(nvars, d):
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def hilbert_function(gb, d):
    """Number of degree-``d`` monomials outside the leading-term ideal."""
    lms = gb.leading_monomials()
    return sum(
        1 for m in monomials_of_degree(gb.ring.nvars, d) if not any(_divides(l, m) for l in lms)
    )


def _det_poly(m, ring):
    n = len(m)
    if n == 1:
        return m[0][0]
    memo = {}

    def rec(rows_left, col):
        # determinant of the submatrix on rows_left x columns col..n-1
        if col == n - 1:
            return m[rows_left[0]][col]
        key = rows_left
        if key in memo:
            return memo[key]
        total = ring.zero()
        for idx, r in enumerate(rows_left):
            entry = m[r][col]
            if not entry:
                continue
            sub = rec(rows_left[:idx] + rows_left[idx + 1 :], col + 1)
            if not sub:
                continue
            term = entry * sub
            total = total - term if idx % 2 else total + term
        memo[key] = total
        return total

    return rec(tuple(range(n)), 0)


def minors_ideal(m, size, ring=None):
    """All ``size`` x ``size`` minors of a matrix of polynomials.

    Row subsets vary slowest, both in lexicographic order; each minor is
    expanded by cofactors.
    """
    nr = len(m)
    nc = len(m[0]) if nr else 0
    if size > min(nr, nc) or size < 1:
        raise ValueError(f"minor size {size} too large for a {nr}x{nc} matrix")
    if ring is None:
        ring = next(x.ring for r in m for x in r)
    out = []
    for rows in combinations(range(nr), size):
        for cols in combinations(range(nc), size):
            sub = [[m[r][c] for c in cols] for r in rows]
            out.append(_det_poly(sub, ring))
    return out
