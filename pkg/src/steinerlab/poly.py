"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a dict ``{exponent tuple: nonzero coefficient}`` attached to a
:class:`Ring`, which fixes the variable names, the coefficient field and the
monomial order ("grevlex" by default, "lex" for elimination).

String grammar (no implicit multiplication, no parentheses)::

    poly   := ["+"|"-"] term (("+"|"-") term)*
    term   := coeff ["*" mono] | mono
    mono   := power ("*" power)*
    power  := NAME ["^" INT]
    coeff  := INT ["/" INT]

``"2x"``, ``"x y"`` and ``"2 x"`` are rejected.
"""

from fractions import Fraction
import re

from .errors import ParseError
from .scalars import QQ, format_scalar

__all__ = ["Ring", "Poly", "grevlex_key", "lex_key"]


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e):
    return e


_ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


class Ring:
    """Polynomial ring ``field[names]`` with a monomial order."""

    def __init__(self, names, order="grevlex", field=QQ):
        if isinstance(names, int):
            names = [f"x{i}" for i in range(names)]
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("repeated variable names")
        if order not in _ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.order = order
        self.key = _ORDERS[order]
        self.field = field
        self.nvars = len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.order == other.order
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.order, self.field))

    def __repr__(self):
        return f"Ring({list(self.names)}, order={self.order!r}, field={self.field!r})"

    def with_order(self, order):
        return Ring(self.names, order, self.field)

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def var(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one()})

    def monomial(self, exps, coeff=1):
        c = self.field(coeff)
        return Poly(self, {tuple(exps): c} if c else {})

    def linear_form(self, coeffs):
        terms = {}
        for i, c in enumerate(coeffs):
            c = self.field(c)
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Poly(self, terms)

    def __call__(self, obj):
        if isinstance(obj, Poly):
            if obj.ring == self:
                return obj
            if obj.ring.names != self.names:
                raise ValueError("ring variables differ")
            return Poly(self, {e: self.field(c) for e, c in obj.terms.items()})
        if isinstance(obj, str):
            return self.parse(obj)
        return self.const(obj)

    _TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|/|\+|-))")

    def parse(self, text):
        """Parse a polynomial string (see module docstring for the grammar)."""
        tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character at {pos} in {text!r}")
            kind = "int" if m.group(1) else "name" if m.group(2) else "op"
            tokens.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
            pos = m.end()
        for (k1, _, _), (k2, v2, p2) in zip(tokens, tokens[1:]):
            if k1 in ("int", "name") and k2 in ("int", "name"):
                raise ParseError(f"implicit multiplication at {p2} in {text!r}")
        index = {n: i for i, n in enumerate(self.names)}
        toks = tokens + [("end", None, len(text))]
        i = 0

        def peek():
            return toks[i]

        def take(kind=None, value=None):
            nonlocal i
            t = toks[i]
            if (kind and t[0] != kind) or (value and t[1] != value):
                raise ParseError(f"expected {value or kind} at {t[2]} in {text!r}")
            i += 1
            return t

        def power(exps):
            _, name, p = take("name")
            if name not in index:
                raise ParseError(f"unknown variable {name!r} at {p} in {text!r}")
            d = 1
            if peek()[1] == "^":
                take()
                d = int(take("int")[1])
            exps[index[name]] += d

        def term():
            coeff = Fraction(1)
            exps = [0] * self.nvars
            if peek()[0] == "int":
                num = int(take()[1])
                den = 1
                if peek()[1] == "/":
                    take()
                    den = int(take("int")[1])
                    if den == 0:
                        raise ParseError(f"zero denominator in {text!r}")
                coeff = Fraction(num, den)
                if peek()[1] != "*":
                    return coeff, exps
                take()
            power(exps)
            while peek()[1] == "*":
                take()
                power(exps)
            return coeff, exps

        if not tokens:
            raise ParseError("empty polynomial string")
        acc = {}
        sign = 1
        if peek()[1] in ("+", "-"):
            sign = -1 if take()[1] == "-" else 1
        while True:
            c, e = term()
            e = tuple(e)
            acc[e] = acc.get(e, 0) + sign * c
            t = peek()
            if t[0] == "end":
                break
            if t[1] not in ("+", "-"):
                raise ParseError(f"unexpected {t[1]!r} at {t[2]} in {text!r}")
            sign = -1 if take()[1] == "-" else 1
        terms = {}
        for e, c in acc.items():
            c = self.field(c)
            if c:
                terms[e] = c
        return Poly(self, terms)


class Poly:
    """Immutable polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # ---- structure
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        """Terms in strictly descending monomial order."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lm(self):
        return max(self.terms, key=self.ring.key)

    def lc(self):
        return self.terms[self.lm()]

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def monic(self):
        if not self.terms:
            return self
        inv = 1 / self.lc()
        return Poly(self.ring, {e: c * inv for e, c in self.terms.items()})

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return sorted(used)

    # ---- arithmetic
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero()
            return Poly(self.ring, {e: x * c for e, x in self.terms.items()})
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e)
                terms[e] = c1 * c2 if s is None else s + c1 * c2
        return Poly(self.ring, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_monomial(self, exps, coeff=1):
        return Poly(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): c * coeff for e, c in self.terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring.names == other.ring.names and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # ---- evaluation and substitution
    def evaluate(self, point):
        """Value at ``point`` (a sequence of field elements)."""
        total = self.ring.field.zero()
        for e, c in self.terms.items():
            v = c
            for x, d in zip(point, e):
                if d:
                    v = v * x**d
            total = total + v
        return total

    def compose(self, images, ring=None):
        """Substitute ``images[i]`` (polys in ``ring``) for variable ``i``."""
        ring = ring or images[0].ring
        result = ring.zero()
        cache = {}
        for e, c in self.terms.items():
            term = ring.const(c)
            for i, d in enumerate(e):
                if d:
                    key = (i, d)
                    if key not in cache:
                        cache[key] = images[i] ** d
                    term = term * cache[key]
            result = result + term
        return result

    def dehomogenize(self, var, ring):
        """Set variable ``var`` to 1 and drop it; ``ring`` has one fewer variable."""
        terms = {}
        for e, c in self.terms.items():
            e2 = e[:var] + e[var + 1 :]
            s = terms.get(e2)
            terms[e2] = c if s is None else s + c
        return Poly(ring, {e: c for e, c in terms.items() if c})

    # ---- printing
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                n if d == 1 else f"{n}^{d}" for n, d in zip(self.ring.names, e) if d
            )
            neg = _is_negative(c)
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{format_scalar(a)}*{mono}"
            else:
                body = format_scalar(a)
            if idx == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def _is_negative(c):
    return isinstance(c, Fraction) and c < 0
