"""Exact scalars: rationals (``fractions.Fraction``) and residues modulo a prime.

Rationals are plain :class:`fractions.Fraction` objects. Residues are
:class:`Mod` instances tied to an odd prime below ``2**62``. Python ``int``
values are accepted everywhere since they embed in both fields; combining a
``Fraction`` with a ``Mod`` raises :class:`~steinerlab.errors.FieldMismatch`.
"""

from fractions import Fraction
import re

from .errors import FieldMismatch, ParseError

__all__ = ["QQ", "GF", "Mod", "field_of", "parse_scalar", "format_scalar", "is_zero"]

DEFAULT_PRIME = 2305843009213693951  # 2**61 - 1


def _is_probable_prime(n):
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24 with these bases
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Mod:
    """Residue class modulo an odd prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other % self.p
        raise FieldMismatch(f"cannot combine GF({self.p}) with {type(other).__name__}")

    def __add__(self, other):
        return Mod(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Mod(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Mod(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return Mod(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 mod p")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o == 0:
            raise ZeroDivisionError("division by 0 mod p")
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Mod(self._coerce(other), self.p) / self

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class _Rationals:
    """The field of rational numbers."""

    name = "QQ"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Mod):
            raise FieldMismatch("cannot lift a residue to QQ")
        return Fraction(x)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, _Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = _Rationals()


class GF:
    """Prime field ``Z/pZ`` with ``p`` an odd prime below ``2**62``."""

    def __init__(self, p=DEFAULT_PRIME):
        if not (2 < p < 2**62) or not _is_probable_prime(p):
            raise ValueError(f"{p} is not an odd prime below 2**62")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x):
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) vs GF({self.p})")
            return x
        if isinstance(x, Fraction):
            return Mod(x.numerator, self.p) / Mod(x.denominator, self.p)
        return Mod(int(x), self.p)

    def zero(self):
        return Mod(0, self.p)

    def one(self):
        return Mod(1, self.p)

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


def field_of(values):
    """Return the field shared by ``values`` (ints count as rationals).

    Raises FieldMismatch if residues of different primes, or residues and
    rationals, are mixed.
    """
    field = None
    rational = False
    for x in values:
        if isinstance(x, Mod):
            if field is None:
                field = GF(x.p)
            elif field.p != x.p:
                raise FieldMismatch(f"GF({field.p}) vs GF({x.p})")
        elif isinstance(x, (int, Fraction)):
            rational = rational or not isinstance(x, int)
        else:
            raise TypeError(f"not an exact scalar: {x!r}")
    if field is not None:
        if rational:
            raise FieldMismatch("rationals mixed with residues")
        return field
    return QQ


def is_zero(x):
    return not x


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_scalar(text):
    """Parse ``"3"``, ``"-4/7"`` (or an int) into an exact Fraction."""
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"not a rational string: {text!r}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError(f"not a rational string: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_scalar(x):
    """Canonical string form: ``"3"``, ``"-4/7"``; residues print their value."""
    if isinstance(x, Mod):
        return str(x.v)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
