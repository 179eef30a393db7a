"""Exact scalar fields: the rationals and prime fields GF(p).

Rational scalars are plain :class:`fractions.Fraction` values.  Prime field
scalars are :class:`GFElement` instances carrying their modulus, so that the
usual arithmetic operators work on both kinds and matrices can be written
once for every field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, Sequence, Union

from sympy import divisors, isprime


class FieldError(ValueError):
    pass


class FieldMismatch(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class ZeroPolynomial(FieldError):
    pass


class GFElement:
    """A residue modulo a prime ``p``, always stored in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) and GF({other.p}) elements do not mix")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatch(f"cannot combine GF({self.p}) with rational {other}")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "GFElement":
        if self.value == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.p})")
        return GFElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * GFElement(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GFElement(o, self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return GFElement(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF{self.p}({self.value})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, GFElement]


@dataclass(frozen=True)
class Field:
    """Either the rationals (``char == 0``) or the prime field of order ``char``."""

    char: int = 0

    def __post_init__(self):
        if self.char != 0 and (self.char < 2 or not isprime(self.char)):
            raise FieldError(f"GF({self.char}): modulus must be prime")

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_finite(self) -> bool:
        return self.char != 0

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, x) -> Scalar:
        if isinstance(x, str):
            return self.parse(x)
        if self.char == 0:
            if isinstance(x, GFElement):
                raise FieldMismatch(f"{x!r} is not rational")
            return Fraction(x)
        if isinstance(x, GFElement):
            if x.p != self.char:
                raise FieldMismatch(f"{x!r} is not in GF({self.char})")
            return x
        x = Fraction(x)
        if x.denominator % self.char == 0:
            raise DivisionByZero(f"denominator of {x} vanishes in GF({self.char})")
        return GFElement(x.numerator, self.char) / x.denominator

    def parse(self, text: str) -> Scalar:
        text = text.strip()
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"not a scalar: {text!r}") from exc
        return self(value)

    def format(self, x: Scalar) -> str:
        return str(self(x))

    def contains(self, x) -> bool:
        if self.char == 0:
            return isinstance(x, (int, Fraction))
        return isinstance(x, GFElement) and x.p == self.char

    def elements(self) -> Iterator[Scalar]:
        if not self.is_finite:
            raise FieldError("the rationals cannot be enumerated")
        for v in range(self.char):
            yield GFElement(v, self.char)

    def random(self, rng, bound: int = 5) -> Scalar:
        if self.is_finite:
            return GFElement(rng.randrange(self.char), self.char)
        return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))

    def __str__(self):
        return "Q" if self.char == 0 else f"GF({self.char})"

    def dsl(self) -> str:
        return "Q" if self.char == 0 else f"GF {self.char}"


QQ = Field(0)


def field_of(x) -> Field:
    if isinstance(x, GFElement):
        return Field(x.p)
    if isinstance(x, (int, Fraction)):
        return QQ
    raise FieldMismatch(f"{x!r} is not a field element")


def field_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    """Apply one of ``add sub mul div neg inv`` and return the canonical result."""
    fa = field_of(a)
    if b is not None and field_of(b) != fa:
        raise FieldMismatch(f"{fa} and {field_of(b)} operands")
    a = fa(a)
    if op == "neg":
        return -a
    if op == "inv":
        if not a:
            raise DivisionByZero("inverse of zero")
        return fa.one / a
    if b is None:
        raise FieldError(f"{op} needs two operands")
    b = fa(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero")
        return a / b
    raise FieldError(f"unknown operation {op!r}")


class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Scalar) -> Scalar:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deflate(self, r: Scalar) -> "UniPoly":
        """Quotient of synthetic division by ``t - r`` (remainder dropped)."""
        out = []
        acc = self.field.zero
        for c in reversed(self.coeffs[1:]):
            acc = acc * r + c
            out.append(acc)
        return UniPoly(self.field, list(reversed(out)))

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1 and not self.field.is_finite:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _rational_candidates(poly: UniPoly) -> list[Fraction]:
    den = lcm(*(c.denominator for c in poly.coeffs))
    ints = [int(c * den) for c in poly.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    lead, trail = abs(ints[-1]), abs(ints[0])
    cands = set()
    for d in divisors(trail):
        for e in divisors(lead):
            cands.add(Fraction(d, e))
            cands.add(Fraction(-d, e))
    return sorted(cands)


def split_roots(poly: UniPoly) -> tuple[list[tuple[Scalar, int]], UniPoly]:
    """Roots in the base field with multiplicities, plus the root-free cofactor."""
    if poly.is_zero():
        raise ZeroPolynomial("the zero polynomial has every scalar as a root")
    field = poly.field
    roots: list[tuple[Scalar, int]] = []
    cur = poly
    zero_mult = 0
    while cur.degree > 0 and not cur.coeffs[0]:
        cur = UniPoly(field, cur.coeffs[1:])
        zero_mult += 1
    if field.is_finite:
        if zero_mult:
            roots.append((field.zero, zero_mult))
        candidates = [field(v) for v in range(1, field.char)]
    else:
        if zero_mult:
            roots.append((field.zero, zero_mult))
        candidates = _rational_candidates(cur) if cur.degree > 0 else []
    for r in candidates:
        if cur.degree <= 0:
            break
        mult = 0
        while cur.degree > 0 and not cur(r):
            cur = cur.deflate(r)
            mult += 1
        if mult:
            roots.append((r, mult))
    if not field.is_finite:
        roots.sort(key=lambda rm: rm[0])
    return roots, cur


def univariate_roots(poly: UniPoly) -> list[tuple[Scalar, int]]:
    """All roots of ``poly`` lying in its field, ascending, with multiplicities."""
    return split_roots(poly)[0]


def root_of_unity_order(q: Scalar) -> int | None:
    """Multiplicative order of ``q``, or ``None`` when no power of ``q`` is 1."""
    if not q:
        raise FieldError("zero is not a unit")
    if isinstance(q, GFElement):
        for d in divisors(q.p - 1):
            if q ** d == 1:
                return d
        raise AssertionError("unreachable: Fermat")
    if q == 1:
        return 1
    if q == -1:
        return 2
    return None
