"""Ore-solvable presentations: polynomials, the DSL, and normal-form rewriting.

A presentation has ordered generators ``x_1 < ... < x_n``.  For each pair
``i < j`` the right datum gives ``x_j x_i = sigma * x_j + theta`` with sigma
and theta polynomials in generators below ``x_j``.  A generator may also
carry a power relation ``x_i^m = reduction``.  Normal monomials are
``x_1^e1 ... x_n^en`` with ``e_i < m_i`` for bounded generators.

Generators are indexed from 0 in code; the DSL and reports use names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .field import Field, QQ, Scalar

Monomial = tuple  # exponent vector


class PresentationError(ValueError):
    pass


class ParseError(PresentationError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class IndexViolation(PresentationError):
    pass


class PowerViolation(PresentationError):
    pass


class NotInverse(PresentationError):
    def __init__(self, message: str, level: int):
        super().__init__(message)
        self.level = level


class MissingLeftDatum(PresentationError):
    pass


class RewritingLimit(RuntimeError):
    pass


class NCPoly:
    """Linear combination of normal monomials; zero coefficients are never stored."""

    __slots__ = ("field", "n", "terms", "_hash")

    def __init__(self, field: Field, n: int, terms: Mapping[Monomial, Scalar] | None = None):
        self.field = field
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def constant(cls, field: Field, n: int, c=1) -> "NCPoly":
        return cls(field, n, {(0,) * n: field(c)})

    @classmethod
    def generator(cls, field: Field, n: int, i: int, c=1) -> "NCPoly":
        e = [0] * n
        e[i] = 1
        return cls(field, n, {tuple(e): field(c)})

    @classmethod
    def monomial(cls, field: Field, n: int, exps: Sequence[int], c=1) -> "NCPoly":
        return cls(field, n, {tuple(exps): field(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def coefficient(self, mono: Monomial) -> Scalar:
        return self.terms.get(tuple(mono), self.field.zero)

    def constant_term(self) -> Scalar:
        return self.coefficient((0,) * self.n)

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, self.field.zero) + c
        return NCPoly(self.field, self.n, out)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.field, self.n, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "NCPoly":
        c = self.field(c)
        return NCPoly(self.field, self.n, {m: c * v for m, v in self.terms.items()})

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def support(self) -> set[int]:
        """Indices of generators occurring with positive exponent."""
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def widen(self, n: int) -> "NCPoly":
        """Same polynomial in a presentation with ``n >= self.n`` generators."""
        pad = (0,) * (n - self.n)
        return NCPoly(self.field, n, {m + pad: c for m, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        order = sorted(self.terms, key=lambda m: (sum(m), m), reverse=True)
        out = ""
        for k, m in enumerate(order):
            c = self.terms[m]
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            negative = not self.field.is_finite and c < 0
            mag = -c if negative else c
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if k == 0:
                out = ("-" if negative else "") + body
            else:
                out += (" - " if negative else " + ") + body
        return out

    def __repr__(self):
        return f"NCPoly({self.format([f'x{i + 1}' for i in range(self.n)])})"


@dataclass(frozen=True)
class Overlap:
    kind: str  # "triple", "power-left", "power-right", "power-self", "left-datum"
    generators: tuple[str, ...]
    left: str
    right: str


@dataclass(frozen=True)
class ConsistencyReport:
    failures: tuple[Overlap, ...]
    checked: int

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first(self) -> Overlap | None:
        return self.failures[0] if self.failures else None


class OrePresentation:
    """Validated presentation; treat as immutable.

    ``right[(j, i)] = (sigma, theta)`` for every ``j > i``;
    ``left[(j, i)] = (sigma_l, theta_l)`` realises ``x_i x_j = x_j sigma_l + theta_l``;
    ``power[i] = (m, reduction)``.
    """

    max_steps = 2_000_000

    def __init__(
        self,
        field: Field,
        names: Sequence[str],
        right: Mapping[tuple[int, int], tuple[NCPoly, NCPoly]] | None = None,
        power: Mapping[int, tuple[int, NCPoly]] | None = None,
        left: Mapping[tuple[int, int], tuple[NCPoly, NCPoly]] | None = None,
    ):
        self.field = field
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise PresentationError("duplicate generator names")
        n = self.n = len(self.names)
        self.index = {name: i for i, name in enumerate(self.names)}
        zero = NCPoly(field, n)
        self.right = {}
        for j in range(n):
            for i in range(j):
                sig, th = (right or {}).get((j, i), (self.gen(i), zero))
                self.right[(j, i)] = (sig.widen(n), th.widen(n))
        self.power = {i: (m, red.widen(n)) for i, (m, red) in (power or {}).items()}
        if left is None:
            self.left = None
        else:
            self.left = {}
            for j in range(n):
                for i in range(j):
                    sig, th = left.get((j, i), (self.gen(i), zero))
                    self.left[(j, i)] = (sig.widen(n), th.widen(n))
        self._validate()
        self._cache: dict = {}
        self._steps = 0

    # construction helpers

    def gen(self, i: int, c=1) -> NCPoly:
        return NCPoly.generator(self.field, self.n, i, c)

    def const(self, c=1) -> NCPoly:
        return NCPoly.constant(self.field, self.n, c)

    def zero(self) -> NCPoly:
        return NCPoly(self.field, self.n)

    def monomial(self, exps: Sequence[int], c=1) -> NCPoly:
        return NCPoly.monomial(self.field, self.n, exps, c)

    def _validate(self):
        for (j, i), (sig, th) in self.right.items():
            for label, p in (("sigma", sig), ("theta", th)):
                bad = [g for g in p.support() if g >= j]
                if bad:
                    raise IndexViolation(
                        f"swap {self.names[j]} {self.names[i]}: {label} uses "
                        f"{self.names[bad[0]]}, must use generators below {self.names[j]}"
                    )
        for (j, i), (sig, th) in (self.left or {}).items():
            for label, p in (("sigma", sig), ("theta", th)):
                bad = [g for g in p.support() if g >= j]
                if bad:
                    raise IndexViolation(
                        f"leftswap {self.names[i]} {self.names[j]}: {label} uses "
                        f"{self.names[bad[0]]}, must use generators below {self.names[j]}"
                    )
        for i, (m, red) in self.power.items():
            if m < 1:
                raise PowerViolation(f"power bound for {self.names[i]} must be at least 1")
            for mono in red.terms:
                if any(e for g, e in enumerate(mono) if g > i):
                    raise PowerViolation(f"power {self.names[i]}: reduction uses a higher generator")
                if mono[i] >= m:
                    raise PowerViolation(f"power {self.names[i]}: reduction has {self.names[i]}-degree >= {m}")

    @property
    def has_left(self) -> bool:
        return self.left is not None

    @property
    def is_finite_dimensional(self) -> bool:
        return all(i in self.power for i in range(self.n))

    def unbounded(self) -> list[str]:
        return [self.names[i] for i in range(self.n) if i not in self.power]

    def sub(self, level: int) -> "OrePresentation":
        """Sub-presentation on the first ``level`` generators."""
        names = self.names[:level]
        cut = lambda p: NCPoly(self.field, level, {m[:level]: c for m, c in p.terms.items()})
        right = {k: (cut(s), cut(t)) for k, (s, t) in self.right.items() if k[0] < level}
        power = {i: (m, cut(r)) for i, (m, r) in self.power.items() if i < level}
        left = None
        if self.left is not None:
            left = {k: (cut(s), cut(t)) for k, (s, t) in self.left.items() if k[0] < level}
        return OrePresentation(self.field, names, right, power, left)

    def with_left(self, left) -> "OrePresentation":
        return OrePresentation(self.field, self.names, self.right, self.power, left)

    def normal_monomials(self) -> list[Monomial]:
        if not self.is_finite_dimensional:
            raise PresentationError(f"unbounded generators: {', '.join(self.unbounded())}")
        return [tuple(e) for e in product(*(range(self.power[i][0]) for i in range(self.n)))]

    # rewriting

    def _tick(self):
        self._steps += 1
        if self._steps > self.max_steps:
            self._steps = 0
            raise RewritingLimit("rewriting exceeded the step ceiling; the datum is probably not terminating")

    def _add_into(self, acc: dict, poly: Mapping, c):
        for m, v in poly.items():
            s = acc.get(m)
            s = c * v if s is None else s + c * v
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)

    def _mono_times_gen(self, mono: Monomial, g: int) -> dict:
        key = (mono, g)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self._tick()
        one = self.field.one
        h = max((k for k, e in enumerate(mono) if e), default=-1)
        if h <= g:
            e = list(mono)
            e[g] += 1
            bound = self.power.get(g)
            if bound is not None and e[g] >= bound[0]:
                e[g] -= bound[0]
                result = self._mono_times_poly(tuple(e), bound[1].terms)
            else:
                result = {tuple(e): one}
        else:
            u = list(mono)
            u[h] -= 1
            u = tuple(u)
            sig, th = self.right[(h, g)]
            result = {}
            for m2, c in self._mono_times_poly(u, sig.terms).items():
                self._add_into(result, self._mono_times_gen(m2, h), c)
            self._add_into(result, self._mono_times_poly(u, th.terms), one)
        self._cache[key] = result
        return result

    def _poly_times_gen(self, poly: Mapping, g: int) -> dict:
        out: dict = {}
        for m, c in poly.items():
            self._add_into(out, self._mono_times_gen(m, g), c)
        return out

    def _poly_times_word(self, poly: Mapping, word: Iterable[int]) -> dict:
        acc = dict(poly)
        for g in word:
            acc = self._poly_times_gen(acc, g)
            if not acc:
                break
        return acc

    def _mono_times_poly(self, mono: Monomial, terms: Mapping) -> dict:
        out: dict = {}
        start = {mono: self.field.one}
        for m, c in terms.items():
            self._add_into(out, self._poly_times_word(start, self.word(m)), c)
        return out

    @staticmethod
    def word(mono: Monomial) -> list[int]:
        return [i for i, e in enumerate(mono) for _ in range(e)]

    def normal_form(self, word: Sequence[int | str], scalar=1) -> NCPoly:
        """Normal form of ``scalar * x_{w1} x_{w2} ...``."""
        idx = [self.index[w] if isinstance(w, str) else w for w in word]
        for g in idx:
            if not 0 <= g < self.n:
                raise PresentationError(f"no generator with index {g}")
        self._steps = 0
        start = {(0,) * self.n: self.field(scalar)}
        return NCPoly(self.field, self.n, self._poly_times_word(start, idx))

    def is_normal(self, p: NCPoly) -> bool:
        """No term reaches the bound of a power relation."""
        return all(m[i] < bound for m in p.terms for i, (bound, _) in self.power.items())

    def reduce(self, p: NCPoly) -> NCPoly:
        """Apply the power relations to terms that are not normal."""
        if self.is_normal(p):
            return p
        self._steps = 0
        out: dict = {}
        unit = {(0,) * self.n: self.field.one}
        for m, c in p.terms.items():
            self._add_into(out, self._poly_times_word(unit, self.word(m)), c)
        return NCPoly(self.field, self.n, out)

    def mul(self, p: NCPoly, q: NCPoly) -> NCPoly:
        """Normal form of ``p * q``: ``p`` is multiplied by each term of ``q`` letter by letter."""
        p = self.reduce(p)
        self._steps = 0
        out: dict = {}
        for m, c in q.terms.items():
            self._add_into(out, self._poly_times_word(p.terms, self.word(m)), c)
        return NCPoly(self.field, self.n, out)

    def power_of(self, p: NCPoly, k: int) -> NCPoly:
        acc = self.const(1)
        for _ in range(k):
            acc = self.mul(acc, p)
        return acc

    # datum maps extended from generators

    def _check_level(self, j: int, side: str):
        if side == "left" and self.left is None:
            raise MissingLeftDatum("the presentation has no left datum")
        if not 0 <= j < self.n:
            raise PresentationError(f"no level {j}")

    def sigma(self, j: int, p: NCPoly, side: str = "left") -> NCPoly:
        """Extend ``sigma_j`` (left or right datum) multiplicatively to ``p``."""
        self._check_level(j, side)
        table = self.left if side == "left" else self.right
        out = self.zero()
        for m, c in p.terms.items():
            acc = self.const(c)
            for g in self.word(m):
                if g >= j:
                    raise IndexViolation(f"sigma_{self.names[j]} is defined below {self.names[j]} only")
                acc = self.mul(acc, table[(j, g)][0])
            out = out + acc
        return out

    def theta(self, j: int, p: NCPoly, side: str = "left") -> NCPoly:
        """Extend ``theta_j`` as a twisted derivation.

        Left datum: ``theta(ab) = theta(a) sigma(b) + a theta(b)``.
        Right datum: ``theta(ab) = sigma(a) theta(b) + theta(a) b``.
        """
        self._check_level(j, side)
        table = self.left if side == "left" else self.right
        out = self.zero()
        for m, c in p.terms.items():
            w = self.word(m)
            if any(g >= j for g in w):
                raise IndexViolation(f"theta_{self.names[j]} is defined below {self.names[j]} only")
            for k, g in enumerate(w):
                sig = lambda h: table[(j, h)][0]
                if side == "left":
                    left = self.normal_form(w[:k])
                    right = self.const(1)
                    for h in w[k + 1:]:
                        right = self.mul(right, sig(h))
                else:
                    left = self.const(1)
                    for h in w[:k]:
                        left = self.mul(left, sig(h))
                    right = self.normal_form(w[k + 1:])
                term = self.mul(self.mul(left, table[(j, g)][1]), right)
                out = out + term.scale(c)
        return out

    def is_left_identity(self, j: int) -> bool:
        self._check_level(j, "left")
        return all(self.left[(j, i)][0] == self.gen(i) for i in range(j))

    # consistency

    def overlap_consistency_check(self) -> ConsistencyReport:
        """Resolve every overlap ambiguity of the rewriting system both ways."""
        fails = []
        checked = 0
        nm = self.names
        fmt = lambda p: p.format(nm)

        def compare(kind, gens, a, b):
            nonlocal checked
            checked += 1
            if a != b:
                fails.append(Overlap(kind, tuple(nm[g] for g in gens), fmt(a), fmt(b)))

        for k in range(self.n):
            for j in range(k):
                for i in range(j):
                    a = self.mul(self.normal_form([k, j]), self.gen(i))
                    b = self.mul(self.gen(k), self.normal_form([j, i]))
                    compare("triple", (k, j, i), a, b)
        for i, (m, red) in self.power.items():
            head = self.normal_form([i] * (m - 1))
            compare("power-self", (i,), self.mul(self.gen(i), red), self.mul(red, self.gen(i)))
            for j in range(i + 1, self.n):
                # x_j x_i^m
                a = self.mul(self.normal_form([j] + [i] * (m - 1)), self.gen(i))
                b = self.mul(self.gen(j), red)
                compare("power-left", (j, i), a, b)
            for i2 in range(i):
                # x_i^m x_i2
                a = self.mul(red, self.gen(i2))
                b = self.mul(head, self.normal_form([i, i2]))
                compare("power-right", (i, i2), a, b)
        return ConsistencyReport(tuple(fails), checked)

    def datum_consistency(self) -> ConsistencyReport:
        """Check ``x_i x_j == x_j sigma_l(x_i) + theta_l(x_i)`` for every stored left pair."""
        if self.left is None:
            return ConsistencyReport((), 0)
        fails = []
        for (j, i), (sig, th) in sorted(self.left.items()):
            lhs = self.normal_form([i, j])
            rhs = self.mul(self.gen(j), sig) + th
            if lhs != rhs:
                fails.append(Overlap("left-datum", (self.names[i], self.names[j]), lhs.format(self.names), rhs.format(self.names)))
        return ConsistencyReport(tuple(fails), len(self.left))

    # text

    def parse_poly(self, text: str) -> NCPoly:
        return _PolyParser(text, self.field, self.index, 1, 1).parse()

    def format_poly(self, p: NCPoly) -> str:
        return p.format(self.names)

    def to_dsl(self) -> str:
        lines = [f"field {self.field.dsl()}", "gens " + " ".join(self.names)]
        for i in sorted(self.power):
            m, red = self.power[i]
            lines.append(f"power {self.names[i]} {m} = {self.format_poly(red)}")
        for (j, i), (sig, th) in sorted(self.right.items()):
            if sig == self.gen(i) and th.is_zero():
                continue
            line = f"swap {self.names[j]} {self.names[i]} : sigma = {self.format_poly(sig)}"
            if not th.is_zero():
                line += f", theta = {self.format_poly(th)}"
            lines.append(line)
        if self.left is not None:
            if self.n < 2:
                lines.append("left")
            for (j, i), (sig, th) in sorted(self.left.items()):
                line = f"leftswap {self.names[i]} {self.names[j]} : sigma = {self.format_poly(sig)}"
                if not th.is_zero():
                    line += f", theta = {self.format_poly(th)}"
                lines.append(line)
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"OrePresentation({self.field}, {' '.join(self.names)})"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


class _PolyParser:
    def __init__(self, text: str, field: Field, index: Mapping[str, int], line: int, col0: int):
        self.text = text
        self.field = field
        self.index = index
        self.n = len(index)
        self.line = line
        self.col0 = col0
        self.tokens = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {stripped[pos]!r}", line, col0 + pos)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), col0 + m.start(kind)))
            pos = m.end()
        self.k = 0

    def _peek(self):
        return self.tokens[self.k] if self.k < len(self.tokens) else (None, None, self.col0 + len(self.text))

    def _next(self):
        t = self._peek()
        self.k += 1
        return t

    def _fail(self, msg, col=None):
        raise ParseError(msg, self.line, self._peek()[2] if col is None else col)

    def parse(self) -> NCPoly:
        if not self.tokens:
            self._fail("empty polynomial")
        out: dict = {}
        sign = 1
        kind, val, _ = self._peek()
        if kind == "op" and val in "+-":
            self._next()
            sign = -1 if val == "-" else 1
        while True:
            mono, c = self._term()
            c = c * sign
            out[mono] = out.get(mono, self.field.zero) + c
            kind, val, col = self._peek()
            if kind is None:
                break
            if kind == "op" and val in "+-":
                self._next()
                sign = -1 if val == "-" else 1
                continue
            self._fail(f"expected '+' or '-', got {val!r}")
        return NCPoly(self.field, self.n, out)

    def _number(self) -> Fraction:
        kind, val, col = self._next()
        if kind != "num":
            self._fail("expected a number", col)
        return Fraction(int(val))

    def _term(self):
        coeff = Fraction(1)
        exps = [0] * self.n
        last = -1
        while True:
            kind, val, col = self._peek()
            if kind == "num":
                coeff *= self._number()
                if self._peek()[1] == "/" and self._peek()[0] == "op":
                    self._next()
                    d = self._number()
                    if not d:
                        self._fail("division by zero", col)
                    coeff /= d
            elif kind == "name":
                self._next()
                if val not in self.index:
                    self._fail(f"unknown generator {val!r}", col)
                g = self.index[val]
                if g < last:
                    self._fail(f"generator {val!r} out of order within a term", col)
                last = g
                e = 1
                if self._peek()[0] == "op" and self._peek()[1] == "^":
                    self._next()
                    e = int(self._number())
                exps[g] += e
                if self._peek()[0] == "op" and self._peek()[1] == "/":
                    self._next()
                    d = self._number()
                    if not d:
                        self._fail("division by zero", col)
                    coeff /= d
            else:
                self._fail("expected a scalar or a generator", col)
            kind, val, _ = self._peek()
            if kind == "op" and val == "*":
                self._next()
                continue
            break
        try:
            c = self.field(coeff)
        except ZeroDivisionError:
            self._fail(f"coefficient {coeff} is undefined in {self.field}", col)
        return tuple(exps), c


_LINE = re.compile(r"^(?P<kw>\w+)\b")


def parse_presentation(text: str) -> OrePresentation:
    """Parse the line-oriented presentation DSL (see README)."""
    field = None
    names = None
    power: dict = {}
    right: dict = {}
    left: dict | None = None
    index: dict = {}

    def need_gens(lineno):
        if names is None:
            raise ParseError("'gens' must come before relations", lineno, 1)

    def datum(rest: str, lineno: int, offset: int):
        m = re.match(r"\s*sigma\s*=\s*(?P<sig>[^,]*?)\s*(?:,\s*theta\s*=\s*(?P<th>.*?))?\s*$", rest)
        if not m:
            raise ParseError("expected 'sigma = <poly> [, theta = <poly>]'", lineno, offset + 1)
        sig = _PolyParser(m.group("sig"), field, index, lineno, offset + m.start("sig") + 1).parse()
        th = NCPoly(field, len(index))
        if m.group("th") is not None:
            th = _PolyParser(m.group("th"), field, index, lineno, offset + m.start("th") + 1).parse()
        return sig, th

    def pair(tokens, lineno, hi_first):
        if len(tokens) != 2:
            raise ParseError("expected two generator names", lineno, 1)
        for t in tokens:
            if t not in index:
                raise ParseError(f"unknown generator {t!r}", lineno, 1)
        a, b = index[tokens[0]], index[tokens[1]]
        hi, lo = (a, b) if hi_first else (b, a)
        if hi <= lo:
            want = "higher generator first" if hi_first else "lower generator first"
            raise IndexViolation(f"line {lineno}: {want}")
        return hi, lo

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        m = _LINE.match(stripped)
        if not m:
            raise ParseError("expected a keyword", lineno, indent + 1)
        kw = m.group("kw")
        rest = stripped[m.end():]
        if kw == "field":
            parts = rest.split()
            try:
                if parts == ["Q"]:
                    field = QQ
                elif len(parts) == 2 and parts[0] == "GF":
                    field = Field(int(parts[1]))
                else:
                    raise ParseError("expected 'field Q' or 'field GF <p>'", lineno, indent + 7)
            except ValueError as exc:
                if isinstance(exc, ParseError):
                    raise
                raise ParseError(str(exc), lineno, indent + 7) from exc
        elif kw == "gens":
            if field is None:
                raise ParseError("'field' must come first", lineno, indent + 1)
            if names is not None:
                raise ParseError("duplicate 'gens' line", lineno, indent + 1)
            names = rest.split()
            if not names or len(set(names)) != len(names):
                raise ParseError("expected distinct generator names", lineno, indent + 6)
            for nm in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                    raise ParseError(f"bad generator name {nm!r}", lineno, indent + 6)
            index = {nm: i for i, nm in enumerate(names)}
        elif kw == "power":
            need_gens(lineno)
            pm = re.match(r"\s*(?P<g>\w+)\s+(?P<m>\d+)\s*=\s*(?P<red>.*)$", rest)
            if not pm:
                raise ParseError("expected 'power <name> <m> = <poly>'", lineno, indent + 7)
            g = pm.group("g")
            if g not in index:
                raise ParseError(f"unknown generator {g!r}", lineno, indent + 6 + pm.start("g") + 1)
            if index[g] in power:
                raise ParseError(f"second power relation for {g!r}", lineno, indent + 1)
            red = _PolyParser(pm.group("red"), field, index, lineno, indent + len(kw) + pm.start("red") + 1).parse()
            power[index[g]] = (int(pm.group("m")), red)
        elif kw in ("swap", "leftswap"):
            need_gens(lineno)
            if ":" not in rest:
                raise ParseError("expected ':' after the generator pair", lineno, indent + len(kw) + len(rest) + 1)
            head, body = rest.split(":", 1)
            hi, lo = pair(head.split(), lineno, kw == "swap")
            offset = indent + len(kw) + len(head) + 1
            sig, th = datum(body, lineno, offset)
            if kw == "swap":
                if (hi, lo) in right:
                    raise ParseError("duplicate swap", lineno, indent + 1)
                right[(hi, lo)] = (sig, th)
            else:
                left = {} if left is None else left
                if (hi, lo) in left:
                    raise ParseError("duplicate leftswap", lineno, indent + 1)
                left[(hi, lo)] = (sig, th)
        elif kw == "left":
            need_gens(lineno)
            left = {} if left is None else left
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno, indent + 1)
    if field is None:
        raise ParseError("missing 'field' line", 1, 1)
    if names is None:
        raise ParseError("missing 'gens' line", 1, 1)
    return OrePresentation(field, names, right, power, left)


def overlap_consistency_check(p: OrePresentation) -> ConsistencyReport:
    return p.overlap_consistency_check()


def normal_form(p: OrePresentation, word: Sequence[int | str], scalar=1) -> NCPoly:
    return p.normal_form(word, scalar)


def nc_mul(p: OrePresentation, a: NCPoly, b: NCPoly) -> NCPoly:
    return p.mul(a, b)


def _affine_inverse(p: OrePresentation, j: int) -> dict[int, NCPoly] | None:
    """Inverse of a right sigma that maps each ``x_i`` to ``a x_i + b`` with ``a != 0``."""
    inv = {}
    for i in range(j):
        sig = p.right[(j, i)][0]
        unit = [0] * p.n
        unit[i] = 1
        a = sig.coefficient(tuple(unit))
        b = sig.constant_term()
        rest = sig - p.gen(i, a) - p.const(b)
        if not a or not rest.is_zero():
            return None
        inv[i] = (p.gen(i) - p.const(b)).scale(p.field.one / a)
    return inv


def left_datum_from_right(
    p: OrePresentation,
    inverse_images: Mapping[int, Mapping[int, NCPoly]] | None = None,
) -> OrePresentation:
    """Derive the left datum from the right one and inverses of the right sigmas.

    From ``x a = sigma'(a) x + theta'(a)`` one gets ``b x = x sigma'^-1(b) - theta'(sigma'^-1(b))``.
    ``inverse_images[j][i]`` is the claimed ``sigma_j'^-1(x_i)`` (levels and generators
    0-based); levels left out are inverted automatically when each ``sigma_j'(x_i)``
    is ``a x_i + b``.
    """
    inverse_images = dict(inverse_images or {})
    left = {}
    for j in range(1, p.n):
        inv = inverse_images.get(j)
        if inv is None:
            inv = _affine_inverse(p, j)
            if inv is None:
                raise NotInverse(f"cannot invert sigma for {p.names[j]} automatically; supply inverse images", j)
        inv = {i: (q if isinstance(q, NCPoly) else p.parse_poly(q)).widen(p.n) for i, q in inv.items()}
        for i in range(j):
            if i not in inv:
                raise NotInverse(f"missing inverse image of {p.names[i]} at level {p.names[j]}", j)
            if p.sigma(j, inv[i], side="right") != p.gen(i):
                raise NotInverse(f"sigma_{p.names[j]}(claimed inverse of {p.names[i]}) != {p.names[i]}", j)
            back = p.zero()
            for m, c in p.right[(j, i)][0].terms.items():
                acc = p.const(c)
                for g in p.word(m):
                    acc = p.mul(acc, inv[g])
                back = back + acc
            if back != p.gen(i):
                raise NotInverse(f"claimed inverse fails on sigma_{p.names[j]}({p.names[i]})", j)
        for i in range(j):
            theta_l = -p.theta(j, inv[i], side="right")
            left[(j, i)] = (inv[i], theta_l)
    out = p.with_left(left)
    rep = out.datum_consistency()
    if not rep.ok:
        f = rep.first
        raise NotInverse(f"left datum disagrees with products: {f.generators}: {f.left} != {f.right}", out.index[f.generators[1]])
    return out


def ensure_left(p: OrePresentation) -> OrePresentation:
    """``p`` itself if it has a left datum, otherwise one derived automatically."""
    if p.has_left:
        return p
    try:
        return left_datum_from_right(p)
    except NotInverse as exc:
        raise MissingLeftDatum(str(exc)) from exc
