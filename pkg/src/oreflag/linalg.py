"""Exact dense matrices and subspaces over a :class:`~oreflag.field.Field`."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .field import Field, UniPoly

Vector = tuple


class LinalgError(ValueError):
    pass


class NotSquare(LinalgError):
    pass


class AmbientMismatch(LinalgError):
    pass


class NotInvariant(LinalgError):
    """An operator maps a vector of the subspace outside of it."""

    def __init__(self, message: str, witness: Vector, generator=None):
        super().__init__(message)
        self.witness = witness
        self.generator = generator


class Matrix:
    """Immutable row-major matrix."""

    __slots__ = ("field", "rows", "ncols", "_hash")

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols: int | None = None):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise LinalgError("ragged matrix rows")
        # zero-row matrices still carry a column count
        self.ncols = ncols
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, rows, ncols: int) -> "Matrix":
        # trusted entries: skip coercion
        m = object.__new__(cls)
        m.field = field
        m.rows = tuple(tuple(r) for r in rows)
        m.ncols = ncols
        m._hash = None
        return m

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # constructors

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls.diag(field, [field.one] * n)

    @classmethod
    def diag(cls, field: Field, values: Sequence) -> "Matrix":
        n = len(values)
        z = field.zero
        return cls(field, [[values[i] if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def unit(cls, field: Field, n: int, i: int, j: int) -> "Matrix":
        """Matrix unit with a single 1 at 0-based position ``(i, j)``."""
        z, o = field.zero, field.one
        return cls(field, [[o if (r, c) == (i, j) else z for c in range(n)] for r in range(n)], n)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Vector], nrows: int | None = None) -> "Matrix":
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    # access

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    def flat(self) -> Vector:
        return tuple(x for r in self.rows for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    # arithmetic

    def _check_same(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if self.field != other.field:
            raise LinalgError(f"field mismatch {self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._raw(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._raw(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.field, [[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(self.field, [[c * a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.ncols != other.nrows:
            raise LinalgError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        z = self.field.zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix._raw(self.field, out, other.ncols)

    def apply(self, v: Sequence) -> Vector:
        z = self.field.zero
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise NotSquare("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, [self.col(j) for j in range(self.ncols)], self.nrows)

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise NotSquare("inverse of a non-square matrix")
        red = row_reduce(self)
        if red.rank != self.nrows:
            raise LinalgError("matrix is singular")
        return red.transform

    def conjugate(self, p: "Matrix", p_inv: "Matrix | None" = None) -> "Matrix":
        """Return ``p^-1 @ self @ p``."""
        if p_inv is None:
            p_inv = p.inverse()
        return p_inv @ self @ p

    # predicates

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def is_upper_triangular(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.nrows) for j in range(min(i, self.ncols)))

    def is_strictly_upper_triangular(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.nrows) for j in range(min(i + 1, self.ncols)))

    def diagonal(self) -> Vector:
        return tuple(self.rows[i][i] for i in range(min(self.nrows, self.ncols)))

    def is_nilpotent(self) -> bool:
        if not self.is_square:
            raise NotSquare("nilpotency of a non-square matrix")
        return (self ** self.nrows).is_zero()

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.shape, self.rows))
        return self._hash

    def tolist(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.field}, {self.tolist()})"

    def __str__(self):
        if not self.rows:
            return "[]"
        cells = self.tolist()
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


@dataclass(frozen=True)
class RowReduction:
    rref: Matrix
    rank: int
    pivots: tuple[int, ...]
    kernel: "Subspace"
    transform: Matrix


def _eliminate(m: Matrix, with_transform: bool = True):
    field = m.field
    n, c = m.shape
    rows = [list(r) for r in m.rows]
    trans = [list(r) for r in Matrix.identity(field, n).rows] if with_transform else None
    pivots = []
    r = 0
    for j in range(c):
        if r == n:
            break
        k = next((i for i in range(r, n) if rows[i][j]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = field.one / rows[r][j]
        rows[r] = [x * inv for x in rows[r]]
        if with_transform:
            trans[r], trans[k] = trans[k], trans[r]
            trans[r] = [x * inv for x in trans[r]]
        for i in range(n):
            if i != r and rows[i][j]:
                f = rows[i][j]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                if with_transform:
                    trans[i] = [a - f * b for a, b in zip(trans[i], trans[r])]
        pivots.append(j)
        r += 1
    return rows, pivots, trans


def row_reduce(m: Matrix) -> RowReduction:
    """Gauss-Jordan elimination; ``transform @ m == rref``.

    Pivots are taken as the first nonzero entry in column order.
    """
    field = m.field
    n, c = m.shape
    rows, pivots, trans = _eliminate(m)
    free = [j for j in range(c) if j not in pivots]
    kernel_vecs = []
    for f in free:
        v = [field.zero] * c
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        kernel_vecs.append(tuple(v))
    kernel = Subspace.span(field, c, kernel_vecs)
    return RowReduction(Matrix._raw(field, rows, c), len(pivots), tuple(pivots), kernel, Matrix._raw(field, trans, n))


class Subspace:
    """A subspace of ``field^ambient`` in canonical reduced echelon form.

    Basis vector ``k`` has a 1 at ``pivots[k]`` and every other basis vector
    is 0 there, with pivots increasing.  Equal subspaces therefore have equal
    bases and compare equal with ``==``.
    """

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: Field, ambient: int, basis: tuple, pivots: tuple):
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [tuple(field(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {ambient}")
        if not vecs:
            return cls(field, ambient, (), ())
        rows, pivots, _ = _eliminate(Matrix._raw(field, vecs, ambient), with_transform=False)
        basis = tuple(tuple(rows[i]) for i in range(len(pivots)))
        return cls(field, ambient, basis, tuple(pivots))

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls.span(field, ambient, Matrix.identity(field, ambient).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient - len(self.basis)

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient or self.field != other.field:
            raise AmbientMismatch(f"ambient {self.ambient} vs {other.ambient}")

    def reduce(self, v: Sequence) -> Vector:
        """``v`` minus its component along the basis; zero exactly when ``v`` lies inside."""
        if len(v) != self.ambient:
            raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient}")
        out = list(v)
        for b, p in zip(self.basis, self.pivots):
            c = out[p]
            if c:
                out = [x - c * y for x, y in zip(out, b)]
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of a vector of this subspace in its canonical basis."""
        if not self.contains(v):
            raise LinalgError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def complement_indices(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(j for j in range(self.ambient) if j not in piv)

    def extend_basis(self) -> list[Vector]:
        """Standard basis vectors completing this basis to one of the ambient space."""
        z, o = self.field.zero, self.field.one
        return [tuple(o if k == j else z for k in range(self.ambient)) for j in self.complement_indices()]

    def quotient_coordinates(self, v: Sequence) -> Vector:
        r = self.reduce(v)
        return tuple(r[j] for j in self.complement_indices())

    def lift(self, q: Sequence) -> Vector:
        """Ambient vector with quotient coordinates ``q`` (zero on the pivots)."""
        out = [self.field.zero] * self.ambient
        for j, x in zip(self.complement_indices(), q):
            out[j] = x
        return tuple(out)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient, list(self.basis) + list(other.basis))

    def __add__(self, other: "Subspace") -> "Subspace":
        return self.sum(other)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Solve ``sum a_k u_k = sum b_l w_l`` and map the solutions into ``self``."""
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient)
        cols = list(self.basis) + [tuple(-x for x in w) for w in other.basis]
        system = Matrix.from_columns(self.field, cols, self.ambient)
        ker = row_reduce(system).kernel
        k = self.dim
        z = self.field.zero
        vecs = []
        for sol in ker.basis:
            v = [z] * self.ambient
            for a, u in zip(sol[:k], self.basis):
                if a:
                    v = [x + a * y for x, y in zip(v, u)]
            vecs.append(v)
        return Subspace.span(self.field, self.ambient, vecs)

    def includes(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def invariance_witness(self, op: Matrix) -> Vector | None:
        for b in self.basis:
            if not self.contains(op.apply(b)):
                return b
        return None

    def matrix(self) -> Matrix:
        """The basis as the columns of an ``ambient x dim`` matrix."""
        return Matrix.from_columns(self.field, list(self.basis), self.ambient)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.field, self.ambient, self.basis))

    def __repr__(self):
        vecs = ", ".join("(" + ", ".join(str(x) for x in b) + ")" for b in self.basis)
        return f"Subspace(dim={self.dim}/{self.ambient}: {vecs})"


def subspace_calculus(op: str, *args):
    """Dispatch ``sum``, ``intersect``, ``contains`` and ``extend_basis``."""
    if op == "sum":
        return args[0].sum(args[1])
    if op == "intersect":
        return args[0].intersect(args[1])
    if op == "contains":
        return args[0].contains(args[1])
    if op == "extend_basis":
        return args[0].extend_basis()
    raise LinalgError(f"unknown subspace operation {op!r}")


class EchelonBasis:
    """Incrementally grown basis used to test linear independence."""

    def __init__(self, field: Field):
        self.field = field
        self._rows: list[tuple[int, Vector]] = []

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence) -> Vector:
        out = tuple(v)
        for p, row in self._rows:
            c = out[p]
            if c:
                out = tuple(x - c * y for x, y in zip(out, row))
        return out

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        r = self.reduce(v)
        p = next((i for i, x in enumerate(r) if x), None)
        if p is None:
            return False
        inv = self.field.one / r[p]
        r = tuple(x * inv for x in r)
        self._rows = [(q, tuple(x - row[p] * y for x, y in zip(row, r)) if row[p] else row) for q, row in self._rows]
        self._rows.append((p, r))
        return True

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))


def char_poly(m: Matrix) -> UniPoly:
    """Monic ``det(t I - m)`` by Berkowitz's division-free recursion."""
    if not m.is_square:
        raise NotSquare(f"characteristic polynomial of a {m.shape} matrix")
    field = m.field
    n = m.nrows
    one, zero = field.one, field.zero
    a = m.rows
    poly = [one]  # highest degree first
    for k in range(n - 1, -1, -1):
        size = n - k
        r = a[k][k + 1:]
        c = [a[i][k] for i in range(k + 1, n)]
        col = [one, -a[k][k]]
        v = c
        for _ in range(size - 1):
            acc = zero
            for x, y in zip(r, v):
                acc = acc + x * y
            col.append(-acc)
            v = [sum((a[i][j] * v[j - k - 1] for j in range(k + 1, n)), zero) for i in range(k + 1, n)]
        new = []
        for i in range(size + 1):
            acc = zero
            for j in range(len(poly)):
                if 0 <= i - j < len(col):
                    acc = acc + col[i - j] * poly[j]
            new.append(acc)
        poly = new
    return UniPoly(field, list(reversed(poly)))


@dataclass(frozen=True)
class BlockSplit:
    """``op`` in the basis ``w.basis + w.extend_basis()``.

    ``change_of_basis^-1 @ op @ change_of_basis == [[restricted, coupling], [0, quotient]]``.
    """

    restricted: Matrix
    quotient: Matrix
    coupling: Matrix
    change_of_basis: Matrix


def restrict_and_quotient(op: Matrix, w: Subspace) -> BlockSplit:
    if not op.is_square:
        raise NotSquare("operator must be square")
    if op.nrows != w.ambient:
        raise AmbientMismatch(f"operator of size {op.nrows} on ambient {w.ambient}")
    witness = w.invariance_witness(op)
    if witness is not None:
        raise NotInvariant("subspace is not invariant", witness)
    field = op.field
    restricted_cols = [w.coordinates(op.apply(b)) for b in w.basis]
    comp = w.extend_basis()
    quotient_cols = []
    coupling_cols = []
    for e in comp:
        image = op.apply(e)
        reduced = w.reduce(image)
        quotient_cols.append(tuple(reduced[j] for j in w.complement_indices()))
        inside = tuple(x - y for x, y in zip(image, reduced))
        coupling_cols.append(w.coordinates(inside))
    k, q = w.dim, w.codim
    return BlockSplit(
        restricted=Matrix.from_columns(field, restricted_cols, k) if k else Matrix.zeros(field, 0, 0),
        quotient=Matrix.from_columns(field, quotient_cols, q) if q else Matrix.zeros(field, 0, 0),
        coupling=Matrix.from_columns(field, coupling_cols, k) if q else Matrix(field, [[]] * k, 0),
        change_of_basis=Matrix.from_columns(field, list(w.basis) + comp, w.ambient),
    )


def quotient_action(op: Matrix, w: Subspace) -> Matrix:
    """Induced action on ``ambient / w`` in the complement coordinates (no invariance check)."""
    comp = w.complement_indices()
    cols = []
    for j in comp:
        cols.append(w.quotient_coordinates(op.col(j)))
    q = len(comp)
    return Matrix.from_columns(op.field, cols, q) if q else Matrix.zeros(op.field, 0, 0)
