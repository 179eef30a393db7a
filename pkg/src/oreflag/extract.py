"""Lie-type presentations of finite-dimensional pointed matrix algebras.

The algebra ``A`` generated by some matrices is triangularized as a bimodule
over itself.  The flag ``V_1 < V_2 < ... < V_N = A`` consists of two-sided
ideals; below the top, ``A_k = K 1 + V_k`` is a chain of subalgebras with
one-dimensional steps.  Choosing ``x_k`` in ``V_k`` outside ``V_(k-1)`` gives
relations ``x_j x_i = x_i x_j + [x_j, x_i]`` with the bracket inside ``V_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .field import Field
from .linalg import Matrix, Subspace, row_reduce
from .module import FDModule, generated_algebra_basis
from .presentation import ConsistencyReport, NCPoly, OrePresentation
from .triangularize import FailureCertificate, TriangularizationResult, triangularize


class ChainMismatch(ValueError):
    pass


class AlgebraCoordinates:
    """Coordinates of matrices in a fixed linearly independent list."""

    def __init__(self, basis: Sequence[Matrix]):
        self.basis = list(basis)
        self.field = basis[0].field
        flat = Matrix.from_columns(self.field, [b.flat() for b in basis], len(basis[0].flat()))
        # independent rows of the stacked basis give a square invertible system
        self.rows = row_reduce(flat.transpose()).pivots
        self.solve = flat.submatrix(self.rows, range(len(basis))).inverse()
        self.flat = flat

    def __call__(self, m: Matrix) -> tuple:
        v = m.flat()
        c = self.solve.apply([v[r] for r in self.rows])
        if self.flat.apply(c) != tuple(v):
            raise ChainMismatch("matrix lies outside the algebra")
        return c

    def combine(self, coords: Sequence) -> Matrix:
        out = Matrix.zeros(self.field, self.basis[0].nrows)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out


@dataclass(frozen=True)
class IdealChain:
    """Flag of two-sided ideals, in coordinates of ``algebra_basis``."""

    algebra_basis: tuple[Matrix, ...]
    chain: tuple[Subspace, ...]
    flag: tuple[Matrix, ...]
    bimodule: TriangularizationResult

    @property
    def dim(self) -> int:
        return len(self.algebra_basis)


def bimodule_operators(basis: Sequence[Matrix]) -> list[Matrix]:
    """Left then right multiplication by each basis element, in basis coordinates."""
    coords = AlgebraCoordinates(basis)
    n = len(basis)
    field = coords.field
    left = [Matrix.from_columns(field, [coords(b @ c) for c in basis], n) for b in basis]
    right = [Matrix.from_columns(field, [coords(c @ b) for c in basis], n) for b in basis]
    return left + right


def pointed_ideal_chain(mats: Sequence[Matrix], field: Field | None = None, size: int | None = None, rng=None):
    """Ideal chain of the generated algebra, or the certificate of the stuck bimodule quotient."""
    basis = generated_algebra_basis(mats, field, size)
    ops = bimodule_operators(basis)
    res = triangularize(ops, rng)
    if isinstance(res, FailureCertificate):
        return res
    coords = AlgebraCoordinates(basis)
    n = len(basis)
    cols = res.transform.columns()
    chain = tuple(Subspace.span(coords.field, n, cols[: k + 1]) for k in range(n))
    flag = tuple(coords.combine(c) for c in cols)
    return IdealChain(tuple(basis), chain, flag, res)


@dataclass(frozen=True)
class Extraction:
    presentation: OrePresentation
    generators: tuple[Matrix, ...]
    algebra_basis: tuple[Matrix, ...]
    overlap: ConsistencyReport

    def module(self) -> FDModule:
        """The chosen generators acting on the original space."""
        return FDModule(self.presentation, self.generators, self.algebra_basis[0].nrows)

    def regular(self) -> FDModule:
        """Left multiplication on the source algebra in the basis ``1, x_1, ..., x_N``."""
        basis = [Matrix.identity(self.presentation.field, self.algebra_basis[0].nrows)]
        basis += list(self.generators)
        coords = AlgebraCoordinates(basis)
        n = len(basis)
        action = [Matrix.from_columns(coords.field, [coords(g @ b) for b in basis], n) for g in self.generators]
        return FDModule(self.presentation, action, n)


def extract_ore_datum(chain: IdealChain, names: Sequence[str] | None = None) -> Extraction:
    """Generators ``x_k`` = flag vector ``k`` below the top; sigma is the identity."""
    gens = list(chain.flag[:-1])
    n = len(gens)
    if names is None:
        names = [f"x{k + 1}" for k in range(n)]
    field = chain.algebra_basis[0].field
    if not gens:
        return Extraction(OrePresentation(field, []), (), chain.algebra_basis, ConsistencyReport((), 0))
    coords = AlgebraCoordinates(gens)
    ident = Matrix.identity(field, gens[0].nrows)

    def linear(m: Matrix, below: int, what: str) -> NCPoly:
        try:
            c = coords(m)
        except ChainMismatch:
            raise ChainMismatch(f"{what} is not in the span of the generators") from None
        if any(c[k] for k in range(below, n)):
            raise ChainMismatch(f"{what} leaves the span of {', '.join(names[:below])}")
        return NCPoly(field, n, {tuple(1 if t == k else 0 for t in range(n)): c[k] for k in range(below)})

    try:
        AlgebraCoordinates(gens + [ident])
    except ValueError as exc:
        raise ChainMismatch("the identity lies in the span of the chosen generators") from exc
    right = {}
    power = {}
    for j in range(n):
        for i in range(j):
            bracket = gens[j] @ gens[i] - gens[i] @ gens[j]
            theta = linear(bracket, i + 1, f"[{names[j]}, {names[i]}]")
            right[(j, i)] = (NCPoly.generator(field, n, i), theta)
        power[j] = (2, linear(gens[j] @ gens[j], j + 1, f"{names[j]}^2"))
    pres = OrePresentation(field, names, right, power, left=None)
    left = {k: (s, -t) for k, (s, t) in right.items()}
    pres = pres.with_left(left)
    return Extraction(pres, tuple(gens), chain.algebra_basis, pres.overlap_consistency_check())


def extract(mats: Sequence[Matrix], rng=None) -> Extraction | FailureCertificate:
    res = pointed_ideal_chain(mats, rng=rng)
    if isinstance(res, FailureCertificate):
        return res
    return extract_ore_datum(res)


def is_local(mats: Sequence[Matrix]) -> bool:
    """The generated algebra has a single character, the one killing its radical.

    For a pointed algebra this holds exactly when every generator has a single eigenvalue.
    """
    from .triangularize import triangularize as tri

    basis = generated_algebra_basis(mats)
    res = tri(bimodule_operators(basis))
    if isinstance(res, FailureCertificate):
        return False
    # characters of the bimodule flag are pairs (left, right) of algebra characters
    n = len(basis)
    pairs = {(c.values[:n], c.values[n:]) for c in res.characters}
    lefts = {l for l, _ in pairs} | {r for _, r in pairs}
    return len(lefts) == 1
