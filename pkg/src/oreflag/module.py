"""Finite-dimensional representations of a presentation."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .field import Field
from .linalg import EchelonBasis, Matrix, NotInvariant, Subspace, quotient_action, row_reduce
from .presentation import NCPoly, OrePresentation


class ModuleError(ValueError):
    pass


class PresentationMismatch(ModuleError):
    pass


class SizeMismatch(ModuleError):
    pass


class InfiniteDimensional(ModuleError):
    def __init__(self, unbounded: Sequence[str]):
        super().__init__("generators without a power relation: " + ", ".join(unbounded))
        self.unbounded = tuple(unbounded)


class UnverifiedModule(ModuleError):
    pass


@dataclass(frozen=True)
class RelationFailure:
    relation: str
    lhs: Matrix
    rhs: Matrix


@dataclass(frozen=True)
class RelationReport:
    failures: tuple[RelationFailure, ...]
    checked: int

    @property
    def ok(self) -> bool:
        return not self.failures


class FDModule:
    """One square matrix per generator.  ``verified`` records whether the relations hold."""

    def __init__(self, presentation: OrePresentation, action: Sequence[Matrix], dim: int | None = None):
        self.presentation = presentation
        self.action = tuple(action)
        if len(self.action) != presentation.n:
            raise SizeMismatch(f"{len(self.action)} matrices for {presentation.n} generators")
        if dim is None:
            if not self.action:
                raise SizeMismatch("dimension is required when there are no generators")
            dim = self.action[0].nrows
        self.dim = dim
        for name, a in zip(presentation.names, self.action):
            if a.shape != (dim, dim):
                raise SizeMismatch(f"matrix for {name} is {a.nrows}x{a.ncols}, expected {dim}x{dim}")
            if a.field != presentation.field:
                raise PresentationMismatch(f"matrix for {name} is over {a.field}, not {presentation.field}")
        self.verified = check_module(self).ok

    @property
    def field(self) -> Field:
        return self.presentation.field

    @property
    def names(self) -> tuple[str, ...]:
        return self.presentation.names

    def __getitem__(self, name: str | int) -> Matrix:
        if isinstance(name, str):
            name = self.presentation.index[name]
        return self.action[name]

    def require_verified(self):
        if not self.verified:
            raise UnverifiedModule("the module does not satisfy the defining relations")

    def __repr__(self):
        return f"FDModule(dim={self.dim}, gens={' '.join(self.names)}, verified={self.verified})"


def evaluate(p: NCPoly, m: FDModule) -> Matrix:
    """Image of ``p`` under the representation."""
    if p.field != m.field or p.n != m.presentation.n:
        raise PresentationMismatch("polynomial and module belong to different presentations")
    field = m.field
    out = Matrix.zeros(field, m.dim)
    powers: dict = {}
    for mono, c in p.terms.items():
        acc = Matrix.identity(field, m.dim)
        for g, e in enumerate(mono):
            if e:
                key = (g, e)
                if key not in powers:
                    powers[key] = m.action[g] ** e
                acc = acc @ powers[key]
        out = out + acc.scale(c)
    return out


def check_module(m: FDModule) -> RelationReport:
    p = m.presentation
    fails = []
    checked = 0
    for (j, i), (sig, th) in sorted(p.right.items()):
        checked += 1
        lhs = m.action[j] @ m.action[i]
        rhs = evaluate(sig, m) @ m.action[j] + evaluate(th, m)
        if lhs != rhs:
            fails.append(RelationFailure(f"{p.names[j]}*{p.names[i]}", lhs, rhs))
    for i, (e, red) in sorted(p.power.items()):
        checked += 1
        lhs = m.action[i] ** e
        rhs = evaluate(red, m)
        if lhs != rhs:
            fails.append(RelationFailure(f"{p.names[i]}^{e}", lhs, rhs))
    return RelationReport(tuple(fails), checked)


def submodule_closure(m: FDModule, seeds: Sequence[Sequence]) -> Subspace:
    """Smallest invariant subspace containing ``seeds``, by breadth-first saturation."""
    basis = EchelonBasis(m.field)
    kept = []
    queue = deque(tuple(m.field(x) for x in v) for v in seeds)
    while queue:
        v = queue.popleft()
        if len(v) != m.dim:
            raise SizeMismatch(f"seed of length {len(v)} in a module of dimension {m.dim}")
        if basis.add(v):
            kept.append(v)
            queue.extend(a.apply(v) for a in m.action)
    return Subspace.span(m.field, m.dim, kept)


def submodule(m: FDModule, w: Subspace) -> FDModule:
    """The invariant subspace ``w`` as a module, in its canonical basis."""
    _check_invariant(m, w)
    action = []
    for a in m.action:
        cols = [w.coordinates(a.apply(b)) for b in w.basis]
        action.append(Matrix.from_columns(m.field, cols, w.dim) if w.dim else Matrix.zeros(m.field, 0))
    return FDModule(m.presentation, action, w.dim)


def _check_invariant(m: FDModule, w: Subspace):
    if w.ambient != m.dim:
        raise SizeMismatch(f"subspace of ambient {w.ambient} in a module of dimension {m.dim}")
    for name, a in zip(m.names, m.action):
        v = w.invariance_witness(a)
        if v is not None:
            raise NotInvariant(f"{name} maps a vector of the subspace outside it", v, name)


def quotient_module(m: FDModule, w: Subspace) -> FDModule:
    """Induced action on ``V / w`` in the coordinates complementary to the pivots of ``w``."""
    _check_invariant(m, w)
    return FDModule(m.presentation, [quotient_action(a, w) for a in m.action], w.codim)


def regular_module(p: OrePresentation) -> FDModule:
    """Left multiplication on the normal monomials, listed lexicographically."""
    if not p.is_finite_dimensional:
        raise InfiniteDimensional(p.unbounded())
    basis = p.normal_monomials()
    pos = {mono: k for k, mono in enumerate(basis)}
    d = len(basis)
    action = []
    for g in range(p.n):
        rows = [[p.field.zero] * d for _ in range(d)]
        for k, mono in enumerate(basis):
            prod = p.mul(p.gen(g), p.monomial(mono))
            for m2, c in prod.terms.items():
                rows[pos[m2]][k] = c
        action.append(Matrix(p.field, rows, d))
    return FDModule(p, action, d)


def generated_algebra_basis(mats: Sequence[Matrix], field: Field | None = None, size: int | None = None) -> list[Matrix]:
    """Basis of the unital algebra generated by ``mats``.

    Words are explored by length and then lexicographically; a word is kept when
    its matrix is independent of those kept before it.
    """
    if mats:
        field = mats[0].field
        size = mats[0].nrows
        for a in mats:
            if a.shape != (size, size) or a.field != field:
                raise SizeMismatch("generating matrices must be square of one size over one field")
    elif field is None or size is None:
        raise SizeMismatch("field and size are required when no matrices are given")
    ident = Matrix.identity(field, size)
    ech = EchelonBasis(field)
    ech.add(ident.flat())
    kept = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for a in mats:
                c = w @ a
                if ech.add(c.flat()):
                    kept.append(c)
                    nxt.append(c)
        frontier = nxt
    return kept


def coordinates_in(basis: Sequence[Matrix], target: Matrix) -> tuple | None:
    """Coefficients expressing ``target`` in a linearly independent list of matrices, or None."""
    if not basis:
        return () if target.is_zero() else None
    field = target.field
    system = Matrix.from_columns(field, [b.flat() for b in basis] + [target.flat()], len(target.flat()))
    red = row_reduce(system)
    k = len(basis)
    if k in red.pivots:
        return None
    out = [field.zero] * k
    for r, piv in enumerate(red.pivots):
        out[piv] = red.rref[r, k]
    return tuple(out)


# serialisation


def _entry(field: Field, x):
    return int(x) if field.is_finite else str(x)


def matrix_to_json(m: Matrix) -> list:
    return [[_entry(m.field, x) for x in row] for row in m.rows]


def matrix_from_json(field: Field, rows, dim: int) -> Matrix:
    try:
        mat = Matrix(field, [[field(x) if not isinstance(x, str) else field.parse(x) for x in r] for r in rows], dim)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ModuleError(f"bad matrix entry: {exc}") from exc
    if mat.nrows != dim:
        raise SizeMismatch(f"matrix has {mat.nrows} rows, expected {dim}")
    return mat


def module_to_json(m: FDModule, presentation_ref: str | None = None) -> dict:
    return {
        "presentation": presentation_ref if presentation_ref is not None else m.presentation.to_dsl(),
        "dim": m.dim,
        "action": {name: matrix_to_json(a) for name, a in zip(m.names, m.action)},
    }


def module_from_json(data: Mapping, presentation: OrePresentation | None = None, base: Path | None = None) -> FDModule:
    """Build a module from its JSON form.

    ``presentation`` overrides the ``"presentation"`` field, which may be a path
    (relative to ``base``), inline DSL text, or a built-in name.
    """
    from .corpus import resolve_presentation

    if presentation is None:
        ref = data.get("presentation")
        if ref is None:
            raise ModuleError("module file names no presentation")
        presentation = resolve_presentation(ref, base)
    try:
        dim = int(data["dim"])
        action = data["action"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ModuleError(f"module file needs 'dim' and 'action': {exc}") from exc
    missing = [n for n in presentation.names if n not in action]
    if missing:
        raise ModuleError("no matrix for " + ", ".join(missing))
    extra = [n for n in action if n not in presentation.index]
    if extra:
        raise ModuleError("matrices for unknown generators " + ", ".join(extra))
    mats = [matrix_from_json(presentation.field, action[n], dim) for n in presentation.names]
    return FDModule(presentation, mats, dim)


def load_module(path: str | Path, presentation: OrePresentation | None = None) -> FDModule:
    path = Path(path)
    with open(path) as fh:
        data = json.load(fh)
    return module_from_json(data, presentation, path.parent)


def save_module(m: FDModule, path: str | Path, presentation_ref: str | None = None):
    with open(path, "w") as fh:
        json.dump(module_to_json(m, presentation_ref), fh, indent=2)
        fh.write("\n")
