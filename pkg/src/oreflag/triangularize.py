"""Flags of invariant subspaces: common eigenvectors, triangularization, Loewy layers.

Every routine accepts either an :class:`FDModule` or a plain list of square
matrices over one field.  Failures are returned as :class:`FailureCertificate`
values rather than raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .field import Field, Scalar, split_roots
from .linalg import EchelonBasis, Matrix, Subspace, char_poly, quotient_action, row_reduce
from .module import FDModule, SizeMismatch
from .presentation import MissingLeftDatum, NCPoly, OrePresentation

NO_EIGENVALUE = "NoEigenvalueInField"
NO_COMMON_EIGENVECTOR = "NoCommonEigenvector"
NONZERO_CHARACTER = "NonzeroCharacterRequired"


class EmptyDimension(ValueError):
    pass


@dataclass(frozen=True)
class Character:
    """Values of a one-dimensional representation on named generators."""

    names: tuple[str, ...]
    values: tuple[Scalar, ...]

    @classmethod
    def from_mapping(cls, field: Field, names: Sequence[str], values: Mapping[str, object]) -> "Character":
        return cls(tuple(names), tuple(field(values[n]) for n in names))

    def __getitem__(self, name: str | int) -> Scalar:
        if isinstance(name, str):
            name = self.names.index(name)
        return self.values[name]

    def as_dict(self) -> dict[str, Scalar]:
        return dict(zip(self.names, self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def restrict(self, k: int) -> "Character":
        return Character(self.names[:k], self.values[:k])

    def key(self) -> tuple:
        return tuple(str(v) for v in self.values)

    def to_json(self) -> dict[str, str]:
        return {n: str(v) for n, v in zip(self.names, self.values)}

    def __str__(self):
        return "(" + ", ".join(f"{n}:{v}" for n, v in zip(self.names, self.values)) + ")"


def evaluate_character(values: Sequence[Scalar], p: NCPoly) -> Scalar:
    """Value of ``p`` when generator ``i`` is replaced by ``values[i]`` (missing values must not occur)."""
    acc = p.field.zero
    for mono, c in p.terms.items():
        t = c
        for g, e in enumerate(mono):
            if e:
                t = t * values[g] ** e
        acc = acc + t
    return acc


@dataclass(frozen=True)
class _Family:
    field: Field
    dim: int
    mats: tuple[Matrix, ...]
    names: tuple[str, ...]
    module: FDModule | None


def _family(m) -> _Family:
    if isinstance(m, FDModule):
        return _Family(m.field, m.dim, m.action, m.names, m)
    if isinstance(m, _Family):
        return m
    mats = tuple(m)
    if not mats:
        raise SizeMismatch("at least one matrix is required")
    field, d = mats[0].field, mats[0].nrows
    for a in mats:
        if a.shape != (d, d) or a.field != field:
            raise SizeMismatch("matrices must be square of one size over one field")
    return _Family(field, d, mats, tuple(f"g{k + 1}" for k in range(len(mats))), None)


def _with_mats(fam: _Family, mats: Sequence[Matrix], dim: int) -> _Family:
    module = None
    if fam.module is not None:
        module = FDModule(fam.module.presentation, mats, dim)
    return _Family(fam.field, dim, tuple(mats), fam.names, module)


@dataclass(frozen=True)
class FailureCertificate:
    """Why no flag exists: the search got stuck at ``stage`` on ``quotient``."""

    stage: int
    reason: str
    quotient: tuple[Matrix, ...]
    names: tuple[str, ...]
    generator: str | None = None
    remainder: object = None
    exhausted: int = 0
    character: Character | None = None
    witness_quotient: FDModule | None = None

    @property
    def quotient_dim(self) -> int:
        return self.quotient[0].nrows if self.quotient else 0

    def to_json(self) -> dict:
        out = {"result": "certificate", "stage": self.stage, "reason": self.reason, "quotient_dim": self.quotient_dim}
        if self.generator is not None:
            out["generator"] = self.generator
        if self.remainder is not None:
            out["char_poly_remainder"] = str(self.remainder)
        if self.reason == NO_COMMON_EIGENVECTOR:
            out["exhausted"] = self.exhausted
        if self.character is not None:
            out["character"] = self.character.to_json()
        out["quotient"] = {n: a.tolist() for n, a in zip(self.names, self.quotient)}
        return out


@dataclass(frozen=True)
class EigenSearch:
    found: bool
    vector: tuple | None = None
    eigenvalues: tuple | None = None
    reason: str | None = None
    generator: str | None = None
    remainder: object = None
    exhausted: int = 0


def _eigenspace(a: Matrix, r: Scalar) -> Subspace:
    return row_reduce(a - Matrix.identity(a.field, a.nrows).scale(r)).kernel


def _root_lists(fam: _Family, rng=None):
    """Per-matrix eigenvalue lists, or a search failure for a matrix without any."""
    lists = []
    for name, a in zip(fam.names, fam.mats):
        roots, rest = split_roots(char_poly(a))
        if not roots:
            return None, EigenSearch(False, reason=NO_EIGENVALUE, generator=name, remainder=rest)
        vals = [r for r, _ in roots]
        if rng is not None:
            rng.shuffle(vals)
        lists.append(vals)
    return lists, None


def common_eigenvector(m, rng=None) -> EigenSearch:
    """Depth-first search over eigenvalue tuples with kernel intersection.

    A branch is abandoned as soon as its intersection is zero; ``exhausted``
    counts the full-length tuples ruled out.  ``rng`` shuffles root orders.
    """
    fam = _family(m)
    if fam.dim == 0:
        raise EmptyDimension("a zero-dimensional space has no eigenvectors")
    if not fam.mats:
        e0 = tuple(fam.field.one if k == 0 else fam.field.zero for k in range(fam.dim))
        return EigenSearch(True, e0, ())
    lists, failure = _root_lists(fam, rng)
    if failure is not None:
        return failure
    cache: dict = {}

    def space(k, r):
        if (k, r) not in cache:
            cache[(k, r)] = _eigenspace(fam.mats[k], r)
        return cache[(k, r)]

    sizes = [len(v) for v in lists]
    tail = [1] * (len(sizes) + 1)
    for k in range(len(sizes) - 1, -1, -1):
        tail[k] = tail[k + 1] * sizes[k]
    exhausted = 0
    full = Subspace.full(fam.field, fam.dim)

    def dfs(k, cur, chosen):
        nonlocal exhausted
        if k == len(lists):
            return cur, tuple(chosen)
        for r in lists[k]:
            nxt = cur.intersect(space(k, r))
            if nxt.dim == 0:
                exhausted += tail[k + 1]
                continue
            hit = dfs(k + 1, nxt, chosen + [r])
            if hit is not None:
                return hit
        return None

    hit = dfs(0, full, [])
    if hit is None:
        return EigenSearch(False, reason=NO_COMMON_EIGENVECTOR, exhausted=exhausted)
    sub, vals = hit
    return EigenSearch(True, sub.basis[0], vals)


def joint_eigenspaces(m) -> list[tuple[tuple, Subspace]]:
    """Every nonzero joint eigenspace with its eigenvalue tuple, in search order."""
    fam = _family(m)
    if fam.dim == 0:
        return []
    if not fam.mats:
        return [((), Subspace.full(fam.field, fam.dim))]
    lists, failure = _root_lists(fam)
    if failure is not None:
        return []
    out = []

    def dfs(k, cur, chosen):
        if k == len(lists):
            out.append((tuple(chosen), cur))
            return
        for r in lists[k]:
            nxt = cur.intersect(_eigenspace(fam.mats[k], r))
            if nxt.dim:
                dfs(k + 1, nxt, chosen + [r])

    dfs(0, Subspace.full(fam.field, fam.dim), [])
    return out


@dataclass(frozen=True)
class TriangularizationResult:
    """Columns of ``transform`` span the flag from the bottom up."""

    transform: Matrix
    characters: tuple[Character, ...]
    strict: bool
    names: tuple[str, ...]

    def conjugated(self, mats: Sequence[Matrix]) -> list[Matrix]:
        inv = self.transform.inverse()
        return [inv @ a @ self.transform for a in mats]

    def character_multiset(self) -> list[tuple]:
        return sorted(c.key() for c in self.characters)

    def to_json(self) -> dict:
        return {
            "result": "flag",
            "strict": self.strict,
            "transform": self.transform.tolist(),
            "characters": [c.to_json() for c in self.characters],
        }


def verify_flag(res: TriangularizationResult, mats: Sequence[Matrix]) -> bool:
    """Conjugates are upper triangular with the recorded characters on the diagonal."""
    if res.transform.nrows and row_reduce(res.transform).rank != res.transform.nrows:
        return False
    for g, c in enumerate(res.conjugated(mats)):
        if not c.is_upper_triangular():
            return False
        if tuple(c.diagonal()) != tuple(ch.values[g] for ch in res.characters):
            return False
    return res.strict == all(ch.is_zero() for ch in res.characters)


def _certificate(fam: _Family, stage: int, quotient: Sequence[Matrix], qdim: int, search: EigenSearch | None, **extra):
    qfam = _with_mats(fam, quotient, qdim)
    kw = dict(generator=search.generator, remainder=search.remainder, exhausted=search.exhausted) if search else {}
    kw.update(extra)
    reason = kw.pop("reason", search.reason if search else None)
    return FailureCertificate(stage, reason, tuple(quotient), fam.names, witness_quotient=qfam.module, **kw)


def _build_flag(m, rng, strict: bool):
    fam = _family(m)
    field, d = fam.field, fam.dim
    flag: list = []
    chars: list = []
    w = Subspace.zero(field, d)
    for stage in range(d):
        quot = [quotient_action(a, w) for a in fam.mats]
        qdim = d - stage
        if strict:
            joint = Subspace.full(field, qdim)
            for a in quot:
                joint = joint.intersect(row_reduce(a).kernel)
            if joint.dim == 0:
                search = common_eigenvector(_with_mats(fam, quot, qdim), rng) if quot else None
                if search is not None and search.found:
                    ch = Character(fam.names, search.eigenvalues)
                    return _certificate(fam, stage, quot, qdim, None, reason=NONZERO_CHARACTER, character=ch)
                return _certificate(fam, stage, quot, qdim, search)
            q, vals = joint.basis[0], tuple(field.zero for _ in fam.mats)
        else:
            search = common_eigenvector(_with_mats(fam, quot, qdim), rng)
            if not search.found:
                return _certificate(fam, stage, quot, qdim, search)
            q, vals = search.vector, search.eigenvalues
        v = w.lift(q)
        flag.append(v)
        chars.append(Character(fam.names, vals))
        w = Subspace.span(field, d, flag)
    transform = Matrix.from_columns(field, flag, d) if d else Matrix.zeros(field, 0)
    res = TriangularizationResult(transform, tuple(chars), all(c.is_zero() for c in chars), fam.names)
    if not verify_flag(res, fam.mats):
        raise AssertionError("constructed flag failed its own verification")
    return res


def triangularize(m, rng=None) -> TriangularizationResult | FailureCertificate:
    """Grow a flag one common eigenvector of the current quotient at a time."""
    return _build_flag(m, rng, strict=False)


def strict_triangularize(m, rng=None) -> TriangularizationResult | FailureCertificate:
    """Like :func:`triangularize` but every layer must carry the zero character."""
    return _build_flag(m, rng, strict=True)


@dataclass(frozen=True)
class LoewySeries:
    layers: tuple[int, ...]
    subspaces: tuple[Subspace, ...]
    p_semiartinian: bool

    def to_json(self) -> dict:
        return {"layers": list(self.layers), "p_semiartinian": self.p_semiartinian}


def loewy_series(m) -> LoewySeries:
    """Iterated pointed socles: each layer is the sum of all joint eigenspaces of the quotient."""
    fam = _family(m)
    field, d = fam.field, fam.dim
    w = Subspace.zero(field, d)
    layers, subs = [], []
    while w.dim < d:
        quot = [quotient_action(a, w) for a in fam.mats]
        qfam = _with_mats(fam, quot, d - w.dim) if fam.mats else _Family(field, d - w.dim, (), fam.names, None)
        spaces = joint_eigenspaces(qfam)
        vecs = [w.lift(b) for _, s in spaces for b in s.basis]
        if not vecs:
            break
        new = w + Subspace.span(field, d, vecs)
        layers.append(new.dim - w.dim)
        subs.append(new)
        w = new
    return LoewySeries(tuple(layers), tuple(subs), w.dim == d)


def nilpotency_ladder(mats: Sequence[Matrix], bound: int | None = None) -> int | None:
    """Least ``N <= bound`` with every product of ``N`` matrices zero, else ``None``.

    ``S^1`` is the span of the matrices and ``S^(k+1)`` the span of ``a @ s``.
    """
    if isinstance(mats, FDModule):
        mats = mats.action
    mats = list(mats)
    if not mats:
        return 1
    field, d = mats[0].field, mats[0].nrows
    if bound is None:
        bound = d
    layer = _span_matrices(field, mats)
    for n in range(1, bound + 1):
        if not layer:
            return n
        if n == bound:
            break
        layer = _span_matrices(field, [a @ s for a in mats for s in layer])
    return None


def _span_matrices(field: Field, mats: Sequence[Matrix]) -> list[Matrix]:
    ech = EchelonBasis(field)
    return [a for a in mats if ech.add(a.flat())]


def weight_ladder_matrix(p: OrePresentation, level: int, lam: Sequence | Character, a: NCPoly, k: int) -> Matrix:
    """Predicted action of ``a`` on ``v, x v, ..., x^(k-1) v`` for ``x = x_level``.

    ``v`` is a weight vector of the generators below ``x`` with weight ``lam``.
    Uses ``a x = x sigma(a) + theta(a)`` from the left datum, so column ``i`` is
    ``F(a, i)`` with ``F(b, 0) = lam(b) e_0`` and
    ``F(b, i) = shift F(sigma(b), i - 1) + F(theta(b), i - 1)``.
    """
    if not p.has_left:
        raise MissingLeftDatum("the weight ladder needs the left datum")
    j = level - 1
    if not 0 <= j < p.n:
        raise ValueError(f"level must be between 1 and {p.n}")
    values = tuple(lam.values if isinstance(lam, Character) else (p.field(x) for x in lam))
    if len(values) < j:
        raise ValueError(f"a weight needs values on the {j} generators below {p.names[j]}")
    values = values[:j] + (p.field.zero,) * (p.n - j)
    if any(g >= j for g in a.support()):
        raise ValueError(f"a must only involve generators below {p.names[j]}")
    field = p.field
    memo: dict = {}
    sig_memo: dict = {}
    th_memo: dict = {}

    def sig(b):
        if b not in sig_memo:
            sig_memo[b] = p.sigma(j, b, side="left")
        return sig_memo[b]

    def th(b):
        if b not in th_memo:
            th_memo[b] = p.theta(j, b, side="left")
        return th_memo[b]

    def f(b: NCPoly, i: int) -> tuple:
        key = (b, i)
        if key in memo:
            return memo[key]
        if i == 0:
            out = (evaluate_character(values, b),) + (field.zero,) * (k - 1)
        else:
            s = f(sig(b), i - 1)
            t = f(th(b), i - 1)
            shifted = (field.zero,) + s[:-1]
            out = tuple(x + y for x, y in zip(shifted, t))
        memo[key] = out
        return out

    cols = [f(a, i) for i in range(k)]
    return Matrix.from_columns(field, cols, k) if k else Matrix.zeros(field, 0)
