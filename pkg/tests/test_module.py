import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import GF5, rand_invertible, rand_matrix
from oreflag.corpus import MODULES, builtin_module, builtin_presentation
from oreflag.field import QQ, UniPoly
from oreflag.linalg import Matrix, NotInvariant, Subspace, char_poly
from oreflag.module import (
    FDModule,
    InfiniteDimensional,
    PresentationMismatch,
    SizeMismatch,
    check_module,
    evaluate,
    generated_algebra_basis,
    load_module,
    module_from_json,
    module_to_json,
    quotient_module,
    regular_module,
    save_module,
    submodule_closure,
)
from oreflag.presentation import parse_presentation


def q(rows):
    return Matrix(QQ, rows)


@pytest.fixture
def qplane_module():
    return FDModule(builtin_presentation("qplane-q2"), [q([[1, 0], [0, 2]]), q([[0, 1], [0, 0]])])


def test_evaluate_generators_and_unit(qplane_module):
    p = qplane_module.presentation
    assert evaluate(p.gen(1), qplane_module) == qplane_module["y"]
    assert evaluate(p.const(), qplane_module) == Matrix.identity(QQ, 2)


def test_evaluate_rewritten_word(qplane_module):
    p = qplane_module.presentation
    mx, my = qplane_module.action
    got = evaluate(p.normal_form(["y", "x"]), qplane_module)
    assert got == q([[0, 2], [0, 0]]) == my @ mx == (mx @ my).scale(2)


def test_evaluate_rejects_other_presentation(qplane_module):
    other = builtin_presentation("heisenberg")
    with pytest.raises(PresentationMismatch):
        evaluate(other.gen(0), qplane_module)


def test_relation_checks(qplane_module):
    assert check_module(qplane_module).ok and qplane_module.verified
    ident = Matrix.identity(QQ, 2)
    bad = FDModule(qplane_module.presentation, [ident, ident])
    rep = check_module(bad)
    assert not rep.ok and not bad.verified
    assert rep.failures[0].lhs == ident and rep.failures[0].rhs == ident.scale(2)
    zero = Matrix.zeros(QQ, 3)
    assert FDModule(builtin_presentation("heisenberg"), [zero] * 3).verified


def test_size_checks():
    p = builtin_presentation("qplane-q2")
    with pytest.raises(SizeMismatch):
        FDModule(p, [Matrix.identity(QQ, 2)])
    with pytest.raises(SizeMismatch):
        FDModule(p, [Matrix.identity(QQ, 2), Matrix.identity(QQ, 3)])


def test_closure_examples(qplane_module):
    assert submodule_closure(qplane_module, [(0, 0)]).dim == 0
    assert submodule_closure(qplane_module, [(0, 1)]) == Subspace.full(QQ, 2)
    assert submodule_closure(qplane_module, [(1, 0)]) == Subspace.span(QQ, 2, [(1, 0)])


def test_quotient_examples(qplane_module):
    same = quotient_module(qplane_module, Subspace.zero(QQ, 2))
    assert same.action == qplane_module.action
    assert quotient_module(qplane_module, Subspace.full(QQ, 2)).dim == 0
    top = quotient_module(qplane_module, Subspace.span(QQ, 2, [(1, 0)]))
    assert top.dim == 1 and top.action == (q([[2]]), q([[0]])) and top.verified
    with pytest.raises(NotInvariant):
        quotient_module(qplane_module, Subspace.span(QQ, 2, [(0, 1)]))


def test_regular_modules():
    nil = regular_module(parse_presentation("field Q\ngens x\npower x 2 = 0\n"))
    assert nil.dim == 2 and nil.action[0] == q([[0, 0], [1, 0]])
    s3 = regular_module(builtin_presentation("s3"))
    assert s3.dim == 6 and s3.verified
    # r acts by a permutation of order three without fixed points
    t3 = UniPoly(QQ, [-1, 0, 0, 1])
    assert char_poly(s3["r"]) == UniPoly(QQ, [1, 0, 0, -2, 0, 0, 1])
    assert char_poly(s3["r"]) == _mul(t3, t3)
    with pytest.raises(InfiniteDimensional) as info:
        regular_module(builtin_presentation("qplane-q2"))
    assert tuple(info.value.unbounded) == ("x", "y")


def _mul(a, b):
    out = [a.field.zero] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            out[i + j] += x * y
    return UniPoly(a.field, out)


def test_generated_basis_examples():
    assert generated_algebra_basis([], QQ, 3) == [Matrix.identity(QQ, 3)]
    n = q([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert generated_algebra_basis([n]) == [Matrix.identity(QQ, 3), n, n @ n]
    e12, e21 = Matrix.unit(QQ, 2, 0, 1), Matrix.unit(QQ, 2, 1, 0)
    assert len(generated_algebra_basis([e12, e21])) == 4
    with pytest.raises(SizeMismatch):
        generated_algebra_basis([e12, n])


def _random_poly(p, rng):
    out = p.zero()
    for _ in range(rng.randint(0, 3)):
        exps = tuple(rng.randint(0, 2) for _ in range(p.n))
        out = out + p.monomial(exps, p.field(rng.randint(-3, 3)))
    return out


def _verified_modules():
    mods = [builtin_module(name) for name in sorted(MODULES)]
    mods.append(regular_module(builtin_presentation("s3")))
    mods.append(regular_module(builtin_presentation("s3-gf7")))
    return mods


MODS = _verified_modules()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(MODS) - 1), st.integers(0, 10**9))
def test_homomorphism_law(k, seed):
    m = MODS[k]
    assert m.verified
    p = m.presentation
    rng = random.Random(seed)
    a, b = _random_poly(p, rng), _random_poly(p, rng)
    assert evaluate(p.mul(a, b), m) == evaluate(a, m) @ evaluate(b, m)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_regular_representation_is_faithful(seed):
    m = MODS[-2]
    p = m.presentation
    rng = random.Random(seed)
    a = p.zero()
    for mono in p.normal_monomials():
        if rng.random() < 0.4:
            a = a + p.monomial(mono, rng.randint(-2, 2))
    assert evaluate(a, m).is_zero() == a.is_zero()
    # the image of a applied to the unit recovers its coordinates
    col = evaluate(a, m).col(0)
    assert col == tuple(a.coefficient(mono) for mono in p.normal_monomials())


def _brute_closure(mats, seeds, field, dim):
    vecs = []
    for length in range(dim + 1):
        for word in itertools.product(range(len(mats)), repeat=length):
            for s in seeds:
                v = s
                for g in word:
                    v = mats[g].apply(v)
                vecs.append(v)
    return Subspace.span(field, dim, vecs)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 4), st.sampled_from([QQ, GF5]))
def test_closure_matches_word_span(seed, dim, field):
    rng = random.Random(seed)
    names = " ".join(f"g{i}" for i in range(2))
    src = f"field {field.dsl()}\ngens {names}\n"
    p = parse_presentation(src)
    mats = [rand_matrix(field, dim, rng, 1, density=0.4) for _ in range(2)]
    m = FDModule(p, mats)
    seeds = [rand_matrix(field, dim, rng, 1).col(0)]
    w = submodule_closure(m, seeds)
    assert all(w.contains(s) for s in seeds)
    assert all(w.invariance_witness(a) is None for a in mats)
    assert w == _brute_closure(mats, seeds, field, dim)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 4), st.sampled_from([QQ, GF5]))
def test_generated_basis_dimension_is_conjugation_invariant(seed, dim, field):
    rng = random.Random(seed)
    mats = [rand_matrix(field, dim, rng, 1, density=0.5) for _ in range(rng.randint(1, 2))]
    basis = generated_algebra_basis(mats)
    assert len(basis) <= dim * dim
    g = rand_invertible(field, dim, rng)
    assert len(generated_algebra_basis([a.conjugate(g) for a in mats])) == len(basis)
    # closed under multiplication by generators
    span = Subspace.span(field, dim * dim, [b.flat() for b in basis])
    for a in mats:
        for b in basis:
            assert span.contains((a @ b).flat())


def test_json_round_trip(tmp_path, qplane_module):
    path = tmp_path / "m.json"
    save_module(qplane_module, path, "qplane-q2")
    back = load_module(path)
    assert back.action == qplane_module.action and back.verified
    data = module_to_json(qplane_module)
    back = module_from_json(json.loads(json.dumps(data)))
    assert back.presentation.names == ("x", "y") and back.action == qplane_module.action


def test_json_over_prime_field():
    p = builtin_presentation("qplane-gf5")
    m = FDModule(p, [Matrix.diag(GF5, [1, 2]), Matrix.unit(GF5, 2, 0, 1)])
    data = module_to_json(m, "qplane-gf5")
    assert data["action"]["x"] == [[1, 0], [0, 2]]
    assert module_from_json(data).action == m.action
