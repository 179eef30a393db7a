import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import GF5, GF7, ladder_matrices, rand_flagged, rand_invertible, rand_system
from oreflag.corpus import MODULES, builtin_module, builtin_presentation
from oreflag.field import QQ
from oreflag.linalg import Matrix, Subspace
from oreflag.module import FDModule, evaluate, regular_module
from oreflag.presentation import MissingLeftDatum, parse_presentation
from oreflag.triangularize import (
    NO_COMMON_EIGENVECTOR,
    NO_EIGENVALUE,
    NONZERO_CHARACTER,
    Character,
    EmptyDimension,
    FailureCertificate,
    TriangularizationResult,
    common_eigenvector,
    joint_eigenspaces,
    loewy_series,
    nilpotency_ladder,
    strict_triangularize,
    triangularize,
    verify_flag,
    weight_ladder_matrix,
)


def q(rows):
    return Matrix(QQ, rows)


H = q([[1, 0], [0, -1]])
E = q([[0, 1], [0, 0]])
X = q([[0, 1], [1, 0]])
Y = q([[1, 0], [0, -1]])


def unit(i, j, n=3):
    return Matrix.unit(QQ, n, i, j)


def test_single_diagonal_matrix():
    s = common_eigenvector([q([[1, 0], [0, 2]])])
    assert s.found and s.vector == (1, 0) and s.eigenvalues == (1,)


def test_borel_pair_eigenvector():
    s = common_eigenvector([H, E])
    assert s.found and s.vector == (1, 0) and s.eigenvalues == (1, 0)


def test_anticommuting_pair_has_no_eigenvector():
    s = common_eigenvector([X, Y])
    assert not s.found and s.reason == NO_COMMON_EIGENVECTOR and s.exhausted == 4


def test_empty_dimension():
    with pytest.raises(EmptyDimension):
        common_eigenvector([Matrix.zeros(QQ, 0)])


def test_borel_natural_module_flag():
    res = triangularize(builtin_module("borel-nat"))
    assert isinstance(res, TriangularizationResult)
    assert [str(c) for c in res.characters] == ["(h:1, e:0)", "(h:-1, e:0)"]
    assert not res.strict


def test_anticommuting_pair_certificate():
    cert = triangularize([X, Y])
    assert isinstance(cert, FailureCertificate)
    assert cert.stage == 0 and cert.reason == NO_COMMON_EIGENVECTOR and cert.quotient_dim == 2


def test_triangular_commuting_pair_keeps_basis():
    a = q([[1, 2], [0, 3]])
    b = q([[2, 0], [0, 2]])
    res = triangularize([a, b])
    assert res.transform == Matrix.identity(QQ, 2)


def test_regular_s3_is_obstructed():
    cert = triangularize(regular_module(builtin_presentation("s3")))
    assert isinstance(cert, FailureCertificate)
    assert cert.reason == NO_EIGENVALUE and cert.quotient_dim >= 2
    # two copies of the two-dimensional simple, where r has char poly t^2 + t + 1
    assert cert.quotient_dim == 4
    assert str(cert.remainder) == "t^4 + 2*t^3 + 3*t^2 + 2*t + 1"
    again = triangularize(cert.witness_quotient)
    assert isinstance(again, FailureCertificate) and again.reason == cert.reason and again.stage == 0


def test_regular_s3_over_gf7():
    # t^2 + t + 1 splits mod 7, yet the two-dimensional simple stays simple
    cert = triangularize(regular_module(builtin_presentation("s3-gf7")))
    assert isinstance(cert, FailureCertificate) and cert.reason == NO_COMMON_EIGENVECTOR
    assert cert.quotient_dim >= 2


def test_strict_examples():
    res = strict_triangularize(builtin_module("heisenberg3"))
    assert isinstance(res, TriangularizationResult) and res.strict
    assert all(c.is_zero() for c in res.characters)
    # joint kernels e1, then e1 + e2
    assert Subspace.span(QQ, 3, res.transform.columns()[:1]) == Subspace.span(QQ, 3, [(1, 0, 0)])
    assert Subspace.span(QQ, 3, res.transform.columns()[:2]) == Subspace.span(QQ, 3, [(1, 0, 0), (0, 1, 0)])
    cert = strict_triangularize(builtin_module("borel-nat"))
    assert cert.reason == NONZERO_CHARACTER and str(cert.character) == "(h:1, e:0)"
    zero = strict_triangularize([Matrix.zeros(QQ, 2)])
    assert zero.strict and len(zero.characters) == 2


def test_loewy_examples():
    assert loewy_series([q([[0, 1, 0], [0, 0, 1], [0, 0, 0]])]).layers == (1, 1, 1)
    assert loewy_series([Matrix.diag(QQ, [1, 2, 3])]).layers == (3,)
    s = loewy_series([X, Y])
    assert s.layers == () and not s.p_semiartinian


def test_nilpotency_examples():
    assert nilpotency_ladder(builtin_module("heisenberg3").action) == 3
    assert nilpotency_ladder([unit(0, 1, 2), unit(1, 0, 2)]) is None
    assert nilpotency_ladder([Matrix.zeros(QQ, 2)] * 2) == 1


def test_weight_ladder_examples():
    borel = builtin_presentation("borel")
    c = Fraction(5)
    assert weight_ladder_matrix(borel, 2, [c], borel.gen(0), 3) == Matrix.diag(QQ, [5, 7, 9])
    qp = builtin_presentation("qplane-q2")
    assert weight_ladder_matrix(qp, 2, [1], qp.gen(0), 3) == Matrix.diag(QQ, [1, Fraction(1, 2), Fraction(1, 4)])
    comm = builtin_presentation("commutative2")
    assert weight_ladder_matrix(comm, 2, [3], comm.gen(0), 4) == Matrix.diag(QQ, [3] * 4)
    with pytest.raises(MissingLeftDatum):
        weight_ladder_matrix(parse_presentation("field Q\ngens x y\n"), 2, [1], comm.gen(0), 2)


def test_heisenberg_ladder_has_off_diagonal_terms():
    # x y = y x + z, so x y^i v = y^i x v + i y^(i-1) z v: column i carries i lam(z) above the diagonal
    p = builtin_presentation("heisenberg")
    m = weight_ladder_matrix(p, 3, [2, 1], p.gen(1), 3)
    assert m == q([[1, 2, 0], [0, 1, 4], [0, 0, 1]])


def test_certificate_json():
    cert = triangularize([X, Y])
    data = cert.to_json()
    assert data["reason"] == NO_COMMON_EIGENVECTOR and data["exhausted"] == 4 and data["stage"] == 0


# properties

seeds = st.integers(0, 10**9)
fields = st.sampled_from([QQ, GF5, GF7])


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 5), fields)
def test_results_verify_themselves(seed, n, field):
    mats = rand_system(field, n, random.Random(seed))
    for res in (triangularize(mats), strict_triangularize(mats)):
        if isinstance(res, TriangularizationResult):
            assert verify_flag(res, mats)
        else:
            # the certificate quotient really has no admissible vector
            again = (strict_triangularize if res.reason == NONZERO_CHARACTER else triangularize)(res.quotient)
            assert isinstance(again, FailureCertificate) and again.reason == res.reason


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5), fields)
def test_flagged_families_triangularize(seed, n, field):
    rng = random.Random(seed)
    mats = rand_flagged(field, n, rng.randint(1, 3), rng)
    res = triangularize(mats)
    assert isinstance(res, TriangularizationResult)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5), fields)
def test_character_multiset_is_invariant(seed, n, field):
    rng = random.Random(seed)
    mats = rand_flagged(field, n, rng.randint(1, 3), rng)
    base = triangularize(mats).character_multiset()
    g = rand_invertible(field, n, rng)
    assert triangularize([a.conjugate(g) for a in mats]).character_multiset() == base
    assert triangularize(mats, rng=random.Random(seed + 1)).character_multiset() == base


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 5), fields)
def test_three_way_equivalence(seed, n, field):
    mats = rand_system(field, n, random.Random(seed))
    strict = isinstance(strict_triangularize(mats), TriangularizationResult)
    nil = nilpotency_ladder(mats, n) is not None
    res = triangularize(mats)
    zero = isinstance(res, TriangularizationResult) and all(c.is_zero() for c in res.characters)
    assert strict == nil == zero


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 5), fields)
def test_loewy_series_matches_triangularizability(seed, n, field):
    mats = rand_system(field, n, random.Random(seed))
    s = loewy_series(mats)
    ok = isinstance(triangularize(mats), TriangularizationResult)
    assert (sum(s.layers) == n) == ok == s.p_semiartinian
    assert len(s.layers) <= n
    # every layer is invariant
    for w in s.subspaces:
        assert all(w.invariance_witness(a) is None for a in mats)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 4), fields)
def test_joint_eigenspaces_are_joint_eigenspaces(seed, n, field):
    mats = rand_system(field, n, random.Random(seed))
    spaces = joint_eigenspaces(mats)
    for vals, w in spaces:
        for v in w.basis:
            for a, lam in zip(mats, vals):
                assert a.apply(v) == tuple(lam * x for x in v)
    assert common_eigenvector(mats).found == bool(spaces)


def _homogeneous_nilpotent(seed, n, field):
    rng = random.Random(seed)
    return rand_flagged(field, n, rng.randint(1, 3), rng, strict=True)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 5), fields)
def test_strict_success_means_zero_characters(seed, n, field):
    mats = _homogeneous_nilpotent(seed, n, field)
    res = strict_triangularize(mats)
    assert isinstance(res, TriangularizationResult) and res.strict
    assert triangularize(mats).character_multiset() == [tuple("0" for _ in mats)] * n


def _ladder_module(pres, c, k):
    return FDModule(builtin_presentation(pres), ladder_matrices(QQ, "borel" if pres == "borel" else "qplane", c, k))


def _ladder_pool():
    pool = [builtin_module(n) for n in sorted(MODULES)]
    pool += [_ladder_module("borel", Fraction(c), k) for c, k in [(0, 3), (-3, 4), (Fraction(1, 2), 2)]]
    pool += [_ladder_module("qplane-q2", Fraction(c), k) for c, k in [(1, 3), (3, 4)]]
    return pool


@pytest.mark.parametrize("module", _ladder_pool(), ids=repr)
def test_weight_ladder_predicts_real_action(module):
    p = module.presentation
    assert module.verified and p.has_left
    rng = random.Random(7)
    checked = 0
    for level in range(2, p.n + 1):
        j = level - 1
        lower = list(module.action[:j])
        x = module.action[j]
        for vals, w in joint_eigenspaces(lower):
            for v in w.basis:
                krylov = [v]
                while Subspace.span(module.field, module.dim, krylov + [x.apply(krylov[-1])]).dim > len(krylov):
                    krylov.append(x.apply(krylov[-1]))
                k = len(krylov)
                basis = Matrix.from_columns(module.field, krylov, module.dim)
                span = Subspace.span(module.field, module.dim, krylov)
                polys = [p.gen(i) for i in range(j)]
                polys.append(sum((p.gen(rng.randrange(j), rng.randint(-2, 2)) for _ in range(2)), p.const(3)))
                for a in polys:
                    act = evaluate(a, module)
                    cols = []
                    for b in krylov:
                        img = act.apply(b)
                        assert span.contains(img)
                        cols.append(_coords(basis, img))
                    actual = Matrix.from_columns(module.field, cols, k)
                    assert weight_ladder_matrix(p, level, vals, a, k) == actual
                    checked += 1
    assert checked


def _coords(basis, v):
    from oreflag.linalg import row_reduce

    aug = Matrix(basis.field, [list(r) + [x] for r, x in zip(basis.rows, v)], basis.ncols + 1)
    red = row_reduce(aug)
    out = [basis.field.zero] * basis.ncols
    for i, piv in enumerate(red.pivots):
        out[piv] = red.rref[i, basis.ncols]
    return tuple(out)


def test_character_helpers():
    ch = Character.from_mapping(QQ, ["h", "e"], {"h": "1/2", "e": 0})
    assert ch["h"] == Fraction(1, 2) and ch.restrict(1).names == ("h",)
    assert ch.to_json() == {"h": "1/2", "e": "0"}
