import pickle

import pytest

from gaudinlab.liealg import build_algebra, dual_basis, principal_triple

ALGEBRAS = [("sl", 2), ("gl", 2), ("sl", 3), ("gl", 3)]


def test_dimensions():
    assert build_algebra("gl", 2).dim == 4
    assert build_algebra("sl", 2).dim == 3
    assert build_algebra("gl", 3).dim == 9
    assert build_algebra("sl", 3).dim == 8


def test_interning_and_pickle():
    assert build_algebra("sl", 2) is build_algebra("sl", 2)
    assert build_algebra("sl", 2) is not build_algebra("gl", 2)
    alg = build_algebra("sl", 3)
    assert pickle.loads(pickle.dumps(alg)) is alg


@pytest.mark.parametrize("kind,rank", ALGEBRAS)
def test_bracket_antisymmetry(kind, rank):
    alg = build_algebra(kind, rank)
    basis = [alg.basis_element(a) for a in range(alg.dim)]
    for x in basis:
        for y in basis:
            assert x.bracket(y) == -(y.bracket(x))


@pytest.mark.parametrize("kind,rank", [("sl", 2), ("gl", 2), ("sl", 3)])
def test_jacobi(kind, rank):
    alg = build_algebra(kind, rank)
    basis = [alg.basis_element(a) for a in range(alg.dim)]
    for x in basis:
        for y in basis:
            for z in basis:
                s = (x.bracket(y.bracket(z)) + y.bracket(z.bracket(x))
                     + z.bracket(x.bracket(y)))
                assert not s


@pytest.mark.parametrize("kind,rank", ALGEBRAS)
def test_form_invariant(kind, rank):
    alg = build_algebra(kind, rank)
    basis = [alg.basis_element(a) for a in range(alg.dim)]
    for x in basis:
        for y in basis:
            for z in basis:
                assert x.bracket(y).pair(z) == x.pair(y.bracket(z))


@pytest.mark.parametrize("kind,rank", ALGEBRAS)
def test_dual_basis_delta(kind, rank):
    alg = build_algebra(kind, rank)
    pairs = dual_basis(alg)
    assert len(pairs) == alg.dim
    for i, (x, _) in enumerate(pairs):
        for j, (_, yd) in enumerate(pairs):
            assert x.pair(yd) == (1 if i == j else 0)


@pytest.mark.parametrize("rank", [2, 3])
def test_principal_triple_relations(rank):
    t = principal_triple(build_algebra("sl", rank))
    assert t.e.bracket(t.f) == t.h
    assert t.h.bracket(t.e) == 2 * t.e
    assert t.h.bracket(t.f) == (-2) * t.f


def test_principal_triple_is_sl_only():
    with pytest.raises(ValueError):
        principal_triple(build_algebra("gl", 2))


@pytest.mark.parametrize("rank", [2, 3])
def test_centralizer_of_f_basis(rank):
    alg = build_algebra("sl", rank)
    t = principal_triple(alg)
    # z(f) for a regular nilpotent in sl_r has dimension r - 1
    assert len(t.zf_basis) == rank - 1
    for z in t.zf_basis:
        assert not t.f.bracket(z)
    assert len(t.zf_basis) + len(t.v_basis) == alg.dim


def test_sl2_pairings():
    alg = build_algebra("sl", 2)
    t = principal_triple(alg)
    assert t.e.pair(t.f) == 1
    assert t.h.pair(t.h) == 2
    assert t.e.pair(t.e) == 0
    assert t.e.pair(t.h) == 0


def test_coords_roundtrip():
    alg = build_algebra("gl", 2)
    for a in range(alg.dim):
        x = alg.basis_element(a)
        assert alg.coords(x.as_matrix()) == {a: 1}
