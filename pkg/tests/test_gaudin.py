import random
from fractions import Fraction

import pytest

from gaudinlab.liealg import build_algebra, dual_basis
from gaudinlab.loopsym import pack
from gaudinlab.pbw import PBWPoly
from gaudinlab.gaudin import (SiteConfig, TensorPoly, evaluate, global_element,
                              joint_diagonalizable, quadratic_hamiltonian,
                              rep_matrix, spectrum)

F = Fraction


def _poly_mul(a, b):
    out = [F(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_site_config_validation():
    with pytest.raises(ValueError):
        SiteConfig([F(1), F(1)])
    with pytest.raises(ValueError):
        SiteConfig([F(0), F(1)])
    assert SiteConfig([F(1), F(1, 2)]).n == 2


def test_sites_commute():
    alg = build_algebra("sl", 2)
    e, h = alg.basis_element(0), alg.basis_element(1)
    a = TensorPoly.site_element(e, 1, 3)
    b = TensorPoly.site_element(h, 2, 3)
    assert not a.commutator(b)
    # within a site the commutator is the bracket
    c = TensorPoly.site_element(h, 1, 3)
    assert a.commutator(c) == TensorPoly.site_element(e.bracket(h), 1, 3)


def test_evaluate_on_generators():
    alg = build_algebra("sl", 2)
    cfg = SiteConfig([F(1), F(2)])
    h = alg.basis_element(1)
    img = evaluate(PBWPoly.from_lie(h, 2), cfg)
    expected = (TensorPoly.site_element(h, 1, 2)
                + F(1, 4) * TensorPoly.site_element(h, 2, 2))
    assert img == expected


def test_evaluate_is_a_homomorphism():
    alg = build_algebra("sl", 2)
    cfg = SiteConfig([F(1), F(-2), F(1, 3)])
    rng = random.Random(401)
    for _ in range(10):
        u = PBWPoly.zero(alg)
        v = PBWPoly.zero(alg)
        for _ in range(2):
            gu = pack(rng.randint(1, 3), rng.randrange(alg.dim))
            gv = pack(rng.randint(1, 3), rng.randrange(alg.dim))
            u = u + rng.randint(-2, 2) * PBWPoly.gen(alg, gu & 63, gu >> 6)
            v = v + rng.randint(-2, 2) * PBWPoly.gen(alg, gv & 63, gv >> 6)
        assert evaluate(u * v, cfg) == evaluate(u, cfg) * evaluate(v, cfg)
        assert evaluate(u.commutator(v), cfg) == evaluate(u, cfg).commutator(
            evaluate(v, cfg))


def test_two_site_hamiltonian_formula():
    alg = build_algebra("gl", 2)
    cfg = SiteConfig([F(1), F(2)])
    h1 = quadratic_hamiltonian(cfg, 1, alg)
    expected = TensorPoly.zero(alg, 2)
    for x, xd in dual_basis(alg):
        term = TensorPoly.site_element(x, 1, 2) * TensorPoly.site_element(xd, 2, 2)
        expected = expected + (-1) * term
    assert h1 == expected
    h2 = quadratic_hamiltonian(cfg, 2, alg)
    assert not (h1 + h2)


@pytest.mark.parametrize("kind", ["sl", "gl"])
def test_three_site_commutation(kind):
    alg = build_algebra(kind, 2)
    cfg = SiteConfig([F(1), F(1, 2), F(-3)])
    hams = [quadratic_hamiltonian(cfg, i, alg) for i in (1, 2, 3)]
    total = hams[0] + hams[1] + hams[2]
    assert not total
    for i in range(3):
        for j in range(i + 1, 3):
            assert not hams[i].commutator(hams[j])


def test_global_invariance():
    alg = build_algebra("sl", 2)
    cfg = SiteConfig([F(1), F(2), F(4)])
    hams = [quadratic_hamiltonian(cfg, i, alg) for i in (1, 2, 3)]
    for a in range(alg.dim):
        dx = global_element(alg.basis_element(a), 3)
        for h in hams:
            assert not h.commutator(dx)


def test_rep_matrix_is_a_representation():
    alg = build_algebra("gl", 2)
    rng = random.Random(402)
    for _ in range(8):
        terms = []
        for _ in range(2):
            x = alg.basis_element(rng.randrange(alg.dim))
            terms.append(TensorPoly.site_element(x, rng.randint(1, 2), 2))
        u = terms[0] + terms[1]
        v = terms[0] * terms[1]
        assert rep_matrix(u * v) == rep_matrix(u) * rep_matrix(v)
        assert rep_matrix(u.commutator(v)) == (
            rep_matrix(u) * rep_matrix(v) - rep_matrix(v) * rep_matrix(u))


def test_rep_matrix_size_guard():
    alg = build_algebra("gl", 2)
    t = TensorPoly.site_element(alg.basis_element(0), 1, 3)
    with pytest.raises(ValueError):
        rep_matrix(t, max_size=4)


def test_two_site_sl2_spectrum():
    alg = build_algebra("sl", 2)
    cfg = SiteConfig([F(1), F(2)])
    m = rep_matrix(quadratic_hamiltonian(cfg, 1, alg))
    sp = spectrum(m)
    assert sp["size"] == 4
    assert sp["rational"] == [(F(-1, 2), 3), (F(3, 2), 1)]
    assert sp["residual"] == [F(1)]
    assert sp["diagonalizable"]


def test_three_site_gl2_spectrum():
    alg = build_algebra("gl", 2)
    cfg = SiteConfig([F(1), F(2), F(4)])
    mats = [rep_matrix(quadratic_hamiltonian(cfg, i, alg)) for i in (1, 2, 3)]
    assert joint_diagonalizable(mats)
    sp = spectrum(mats[0])
    assert sp["size"] == 8
    assert sp["rational"] == [(F(-4, 3), 4)]
    # the remaining factor is (x^2 - 7/9)^2, eigenvalues +-sqrt(7)/3
    assert sp["residual"] == _poly_mul([F(1), F(0), F(-7, 9)],
                                       [F(1), F(0), F(-7, 9)])
    assert sp["diagonalizable"]
    floats = sorted(round(x, 6) for x in sp["residual_roots_float"]
                    if isinstance(x, float))
    assert floats == [-0.881917, -0.881917, 0.881917, 0.881917]
