import pytest

from gaudinlab.liealg import build_algebra
from gaudinlab.loopsym import classical_generators
from gaudinlab.pbw import PBWPoly
from gaudinlab.talalaev import (DiffPoly, all_commute, antisymmetrizer,
                                build_L, check_pairwise_commute, compute_Q,
                                op_multiply)


def _const(alg, c, zmax):
    return DiffPoly.const(alg, c, zmax=zmax)


def test_weyl_relation():
    alg = build_algebra("gl", 2)
    one = PBWPoly.const(alg, 1)
    d = DiffPoly.from_pbw(one, zmax=5, dpow=1)
    z = DiffPoly.from_pbw(one, zmax=5, zpow=1)
    assert d * z == z * d + _const(alg, 1, 5)
    # d^2 z^2 = z^2 d^2 + 4 z d + 2
    lhs = d * d * z * z
    rhs = z * z * d * d + 4 * (z * d) + _const(alg, 2, 5)
    assert lhs == rhs


def test_truncation_flag():
    alg = build_algebra("gl", 2)
    one = PBWPoly.const(alg, 1)
    d = DiffPoly.from_pbw(one, zmax=0, dpow=1)
    z_part = DiffPoly.from_pbw(one, zmax=0, zpow=0)
    prod = d * (DiffPoly.from_pbw(one, zmax=0) * z_part)
    assert not prod.truncated
    # multiplying past the z cutoff drops terms and records it
    zd = DiffPoly.from_pbw(one, zmax=1, zpow=1, dpow=1)
    out = zd * zd
    assert out.truncated
    # z d z d = z^2 d^2 + z d; the z^2 part falls past the cutoff
    assert out.coeff(1, 1) == one
    assert out.coeff(2, 2) == PBWPoly.zero(alg)


def test_mixed_cutoffs_rejected():
    alg = build_algebra("gl", 2)
    one = PBWPoly.const(alg, 1)
    a = DiffPoly.from_pbw(one, zmax=2)
    b = DiffPoly.from_pbw(one, zmax=3)
    with pytest.raises(ValueError):
        a + b


def test_operator_matrix_trace():
    alg = build_algebra("gl", 2)
    L = build_L(alg, cutoff=3)
    tr = L.trace()
    for n in (1, 2, 3):
        diag = tr.coeff(0, n - 1)
        expected = (PBWPoly.gen(alg, alg.index("E[1,1]"), n)
                    + PBWPoly.gen(alg, alg.index("E[2,2]"), n))
        assert diag == expected


def test_antisymmetrizer_is_a_projector():
    alg = build_algebra("gl", 2)
    one = PBWPoly.const(alg, 1)
    for r in (2, 3):
        a = antisymmetrizer(r, alg)
        assert op_multiply(a, a) == a
        assert a.trace().coeff(0, 0) == one


def test_q_family_frozen_values():
    alg = build_algebra("gl", 2)
    fam = compute_Q(alg, 2)
    e11 = alg.index("E[1,1]")
    e22 = alg.index("E[2,2]")
    for n in (1, 2):
        assert fam.q[(n, 1)] == -(PBWPoly.gen(alg, e11, n)
                                  + PBWPoly.gen(alg, e22, n))
    # the k = 2 member mixes a depth-2 linear term into the determinant
    e12, e21 = alg.index("E[1,2]"), alg.index("E[2,1]")
    expected = (PBWPoly.gen(alg, e11, 1) * PBWPoly.gen(alg, e22, 1)
                - PBWPoly.gen(alg, e12, 1) * PBWPoly.gen(alg, e21, 1)
                - PBWPoly.gen(alg, e22, 2))
    assert fam.q[(1, 2)] == expected


def test_q_family_grading():
    alg = build_algebra("gl", 3)
    fam = compute_Q(alg, 2)
    assert set(fam.q) == {(n, k) for n in (1, 2) for k in (1, 2, 3)}
    for (n, k), q in fam.items():
        assert q.is_weight_homogeneous() == n + k - 1
        assert q.degree() <= k


def test_pairwise_commutation_small():
    alg = build_algebra("gl", 2)
    fam = compute_Q(alg, 3)
    report = check_pairwise_commute(fam)
    assert all_commute(report)
    assert all(row["zero"] for row in report)


def test_cutoff_independence():
    alg = build_algebra("gl", 2)
    base = compute_Q(alg, 2)
    wide = compute_Q(alg, 2, cutoff=6)
    assert base.q == wide.q


def test_symbols_match_classical_small():
    alg = build_algebra("gl", 2)
    fam = compute_Q(alg, 3)
    gens = classical_generators(alg, 3)
    for (n, k), q in fam.items():
        assert q.gr_top() == gens[(k, n)]
