from fractions import Fraction

from gaudinlab.liealg import principal_triple
from gaudinlab.loopsym import (SymPoly, apply_phi_s, casimir,
                               classical_generators, d_t, project_pi)
from gaudinlab.pbw import PBWPoly, symmetrize
from gaudinlab.centralizer import (ComponentIndex, ad_kernel_classical,
                                   ad_kernel_quantum, cartan_component_dim,
                                   free_product_count, in_span,
                                   invariant_subspace, quantum_expected_dim,
                                   subalgebra_dim, verify_slice_identities)


def _partitions_into(w, d):
    # partitions of w with exactly d parts
    if d == 0:
        return 1 if w == 0 else 0
    if w < d:
        return 0
    return _partitions_into(w - 1, d - 1) + _partitions_into(w - d, d)


def test_classical_kernel_small_grid(sl2):
    gens = classical_generators(sl2, 8)
    s1 = casimir(sl2)
    for d in range(1, 4):
        for w in range(d, 7):
            idx = ComponentIndex(d, w)
            expected, _ = subalgebra_dim(gens, idx)
            rep = ad_kernel_classical(s1, idx, expected)
            assert rep.verdict, (d, w, rep.kernel_dim, expected)


def test_classical_generators_are_free_here(sl2):
    # on this grid the generator products are linearly independent
    gens = classical_generators(sl2, 8)
    for d in range(1, 4):
        for w in range(d, 7):
            idx = ComponentIndex(d, w)
            assert subalgebra_dim(gens, idx)[0] == free_product_count(gens, idx)


def test_classical_kernel_gl2(gl2):
    gens = classical_generators(gl2, 6)
    s1 = casimir(gl2)
    for d in range(1, 3):
        for w in range(d, 5):
            idx = ComponentIndex(d, w)
            expected, _ = subalgebra_dim(gens, idx)
            rep = ad_kernel_classical(s1, idx, expected)
            assert rep.verdict, (d, w, rep.kernel_dim, expected)


def test_kernel_basis_is_in_the_subalgebra(sl2):
    gens = classical_generators(sl2, 8)
    idx = ComponentIndex(2, 4)
    expected, prods = subalgebra_dim(gens, idx)
    rep = ad_kernel_classical(casimir(sl2), idx, expected)
    for b in rep.basis:
        assert in_span(b, prods)


def test_cartan_kernel_matches_partition_count(sl2):
    t = principal_triple(sl2)
    h1 = SymPoly.from_lie(t.h, 1)
    for d in range(1, 4):
        for w in range(d, 7):
            idx = ComponentIndex(d, w)
            expected = cartan_component_dim(sl2, idx)
            assert expected == _partitions_into(w, d)
            rep = ad_kernel_classical(h1, idx, expected)
            assert rep.verdict, (d, w, rep.kernel_dim, expected)


def test_quantum_kernel_small_grid(sl2):
    gens = classical_generators(sl2, 8)
    s1 = symmetrize(casimir(sl2))
    for d in range(1, 3):
        for w in range(1, 5):
            idx = ComponentIndex(d, w)
            expected = quantum_expected_dim(gens, idx)
            rep = ad_kernel_quantum(s1, idx, expected)
            assert rep.verdict, (d, w, rep.kernel_dim, expected)


def test_invariant_subspace_frozen_components(sl2, gl2):
    dim, _ = invariant_subspace(sl2, ComponentIndex(1, 1))
    assert dim == 0
    dim, basis = invariant_subspace(sl2, ComponentIndex(2, 2))
    assert dim == 1
    assert in_span(symmetrize(casimir(sl2)), basis)
    # gl2 has the central element tr E[-1]
    dim, _ = invariant_subspace(gl2, ComponentIndex(1, 1))
    assert dim == 1


def test_invariant_subspace_pairing_growth(sl2):
    # at degree <= 2, weight w there is one pairing invariant per depth
    # split w = m1 + m2, so the dimension is floor(w/2)
    for w in range(2, 7):
        dim, _ = invariant_subspace(sl2, ComponentIndex(2, w))
        assert dim == w // 2


def test_slice_identities_sl2(sl2):
    t = principal_triple(sl2)
    rep = verify_slice_identities(t, 3, 6)
    assert rep["all"]
    assert rep["phi_s_quadratic"]
    assert rep["pi_commutes_dt"]
    assert rep["pi_spans_slice"]
    assert rep["psi_restricts_embedding"]


def test_slice_identities_sl3(sl3):
    rep = verify_slice_identities(principal_triple(sl3), 2, 4)
    assert rep["all"]


def test_phi_s_layers_exactly(sl2):
    t = principal_triple(sl2)
    layers = apply_phi_s(casimir(sl2), t)
    assert layers[0] == casimir(sl2)
    assert layers[1] == 2 * SymPoly.from_lie(t.h, 1)
    assert layers[2] == SymPoly.const(sl2, Fraction(2))  # <h,h> for sl2
    assert len(layers) == 3


def test_pi_of_casimir_and_derivatives(sl2):
    # pi is multiplicative and intertwines d/dt, so pi(dt^n S1) is the
    # n-th derivative of 2 f[-1]
    t = principal_triple(sl2)
    p = casimir(sl2)
    fact = 1
    for n in range(4):
        if n:
            fact *= n
        target = (2 * (-1) ** n * fact) * SymPoly.from_lie(t.f, 1 + n)
        assert project_pi(p, t) == target
        p = d_t(p)
