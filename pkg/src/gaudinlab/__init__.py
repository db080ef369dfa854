"""Exact computation in commutative subalgebras of loop algebras.

The package works over the negative half of a loop algebra: symmetric
algebra with its Poisson structure (``loopsym``), universal enveloping
algebra in a normal-ordered basis (``pbw``), the commuting family from
the determinant of a differential operator (``talalaev``), evaluation
to Gaudin Hamiltonians (``gaudin``), and graded centralizer checks
(``centralizer``).  All arithmetic is exact rational.
"""

from gaudinlab.liealg import (LieAlgebra, LieElement, PrincipalTriple,
                              build_algebra, dual_basis, principal_triple)
from gaudinlab.loopsym import (SymPoly, casimir, classical_generators, d_t,
                               embed_iz, graded_basis, invariant_char_coeffs,
                               poisson_bracket, project_pi, project_psi,
                               restrict_cartan)
from gaudinlab.pbw import PBWPoly, adjoint_action, commutator, d_t_env, symmetrize
from gaudinlab.talalaev import (QFamily, all_commute, check_pairwise_commute,
                                compute_Q)
from gaudinlab.gaudin import (SiteConfig, TensorPoly, evaluate, global_element,
                              joint_diagonalizable, quadratic_hamiltonian,
                              rep_matrix, spectrum)
from gaudinlab.centralizer import (ComponentIndex, ad_kernel_classical,
                                   ad_kernel_quantum, invariant_subspace,
                                   verify_slice_identities)

__all__ = [
    "LieAlgebra", "LieElement", "PrincipalTriple", "build_algebra",
    "dual_basis", "principal_triple",
    "SymPoly", "casimir", "classical_generators", "d_t", "embed_iz",
    "graded_basis", "invariant_char_coeffs", "poisson_bracket",
    "project_pi", "project_psi", "restrict_cartan",
    "PBWPoly", "adjoint_action", "commutator", "d_t_env", "symmetrize",
    "QFamily", "all_commute", "check_pairwise_commute", "compute_Q",
    "SiteConfig", "TensorPoly", "evaluate", "global_element",
    "joint_diagonalizable", "quadratic_hamiltonian", "rep_matrix", "spectrum",
    "ComponentIndex", "ad_kernel_classical", "ad_kernel_quantum",
    "invariant_subspace", "verify_slice_identities",
]
