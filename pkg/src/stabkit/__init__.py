"""stabkit: exact symplectic geometry for stabilizer states and design checks.

The package constructs stabilizer states from Lagrangian subspaces of
Z_d^{2n} (d prime), computes their frame potentials by independent exact and
numeric engines, and verifies the design thresholds against Welch bounds.
"""

from .combinatorics import (
    binomial,
    gaussian_binomial,
    gaussian_pascal_check,
    is_prime,
    kappa,
    lagrangian_count,
    stabilizer_count,
    transversal_count,
    welch_bound,
)
from .errors import NonPrimeModulusError, ResourceCapError
from .potential import (
    FramePotentialReport,
    design_verdict,
    frame_potential_bruteforce,
    frame_potential_combinatorial,
    frame_potential_fixed_state,
    frame_potential_recursion,
    frame_potential_report,
)
from .stabilizer import (
    StabilizerState,
    compatible_bases,
    enumerate_states,
    overlap_exact,
    projector,
    realized_states,
    stabilizer_basis,
    state_vector,
)
from .symplectic import (
    PhaseVector,
    ReducedSpace,
    Subspace,
    canonical_coset_representative,
    canonicalize,
    complement,
    coset_representatives,
    enumerate_lagrangians,
    enumerate_subspaces,
    extensions_through,
    graph_adjacency,
    intersect,
    intersection_spectrum,
    is_graph_lagrangian,
    is_isotropic,
    is_lagrangian,
    is_transverse,
    subspace_sum,
    symplectic_form,
    symplectic_form_lift,
    symplectic_reduce,
)
from .weyl import (
    TauPhase,
    WeylOperator,
    boost,
    shift,
    verify_commutation,
    verify_composition,
    weyl,
    weyl_basis,
)

__version__ = "0.1.0"
