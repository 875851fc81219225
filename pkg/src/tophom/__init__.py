"""Desk-scale laboratory for the top-homology threshold of random d-complexes."""

from .collapse import (
    ALIVE,
    ISOLATED_AT_START,
    CollapseTrace,
    run_phases,
    s_statistic,
    theta_collapse,
    zeta_perturbation,
)
from .combinatorics import rank_subset, unrank_subset
from .complexes import Complex, cofaces, degree, from_faces, sample_complex
from .gf2 import BACKEND as GF2_BACKEND
from .homology import (
    BoundaryMatrix,
    Reducer,
    batch_rank,
    boundary_matrix,
    h_d,
    is_simplex_boundary,
)
from .theory import (
    ConvergenceError,
    ThresholdConstants,
    asymptotic_constants,
    beta_sequence,
    expected_s_density,
    fixed_point_beta,
    gamma_recurrence,
    select_k_star,
    solve_beta,
    solve_c_collapse,
    solve_c_star,
    threshold_constants,
)
from .trees import BranchingTree, estimate_gamma, root_generation, sample_tree

__version__ = "0.1.0"
