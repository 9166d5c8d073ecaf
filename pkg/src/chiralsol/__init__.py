"""Multisoliton solutions of the 2-D principal chiral model by
iterated dressing, with quasideterminant evaluation and a numerical
verification suite for every asserted invariant."""

from .darboux import (
    ChainLevel,
    DarbouxChain,
    DarbouxStep,
    ProjectorPath,
    SpectralData,
    build_M,
    build_S,
    chain_levels,
    darboux_matrix,
    dressed_s_values,
    iterate_product,
    iterate_qdet,
    make_chain,
    make_step,
    projector_path,
    s_conditions_residual,
    step_s_matrix,
    su2_spectral,
    transform_chain,
    transform_state,
    unitarity_checks,
)
from .matcore import (
    DEFAULT_TOLERANCES,
    SingularMatrixError,
    Tolerances,
    adjoint,
    cond_estimate,
    det,
    frobenius_norm,
    identity_like,
    invert,
)
from .model import (
    DEFAULT_GRID,
    ChiralState,
    Grid,
    SeedSolution,
    SpacetimePoint,
    SpectralPoleError,
    column_solution,
    deriv_lightcone,
    eom_residual,
    lax_residual,
    lightcone,
    make_seed_su2,
)
from .quasidet import (
    BlockGrid,
    check_homological,
    check_nc_jacobi,
    deleted_submatrix,
    qdet_block,
    qdet_scalar,
    random_block_grid,
)
from .report import ResidualEntry, ResidualReport, __version__, max_abs, rel_residual
from .su2 import (
    OneSolitonFields,
    RSProfile,
    SolitonParams,
    TwoSolitonParams,
    TwoSolitonPrinted,
    asymptotic_factors,
    one_soliton,
    point_at_r,
    profile_coefficients,
    rs_profile,
    soliton_chain,
    two_soliton_printed,
)
from .verify import (
    SuiteConfig,
    check_asymptotics,
    check_chain,
    check_convergence,
    check_equivalence,
    check_identities,
    check_one_soliton,
    check_projector,
    check_scalar_ratio,
    check_seed,
    compare_two_soliton,
    convergence_entries,
    run_full_suite,
)

__all__ = [name for name in dir() if not name.startswith("_")]
