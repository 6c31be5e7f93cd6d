"""Spectral singularities and CPA-laser points of a two-layer active slab."""

from .errors import (
    ConvergenceError,
    DomainError,
    NearPTError,
    SingularJacobianError,
    SpectralSingularityError,
)
from .optics import (
    BilayerSlab,
    ComplexIndex,
    ScatteringAmplitudes,
    TransferMatrix,
    gamma_factors,
    layer_coefficients,
    pt_diagnostics,
    s_matrix,
    scattering,
    transfer_matrix,
    transfer_matrix_oracle,
)
from .solver import (
    ApproxSeed,
    SelfDualSolution,
    cpa_residual,
    find_selfdual,
    generate_seeds,
    pt_special_case,
    reduced_values,
    refine,
    same_real_part_analysis,
    scan_lasing,
    ss_residual,
)
from .dof import dof, dof_breakdown

__version__ = "0.1.0"
