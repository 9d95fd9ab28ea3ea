"""Spectral and scattering numerics for generalized cusp metrics.

The library evaluates lifted Hankel/Bessel functions on the logarithmic
cover of the spectral plane, the Weber transform diagonalizing the
radial Bessel operator, the continued cusp resolvent and its poles, the
coupled mode system with its Perron rates, stationary and dynamical
scattering matrices of a radial model manifold, resonances, and the
discretized gluing parametrix.  ``cuspscat`` on the command line fronts
all of it.
"""

from .cover import TWO_PI, LogCoverPoint, as_cover_z
from .errors import (AccuracyError, CuspScatError, DomainError, InputError,
                     MatchingError, PoleError, RegimeError, TruncationError,
                     WindingError)
from .geometry import CuspGeometry, geometry_constants
from .gluing import GluingReport, gluing_cutoffs, gluing_parametrix_check
from .modes import (FirstOrderState, ModeOperator, ModeSystem, PerronReport,
                    assemble_mode_operator, discrete_spectrum,
                    effective_potentials, f_matrix_diagonalizer,
                    f_matrix_eigenvalues, first_order_matrix,
                    perron_decay_check)
from .resolvent import (LimitingAbsorptionReport, PoleReport, WeightedNorm,
                        apply_cusp_resolvent, find_resolvent_poles,
                        limiting_absorption_check, reduced_kernel,
                        resolvent_kernel, spectral_route_kernel, weighted_norm)
from .scattering import (EigenformExpansion, FunctionalEquationReport,
                         HodgeReport, ModelManifold, PowerWarp,
                         ResidueReport, ScatteringMatrix, SectorParams,
                         SplineLogWarp, TailDecayReport, UnitarityReport,
                         check_functional_equation, check_hodge_commutation,
                         check_unitarity, default_matching_radius,
                         dynamical_matrix, find_resonances, hodge_dual_model,
                         pure_cusp_coefficient, resonance_residue,
                         scattering_matrix, sector_params,
                         solve_generalized_eigenform, tail_decay_check)
from .special import (bessel_jy_cover, cylinder_g, cylinder_g_cover,
                      eval_accuracy, hankel, hankel_deriv_x, hankel_pair,
                      hankel_weight_deriv, switch_radius, validate_order)
from .weber import (RadialFunction, SpectralFunction, apply_bessel_operator,
                    c2_bump, radial_grid, smooth_bump, spectral_density,
                    spectral_grid, weber_forward, weber_inverse)
from .zeros import find_zeros, refine_newton, winding_number

__version__ = "0.1.0"

__all__ = [
    "TWO_PI", "LogCoverPoint", "as_cover_z",
    "CuspScatError", "InputError", "DomainError", "RegimeError",
    "AccuracyError", "TruncationError", "PoleError", "MatchingError",
    "WindingError",
    "CuspGeometry", "geometry_constants",
    "GluingReport", "gluing_cutoffs", "gluing_parametrix_check",
    "FirstOrderState", "ModeOperator", "ModeSystem", "PerronReport",
    "assemble_mode_operator", "discrete_spectrum", "effective_potentials",
    "f_matrix_diagonalizer", "f_matrix_eigenvalues", "first_order_matrix",
    "perron_decay_check",
    "LimitingAbsorptionReport", "PoleReport", "WeightedNorm",
    "apply_cusp_resolvent", "find_resolvent_poles",
    "limiting_absorption_check", "reduced_kernel", "resolvent_kernel",
    "spectral_route_kernel", "weighted_norm",
    "EigenformExpansion", "FunctionalEquationReport", "HodgeReport",
    "ModelManifold", "PowerWarp", "ResidueReport", "ScatteringMatrix",
    "SectorParams", "SplineLogWarp", "TailDecayReport", "UnitarityReport",
    "check_functional_equation", "check_hodge_commutation", "check_unitarity",
    "default_matching_radius", "dynamical_matrix", "find_resonances",
    "hodge_dual_model", "pure_cusp_coefficient", "resonance_residue",
    "scattering_matrix", "sector_params", "solve_generalized_eigenform",
    "tail_decay_check",
    "bessel_jy_cover", "cylinder_g", "cylinder_g_cover", "eval_accuracy",
    "hankel", "hankel_deriv_x", "hankel_pair", "hankel_weight_deriv",
    "switch_radius", "validate_order",
    "RadialFunction", "SpectralFunction", "apply_bessel_operator", "c2_bump",
    "radial_grid", "smooth_bump", "spectral_density", "spectral_grid",
    "weber_forward", "weber_inverse",
    "find_zeros", "refine_newton", "winding_number",
    "__version__",
]
