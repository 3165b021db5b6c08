"""Phase-space toolkit for the generalized-Laguerre bound states of the
exponentially decaying effective-mass problem.

Two solution families (oscillator-like I, Coulomb-like III) admit closed-form
Wigner functions built from modified Bessel functions of complex order, and
closed-form phase-space moments built from Gamma-function sums. This package
evaluates both, checks them against definition-level quadrature oracles, and
exports grids, uncertainty tables, and figures through a small CLI.
"""

from .errors import (DomainError, LatticeTooCoarse, NonConvergence,
                     PdemWignerError, PoleError, PrecisionInsufficient,
                     RealityViolation, TruncationError)
from .massmodel import Branch, MassProfile, mass_at, mu_at, x_of_mu
from .eigenstates import (Case, QuantumState, effective_potential,
                          eigenfunction, energy, normalization_constant,
                          se_residual)
from .specfun import (PrecisionConfig, bessel_k, gen_binomial,
                      hyp2f1_terminating, laguerre, ln_gamma, partitions)
from .quadrature import IntegralResult, integrate_2d, integrate_halfline, integrate_line
from .wigner import (PhaseSpaceGrid, PhaseSpacePoint, choose_p_max,
                     evaluate_grid, marginal_momentum, marginal_position,
                     normalization, support_x_range, wdf_closed, wdf_numeric)
from .moments import (MomentSet, UncertaintyResult, asymptotic_gap,
                      default_working_digits, moment_oracle,
                      moment_oracle_set, moment_set, uncertainty_product,
                      uncertainty_result, uncertainty_table)
from .weyl_verify import (WeylSymbol, b1_lhs_numeric, b1_rhs_closed,
                          poisson_bracket_gap, weyl_symbol)
from .reference import REFERENCE_L_GRID, REFERENCE_PRODUCTS, reference_product
from .suites import CheckResult, run_suites

__version__ = "0.1.0"

__all__ = [
    "Branch", "Case", "CheckResult", "DomainError", "IntegralResult",
    "LatticeTooCoarse", "MassProfile", "MomentSet", "NonConvergence",
    "PdemWignerError", "PhaseSpaceGrid", "PhaseSpacePoint", "PoleError",
    "PrecisionConfig", "PrecisionInsufficient", "QuantumState",
    "RealityViolation", "REFERENCE_L_GRID", "REFERENCE_PRODUCTS",
    "TruncationError", "UncertaintyResult", "WeylSymbol", "asymptotic_gap",
    "b1_lhs_numeric", "b1_rhs_closed", "bessel_k", "choose_p_max",
    "default_working_digits", "effective_potential", "eigenfunction",
    "energy", "evaluate_grid", "gen_binomial", "hyp2f1_terminating",
    "integrate_2d", "integrate_halfline", "integrate_line", "laguerre",
    "ln_gamma", "marginal_momentum", "marginal_position", "mass_at",
    "moment_oracle", "moment_oracle_set", "moment_set", "mu_at",
    "normalization", "normalization_constant", "partitions",
    "poisson_bracket_gap", "reference_product", "run_suites", "se_residual",
    "support_x_range", "uncertainty_product", "uncertainty_result",
    "uncertainty_table", "wdf_closed", "wdf_numeric", "weyl_symbol",
    "x_of_mu", "__version__",
]
