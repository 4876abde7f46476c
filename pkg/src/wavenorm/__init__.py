"""Large-time L2 norms of undamped dispersive models.

The package evaluates M(t), the spatial L2 norm of a radially symmetric
Fourier-side solution, straight from its multiplier representation:
oscillation-aligned Gauss-Kronrod quadrature with certified tail and
origin handling, symbolic regime classification, growth-law fitting,
and a small set of model adapters (free wave, sigma-evolution,
scale-invariant wave, Moore-Gibson-Thompson, linearized Euler).
"""

from .asymptotics import (
    RateFit,
    Regime,
    SandwichReport,
    classify_regime,
    envelope,
    fit_growth,
    log_spaced_times,
    regime_envelope,
    sandwich_check,
    solution_envelope,
    solution_regime,
)
from .errors import (
    BlowupRegimeError,
    ConfigError,
    NonIntegrableError,
    NonIntegrableTailError,
    UnsupportedKernelError,
)
from .models import (
    EulerModel,
    delta_one_mass_coefficient,
    euler,
    free_wave,
    mgt,
    scale_invariant,
    sigma_evolution,
    singular_l2_example,
    stabilizing_dissipation,
)
from .profiles import (
    RadialProfile,
    bump,
    combine,
    fold_power,
    gaussian,
    monomial_gauss,
    power_sing,
    scaled,
    truncated,
    zero_profile,
)
from .quadrature import (
    OscillationSegments,
    QuadratureResult,
    integrate_energy,
    integrate_l2_squared,
)
from .spectral import (
    BoundedCoefficient,
    ModelSpec,
    SpectralSolution,
    cosine_coefficient,
    evaluate_solution_hat,
    origin_exponent,
    surface_measure,
    unit_prefactor,
)

__version__ = "0.1.0"

__all__ = [
    "BlowupRegimeError",
    "BoundedCoefficient",
    "ConfigError",
    "EulerModel",
    "ModelSpec",
    "NonIntegrableError",
    "NonIntegrableTailError",
    "OscillationSegments",
    "QuadratureResult",
    "RadialProfile",
    "RateFit",
    "Regime",
    "SandwichReport",
    "SpectralSolution",
    "UnsupportedKernelError",
    "bump",
    "classify_regime",
    "combine",
    "cosine_coefficient",
    "delta_one_mass_coefficient",
    "envelope",
    "euler",
    "evaluate_solution_hat",
    "fit_growth",
    "fold_power",
    "free_wave",
    "gaussian",
    "integrate_energy",
    "integrate_l2_squared",
    "log_spaced_times",
    "mgt",
    "monomial_gauss",
    "origin_exponent",
    "power_sing",
    "regime_envelope",
    "sandwich_check",
    "scale_invariant",
    "scaled",
    "sigma_evolution",
    "singular_l2_example",
    "solution_envelope",
    "solution_regime",
    "stabilizing_dissipation",
    "surface_measure",
    "truncated",
    "unit_prefactor",
    "zero_profile",
]
