"""Adapters from concrete evolution equations to the common spectral shape.

Each constructor reduces one model to a SpectralSolution: free wave,
higher-order dispersion (sigma-evolution), the dissipatively transformed
scale-invariant wave, the third-order Moore-Gibson-Thompson equation, the
linearized compressible Euler system, and a deliberately singular-data
example sitting at the edge of L2.

Conventions shared by all adapters:

* data profiles are given directly on the radial frequency side and are
  real-valued;
* regularity weights r^s (r^(s+1) for the Euler velocity) are folded into
  the singular profile at construction, and the fold is visible in the
  profile label;
* where a channel of the true solution is purely imaginary relative to the
  others, the whole solution is rotated by a global phase so the singular
  channel stays real; absolute values, hence norms, are unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, UnsupportedKernelError
from .profiles import RadialProfile, combine, fold_power, power_sing, scaled
from .quadrature import QuadratureResult, integrate_l2_squared
from .spectral import (
    BoundedCoefficient,
    ModelSpec,
    SpectralSolution,
    cosine_coefficient,
)


def free_wave(
    n: int, s: float, profile_u0: RadialProfile, profile_v1: RadialProfile
) -> SpectralSolution:
    """Free wave: cos(rt) on u0_hat plus sin(rt)/r^(1+s) on profile_v1.

    profile_v1 is the already-weighted singular datum (the caller folds the
    r^s factor; pass the raw velocity profile when s = 0).
    """
    spec = ModelSpec(n=n, sigma=1.0, s=s)
    return SpectralSolution(
        spec=spec,
        bounded_terms=((cosine_coefficient(1.0, 1.0), profile_u0),),
        singular_profile=profile_v1,
        label=f"free_wave(n={n}, s={s:g})",
    )


def sigma_evolution(
    n: int,
    sigma: float,
    s: float,
    profile_w0: RadialProfile,
    profile_w1: RadialProfile,
) -> SpectralSolution:
    """Dispersion order sigma: cos(r^sigma t) on w0, folded r^s w1 singular."""
    if sigma < 1.0:
        raise UnsupportedKernelError("dispersion order sigma must be >= 1")
    spec = ModelSpec(n=n, sigma=sigma, s=s)
    return SpectralSolution(
        spec=spec,
        bounded_terms=((cosine_coefficient(1.0, sigma), profile_w0),),
        singular_profile=fold_power(profile_w1, s),
        label=f"sigma_evolution(n={n}, sigma={sigma:g}, s={s:g})",
    )


def delta_one_mass_coefficient(tau1: float) -> float:
    """Mass coefficient paired with dissipation tau1 on the unit critical line."""
    return tau1 * tau1 / 4.0 - tau1 / 2.0


def stabilizing_dissipation(n: int, s: float) -> float:
    """Dissipation strength whose decay exactly cancels the free-wave growth."""
    return 2.0 + 2.0 * s - float(n)


def scale_invariant(
    n: int,
    s: float,
    tau1: float,
    profile_u0: RadialProfile,
    profile_u1: RadialProfile,
) -> SpectralSolution:
    """Scale-invariant damped wave on the critical line, transformed form.

    The transformed unknown solves a free wave with first datum unchanged
    and second datum (tau1/2) u0 + u1; undoing the transformation multiplies
    the solution by (1 + t)^(-tau1/2), carried here as the time prefactor.
    The paired mass coefficient is delta_one_mass_coefficient(tau1); only
    that pairing is representable.
    """
    if tau1 <= 0.0:
        raise UnsupportedKernelError("dissipation parameter tau1 must be positive")
    spec = ModelSpec(n=n, sigma=1.0, s=s)
    half = tau1 / 2.0
    shifted = combine([(half, profile_u0), (1.0, profile_u1)])

    def prefactor(t: float) -> float:
        return (1.0 + t) ** (-half)

    return SpectralSolution(
        spec=spec,
        bounded_terms=((cosine_coefficient(1.0, 1.0), profile_u0),),
        singular_profile=fold_power(shifted, s),
        time_prefactor=prefactor,
        label=(
            f"scale_invariant(n={n}, s={s:g}, tau1={tau1:g}, "
            f"tau2={delta_one_mass_coefficient(tau1):g})"
        ),
    )


# Moore-Gibson-Thompson: tau psi_ttt + psi_tt - lap psi - tau lap psi_t = 0.
# On radial frequency r the characteristic roots are +-ir and -1/tau, and
# imposing the three data conditions psi(0) = psi0, psi_t(0) = psi1,
# psi_tt(0) = psi2 gives
#
#   psi_hat = [cos(rt) + tau r sin(rt) + tau^2 r^2 e^(-t/tau)] / (1+tau^2 r^2) * psi0
#           + sin(rt)/r * (psi1 + tau psi2)
#           + tau^2 [e^(-t/tau) - cos(rt) - tau r sin(rt)] / (1+tau^2 r^2) * psi2
#
# after splitting the sin(rt)/r content of the psi2 response off into the
# singular channel.  Certified coefficient bounds, with z = tau^2 r^2:
#   |B0| <= (1+z)^(-1/2) + z/(1+z)            <= 5/4   (maximum at z = 3)
#   |B2| <= tau^2 [(1+z)^(-1/2) + (1+z)^(-1)] <= 2 tau^2  (maximum at z = 0)


def _mgt_first_data_coefficient(tau: float) -> BoundedCoefficient:
    def f(t, r):
        tr = tau * r
        return (np.cos(r * t) + tr * np.sin(r * t)
                + tr * tr * math.exp(-t / tau)) / (1.0 + tr * tr)

    return BoundedCoefficient(func=f, bound=1.25, label="mgt_b0")


def _mgt_second_data_coefficient(tau: float) -> BoundedCoefficient:
    tau2 = tau * tau

    def f(t, r):
        tr = tau * r
        return tau2 * (math.exp(-t / tau) - np.cos(r * t)
                       - tr * np.sin(r * t)) / (1.0 + tr * tr)

    return BoundedCoefficient(func=f, bound=2.0 * tau2, label="mgt_b2")


def mgt(
    n: int,
    s: float,
    tau: float,
    profile_psi0: RadialProfile,
    profile_psi1: RadialProfile,
    profile_psi2: RadialProfile,
) -> SpectralSolution:
    """Moore-Gibson-Thompson flow with relaxation tau.

    Singular channel carries r^s (psi1 + tau psi2); the responses to psi0
    and to the non-singular remainder of psi2 are uniformly bounded in
    (t, r) with the certified constants 5/4 and 2 tau^2.
    """
    if tau <= 0.0:
        raise UnsupportedKernelError("relaxation time tau must be positive")
    spec = ModelSpec(n=n, sigma=1.0, s=s)
    shifted = combine([(1.0, profile_psi1), (tau, profile_psi2)])
    return SpectralSolution(
        spec=spec,
        bounded_terms=(
            (_mgt_first_data_coefficient(tau), profile_psi0),
            (_mgt_second_data_coefficient(tau), profile_psi2),
        ),
        singular_profile=fold_power(shifted, s),
        label=f"mgt(n={n}, s={s:g}, tau={tau:g})",
    )


@dataclass(frozen=True)
class EulerModel:
    """Linearized compressible Euler around a constant state.

    density and velocity_oscillatory are spectral solutions for the acoustic
    (potential) part; solenoidal_norm_sq is the squared L2 norm of the
    divergence-free velocity component, which the flow transports without
    change.  The full velocity norm is sqrt(solenoidal_norm_sq + oscillatory
    norm squared).
    """

    density: SpectralSolution
    velocity_oscillatory: SpectralSolution
    solenoidal_norm_sq: float

    def velocity_norm(self, t: float, tol: float = 1e-8) -> float:
        osc = velocity_oscillatory_norm_sq(self, t, tol)
        if not osc.finite:
            return math.inf
        return math.sqrt(self.solenoidal_norm_sq + osc.value)


def velocity_oscillatory_norm_sq(
    model: EulerModel, t: float, tol: float = 1e-8
) -> QuadratureResult:
    return integrate_l2_squared(model.velocity_oscillatory, t, tol=tol)


def _phase_cosine(beta: float) -> BoundedCoefficient:
    """i cos(beta r t): the bounded channel after the global phase rotation."""

    def f(t, r):
        return 1j * np.cos(beta * r * t)

    return BoundedCoefficient(func=f, bound=1.0, label="i_cos")


def euler(
    n: int,
    s: float,
    beta: float,
    profile_rho0: RadialProfile,
    profile_div: RadialProfile,
    profile_q: RadialProfile,
    solenoidal_norm_sq: float = 0.0,
) -> EulerModel:
    """Linearized Euler with sound speed beta.

    Fourier-side inputs, all real radial profiles: the initial density
    rho0_hat, the divergence content of the initial velocity (profile_div),
    and the potential-part scalar q_hat of the initial velocity.  The
    solenoidal component enters only through its constant squared norm.

    Density solves rho_hat = cos(beta r t) rho0_hat - i sin(beta r t)/r *
    profile_div; the oscillatory velocity scalar is cos(beta r t) q_hat -
    i sin(beta r t) rho0_hat.  Each is stored rotated by i so its singular
    channel is real: norms are unaffected.
    """
    if beta <= 0.0:
        raise UnsupportedKernelError("sound speed beta must be positive")
    if solenoidal_norm_sq < 0.0:
        raise ValueError("solenoidal norm squared must be >= 0")
    spec = ModelSpec(n=n, sigma=1.0, s=s)
    amp = beta ** (1.0 + s)
    density = SpectralSolution(
        spec=spec,
        bounded_terms=((_phase_cosine(beta), profile_rho0),),
        singular_profile=fold_power(scaled(profile_div, amp), s),
        frequency_scale=beta,
        label=f"euler_density(n={n}, s={s:g}, beta={beta:g})",
    )
    velocity = SpectralSolution(
        spec=spec,
        bounded_terms=((_phase_cosine(beta), profile_q),),
        singular_profile=fold_power(scaled(profile_rho0, amp), s + 1.0),
        frequency_scale=beta,
        label=f"euler_velocity(n={n}, s={s:g}, beta={beta:g})",
    )
    return EulerModel(
        density=density,
        velocity_oscillatory=velocity,
        solenoidal_norm_sq=float(solenoidal_norm_sq),
    )


def singular_l2_example(n: int, sigma: float, eps: float) -> SpectralSolution:
    """Singular L2 datum saturating the upper growth rate up to eps.

    Zero first datum; the singular profile is r^(-n/2 + sigma eps / 2) on
    (0, 1].  Its squared radial norm is exactly 1/(sigma eps), and the
    predicted growth exponent is 1 - eps/2.
    """
    if not (0.0 < eps <= 0.2):
        raise ConfigError("eps must lie in (0, 0.2]")
    if sigma < 1.0:
        raise UnsupportedKernelError("dispersion order sigma must be >= 1")
    p_exp = n / 2.0 - sigma * eps / 2.0
    if p_exp <= 0.0:
        raise ConfigError(
            "profile exponent n/2 - sigma*eps/2 must be positive; "
            "reduce eps or sigma"
        )
    spec = ModelSpec(n=n, sigma=sigma, s=0.0)
    return SpectralSolution(
        spec=spec,
        bounded_terms=(),
        singular_profile=power_sing(p_exp, 1.0),
        label=f"singular_l2(n={n}, sigma={sigma:g}, eps={eps:g})",
    )
