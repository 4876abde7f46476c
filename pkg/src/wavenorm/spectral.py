"""Spectral representation of undamped evolution solutions on radial frequencies.

Every model handled here reduces, after a Fourier transform and a radial
reduction, to a multiplier of the common shape

    u_hat(t, r) = pref(t) * [ sum_k B_k(t, r) * phi0_k(r)
                              + sin((beta r)^sigma t) / (beta r)^(sigma + s)
                                * phi1(r) ]

with |B_k(t, r)| <= bound_k uniformly, r the radial frequency, sigma >= 1
the dispersion order, s >= 0 the regularity index of the singular channel
and beta > 0 a frequency scale.  The squared L2 norm of the solution is

    M(t)^2 = omega_n * integral_0^inf |u_hat(t, r)|^2 r^(n-1) dr,

omega_n being the surface measure of the unit sphere.  The singular factor
sin(w)/ (beta r)^(sigma+s) is always evaluated as t * (beta r)^(-s) * sin(w)/w
with w = (beta r)^sigma t, which is exact and stays well scaled for
r far below t^(-1/sigma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import UnsupportedKernelError
from .profiles import RadialProfile


def surface_measure(n: int) -> float:
    """Surface area of the unit sphere in n dimensions (2 for n = 1)."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def unit_prefactor(t: float) -> float:
    return 1.0


@dataclass(frozen=True)
class ModelSpec:
    """Structural indices (n, sigma, s) plus optional data regularity kappa."""

    n: int
    sigma: float
    s: float
    kappa: float | None = None

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("spatial dimension n must be a positive integer")
        if self.sigma < 1.0:
            raise ValueError("dispersion order sigma must be >= 1")
        if self.s < 0.0:
            raise ValueError("regularity index s must be >= 0")
        if self.kappa is not None and self.kappa < 0.0:
            raise ValueError("kappa must be >= 0 when given")

    @property
    def n_lower_critical(self) -> float:
        """Dimension at and below which the norm is infinite (m = 0 data)."""
        return 2.0 * self.s

    @property
    def n_upper_critical(self) -> float:
        """Dimension of logarithmic growth (m = 0 data)."""
        return 2.0 * self.sigma + 2.0 * self.s


@dataclass(frozen=True)
class BoundedCoefficient:
    """A uniformly bounded kernel coefficient B(t, r).

    `func` must be vectorized over r and may return complex values.  `bound`
    is a certified uniform upper bound for |B|, not a sampled estimate.
    `kind` tags structurally special coefficients; "cosine" marks
    B(t, r) = cos((beta r)^sigma t), the conservative case.
    """

    func: Callable[[float, np.ndarray], np.ndarray]
    bound: float
    kind: str = "generic"
    label: str = ""

    def __post_init__(self) -> None:
        if not self.bound >= 0.0:
            raise ValueError("coefficient bound must be >= 0")


def cosine_coefficient(beta: float, sigma: float) -> BoundedCoefficient:
    """The conservative kernel coefficient cos((beta r)^sigma t)."""

    def f(t, r):
        return np.cos(power(beta * r, sigma) * t)

    return BoundedCoefficient(func=f, bound=1.0, kind="cosine", label="cos")


@dataclass(frozen=True)
class SpectralSolution:
    """A solution in the common multiplier shape (see module docstring)."""

    spec: ModelSpec
    bounded_terms: tuple[tuple[BoundedCoefficient, RadialProfile], ...]
    singular_profile: RadialProfile
    time_prefactor: Callable[[float], float] = unit_prefactor
    frequency_scale: float = 1.0
    label: str = ""

    def __post_init__(self) -> None:
        if self.frequency_scale <= 0.0:
            raise ValueError("frequency scale must be positive")


def power(base, p: float):
    """base**p with fast paths for the exponents that dominate the runtime."""
    if p == 0.0:
        return np.ones_like(base) if isinstance(base, np.ndarray) else 1.0
    if p == 1.0:
        return base
    if p == 2.0:
        return base * base
    if p == 3.0:
        return base * base * base
    return base**p


def sin_ratio(w):
    """sin(w)/w, series below 1e-4 so the removable singularity stays exact."""
    w = np.asarray(w, dtype=float)
    small = w < 1e-4
    wsq = w * w
    series = 1.0 - wsq / 6.0 * (1.0 - wsq / 20.0)
    safe = np.where(small, 1.0, w)
    return np.where(small, series, np.sin(w) / safe)


def _check_radii(r) -> np.ndarray:
    arr = np.asarray(r, dtype=float)
    if np.any(arr <= 0.0) or not np.all(np.isfinite(arr)):
        raise ValueError("radial frequency must be positive and finite")
    return arr


def singular_factor(sol: SpectralSolution, t: float, r) -> np.ndarray:
    """sin((beta r)^sigma t) / (beta r)^(sigma + s), evaluated cancellation-free."""
    spec = sol.spec
    br = sol.frequency_scale * np.asarray(r, dtype=float)
    w = power(br, spec.sigma) * t
    return t * power(br, -spec.s) * sin_ratio(w)


def evaluate_solution_hat(sol: SpectralSolution, t: float, r):
    """u_hat(t, r); vectorized over r, complex when a coefficient is complex.

    Requires t >= 0 and r > 0.
    """
    if t < 0.0:
        raise ValueError("time must be >= 0")
    arr = _check_radii(r)
    acc = singular_factor(sol, t, arr) * sol.singular_profile(arr) \
        if not sol.singular_profile.is_zero else np.zeros_like(arr)
    for coeff, prof in sol.bounded_terms:
        if prof.is_zero:
            continue
        acc = acc + coeff.func(t, arr) * prof(arr)
    out = sol.time_prefactor(t) * acc
    if np.ndim(r) == 0:
        return complex(out) if np.iscomplexobj(out) else float(out)
    return out


def origin_exponent(sol: SpectralSolution, t: float) -> float:
    """Exponent e with |u_hat(t, r)|^2 r^(n-1) ~ r^e as r -> 0 at fixed t > 0.

    Decided symbolically from the declared leading orders: the singular
    channel contributes n - 1 - 2 s + 2 m with m the leading order of the
    (already folded) singular profile; bounded channels contribute
    n - 1 + 2 m_k and can never push e at or below -1.  The fixed-time norm
    is infinite exactly when e <= -1.
    """
    if t <= 0.0:
        raise ValueError("origin exponent is defined for t > 0")
    spec = sol.spec
    candidates = []
    if not sol.singular_profile.is_zero:
        candidates.append(
            spec.n - 1 - 2.0 * spec.s + 2.0 * sol.singular_profile.leading_order
        )
    for _, prof in sol.bounded_terms:
        if not prof.is_zero:
            candidates.append(spec.n - 1 + 2.0 * prof.leading_order)
    if not candidates:
        return float(spec.n - 1)
    return float(min(candidates))


def is_conservative(sol: SpectralSolution) -> bool:
    """True for the energy-preserving shape: one cosine term, unit prefactor."""
    return (
        len(sol.bounded_terms) == 1
        and sol.bounded_terms[0][0].kind == "cosine"
        and sol.time_prefactor is unit_prefactor
    )


def energy_density(sol: SpectralSolution, t: float, r):
    """(beta r)^(2 sigma) |u_hat|^2 + |d/dt u_hat|^2 for conservative kernels.

    Evaluated through the time-dependent trigonometric form on purpose: the
    algebraic identity

        (beta r)^(2 sigma) phi0^2 + (beta r)^(-2 s) phi1^2

    makes the result exactly t-independent, so any drift observed across t
    measures the oscillatory evaluation error end to end.
    """
    if not is_conservative(sol):
        raise UnsupportedKernelError(
            "energy density requires a single cos((beta r)^sigma t) kernel "
            "with unit time prefactor"
        )
    if t < 0.0:
        raise ValueError("time must be >= 0")
    arr = _check_radii(r)
    spec = sol.spec
    br = sol.frequency_scale * arr
    w = power(br, spec.sigma) * t
    cw = np.cos(w)
    sw = np.sin(w)
    phi0 = sol.bounded_terms[0][1](arr)
    phi1 = sol.singular_profile(arr)
    u = cw * phi0 + t * power(br, -spec.s) * sin_ratio(w) * phi1
    ut = -power(br, spec.sigma) * sw * phi0 + power(br, -spec.s) * cw * phi1
    out = power(br, 2.0 * spec.sigma) * u * u + ut * ut
    if np.ndim(r) == 0:
        return float(out)
    return out
