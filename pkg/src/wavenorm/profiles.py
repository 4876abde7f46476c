"""Radial frequency profiles with declared origin and decay data.

A profile is a scalar function phi(r) on r > 0 together with the metadata
the integrators and classifiers need:

* leading behaviour near the origin, phi(r) = c * r**m + O(r**rho),
  declared as (leading_order, leading_coeff, remainder_exponent);
* a polynomial decay bound |phi(r)| <= A * (1 + r)**(-p) valid on r >= 1,
  declared as decay_bound = (A, p);
* an optional support_radius beyond which phi vanishes identically.

The origin data is how moment information enters the asymptotics:
leading_order 0 with a nonzero coefficient plays the role of a nonvanishing
zeroth moment of the underlying data, leading_order k the role of moments
vanishing through order k - 1.  Fractional and negative leading orders are
allowed; they arise from regularity folding and from deliberately singular
data.  Declared data is trusted by construction and checked by sampling
(see RadialProfile.validate), never inferred.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np


@dataclass(frozen=True)
class RadialProfile:
    """A radial profile phi with declared origin/decay metadata."""

    func: Callable[[np.ndarray], np.ndarray]
    leading_order: float
    leading_coeff: float
    remainder_exponent: float
    decay_bound: tuple[float, float]
    support_radius: float | None = None
    label: str = ""

    def __post_init__(self) -> None:
        if not self.remainder_exponent > self.leading_order:
            raise ValueError("remainder_exponent must exceed leading_order")
        a, p = self.decay_bound
        if a < 0.0:
            raise ValueError("decay bound amplitude must be >= 0")
        if self.support_radius is not None and self.support_radius <= 0.0:
            raise ValueError("support_radius must be positive")

    def __call__(self, r):
        arr = np.asarray(r, dtype=float)
        vals = np.asarray(self.func(arr), dtype=float)
        if self.support_radius is not None:
            vals = np.where(arr <= self.support_radius, vals, 0.0)
        if np.ndim(r) == 0:
            return float(vals)
        return vals

    @property
    def is_zero(self) -> bool:
        """True when the profile is identically zero by declaration."""
        return self.leading_coeff == 0.0 and self.decay_bound[0] == 0.0

    def validate(self, n_samples: int = 64) -> list[str]:
        """Sample the declared metadata and report violations as strings.

        Flags rather than rejects: declared data wins, but a caller can ask
        whether the samples are consistent with it.
        """
        issues: list[str] = []
        if self.is_zero:
            return issues
        # Leading behaviour on (0, 0.1]: |phi - c r^m| / r^rho should stay
        # bounded as r -> 0 (compare the smallest decade to the largest).
        r = np.geomspace(1e-6, 0.1, n_samples)
        resid = np.abs(self(r) - self.leading_coeff * r**self.leading_order)
        ratio = resid / r**self.remainder_exponent
        lo = float(np.max(ratio[: n_samples // 4]))
        hi = float(np.max(ratio[-n_samples // 4 :]))
        if lo > 10.0 * (hi + 1e-9):
            issues.append(
                f"{self.label or 'profile'}: origin remainder grows like "
                f"r**rho with declared rho={self.remainder_exponent} violated"
            )
        # Decay bound on [1, 1e3].
        a, p = self.decay_bound
        r = np.geomspace(1.0, 1e3, n_samples)
        excess = np.abs(self(r)) - a * (1.0 + r) ** (-p)
        if np.any(excess > 1e-12 * max(a, 1.0)):
            issues.append(
                f"{self.label or 'profile'}: sampled values exceed the "
                f"declared decay bound A={a}, p={p}"
            )
        return issues


def zero_profile() -> RadialProfile:
    """The identically zero profile."""
    return RadialProfile(
        func=lambda r: np.zeros_like(r),
        leading_order=0.0,
        leading_coeff=0.0,
        remainder_exponent=1.0,
        decay_bound=(0.0, 0.0),
        label="zero",
    )


def _gauss_decay(a: float, p: float) -> float:
    # Exact supremum of (1+r)^p * exp(-a r^2): the critical point solves
    # 2 a r (1 + r) = p, and the objective is log-concave in r.
    rs = 0.5 * (-1.0 + math.sqrt(1.0 + 2.0 * p / a))
    return (1.0 + rs) ** p * math.exp(-a * rs * rs)


def gaussian(a: float = 1.0) -> RadialProfile:
    """phi(r) = exp(-a r^2)."""
    if a <= 0.0:
        raise ValueError("gaussian width parameter must be positive")
    p = 16.0
    return RadialProfile(
        func=lambda r: np.exp(-a * r * r),
        leading_order=0.0,
        leading_coeff=1.0,
        remainder_exponent=2.0,
        decay_bound=(_gauss_decay(a, p), p),
        label=f"gaussian({a:g})",
    )


def monomial_gauss(m: float, a: float = 1.0) -> RadialProfile:
    """phi(r) = r^m exp(-a r^2), vanishing to order m at the origin."""
    if m < 0:
        raise ValueError("monomial order must be >= 0")
    if a <= 0.0:
        raise ValueError("gaussian width parameter must be positive")
    p = 16.0
    # r^m <= (1+r)^m, so the gaussian bound at exponent p + m covers phi.
    return RadialProfile(
        func=lambda r: r**m * np.exp(-a * r * r),
        leading_order=float(m),
        leading_coeff=1.0,
        remainder_exponent=float(m) + 2.0,
        decay_bound=(_gauss_decay(a, p + m), p),
        label=f"monomial_gauss({m:g},{a:g})",
    )


def bump(radius: float = 1.0) -> RadialProfile:
    """Indicator of (0, radius]: phi = 1 inside, 0 beyond."""
    if radius <= 0.0:
        raise ValueError("bump radius must be positive")
    return RadialProfile(
        func=lambda r: np.ones_like(r),
        leading_order=0.0,
        leading_coeff=1.0,
        remainder_exponent=1.0,
        decay_bound=(1.0, 0.0),
        support_radius=radius,
        label=f"bump({radius:g})",
    )


def power_sing(p_exp: float, radius: float = 1.0) -> RadialProfile:
    """phi(r) = r^(-p_exp) on (0, radius], 0 beyond.

    Deliberately singular data; leading_order is the negative exponent.
    """
    if p_exp <= 0.0:
        raise ValueError("singularity exponent must be positive")
    if radius <= 0.0:
        raise ValueError("truncation radius must be positive")
    amp = max(1.0, radius ** (-p_exp)) if radius > 1.0 else 1.0
    return RadialProfile(
        func=lambda r: r ** (-p_exp),
        leading_order=-p_exp,
        leading_coeff=1.0,
        remainder_exponent=-p_exp + 1.0,
        decay_bound=(amp, 0.0),
        support_radius=radius,
        label=f"power_sing({p_exp:g},{radius:g})",
    )


def truncated(profile: RadialProfile, radius: float) -> RadialProfile:
    """phi restricted to (0, radius]; origin and decay data stay valid."""
    if radius <= 0.0:
        raise ValueError("truncation radius must be positive")
    if profile.is_zero:
        return profile
    if profile.support_radius is not None and profile.support_radius <= radius:
        return profile
    return replace(
        profile,
        support_radius=radius,
        label=f"{profile.label}|r<={radius:g}" if profile.label else "",
    )


def scaled(profile: RadialProfile, c: float) -> RadialProfile:
    """c * phi with metadata scaled accordingly."""
    if c == 0.0:
        return zero_profile()
    if profile.is_zero:
        return profile
    f = profile.func
    a, p = profile.decay_bound
    return replace(
        profile,
        func=lambda r: c * f(r),
        leading_coeff=c * profile.leading_coeff,
        decay_bound=(abs(c) * a, p),
        label=f"{c:g}*{profile.label}" if profile.label else "",
    )


def fold_power(profile: RadialProfile, power: float) -> RadialProfile:
    """r^power * phi(r): folds a regularity weight into the profile.

    Shifts the origin data up by `power` and weakens the decay exponent by
    the same amount (r^power <= (1+r)^power on r >= 1).
    """
    if power == 0.0:
        return profile
    if power < 0.0:
        raise ValueError("fold power must be >= 0")
    if profile.is_zero:
        return profile
    f = profile.func
    a, p = profile.decay_bound
    return replace(
        profile,
        func=lambda r: r**power * f(r),
        leading_order=profile.leading_order + power,
        remainder_exponent=profile.remainder_exponent + power,
        decay_bound=(a, p - power),
        label=f"r^{power:g}*{profile.label}" if profile.label else "",
    )


def combine(terms: Sequence[tuple[float, RadialProfile]]) -> RadialProfile:
    """Linear combination sum_i c_i * phi_i with composed metadata.

    The combined leading coefficient is the sum over terms attaining the
    minimal leading order; exact cancellation there is rejected because the
    declared origin data would be wrong.
    """
    active = [(c, p) for c, p in terms if c != 0.0 and not p.is_zero]
    if not active:
        return zero_profile()
    if len(active) == 1:
        return scaled(active[0][1], active[0][0])
    m_star = min(p.leading_order for _, p in active)
    lead = sum(c * p.leading_coeff for c, p in active if p.leading_order == m_star)
    if lead == 0.0:
        raise ValueError(
            "leading coefficients cancel exactly; restate the combination "
            "with explicit origin data"
        )
    rho_candidates = [
        p.remainder_exponent for _, p in active if p.leading_order == m_star
    ] + [p.leading_order for _, p in active if p.leading_order > m_star]
    funcs = [(c, p.func, p.support_radius) for c, p in active]

    def f(r):
        out = np.zeros_like(r)
        for c, fn, sup in funcs:
            v = c * np.asarray(fn(r), dtype=float)
            if sup is not None:
                v = np.where(r <= sup, v, 0.0)
            out = out + v
        return out

    amp = sum(abs(c) * p.decay_bound[0] for c, p in active)
    pmin = min(p.decay_bound[1] for _, p in active)
    sups = [p.support_radius for _, p in active]
    support = max(sups) if all(s is not None for s in sups) else None
    label = " + ".join(
        f"{c:g}*{p.label}" if c != 1.0 else p.label for c, p in active
    )
    return RadialProfile(
        func=f,
        leading_order=m_star,
        leading_coeff=float(lead),
        remainder_exponent=float(min(rho_candidates)),
        decay_bound=(float(amp), float(pmin)),
        support_radius=support,
        label=label,
    )
