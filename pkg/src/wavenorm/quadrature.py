"""Oscillation-aware quadrature of squared spectral norms.

M(t)^2 = omega_n * integral_0^inf |u_hat(t, r)|^2 r^(n-1) dr is computed by
a fixed panel layout derived from the oscillation phase w = (beta r)^sigma t:

* a near-origin region (0, nu_0], nu_0 the radius where w = pi/4, covered by
  dyadic panels shrinking geometrically toward 0.  The integrand there is
  non-oscillatory after the sin(w)/w rewrite but may carry an integrable
  algebraic singularity r^e with e in (-1, 0]; the dyadic panel sums then
  decay geometrically and the remaining mass below the last panel is
  estimated by ratio extrapolation (added to the value, with a share booked
  into the error estimate);
* one adaptive Gauss-Kronrod 7/15 panel per half period of the phase from
  nu_0 up to a cutoff R, with panel edges additionally split at profile
  support radii.  The cutoff grows progressively (doubling) until the
  analytic tail bound drawn from the declared decay data drops below the
  requested relative tolerance;
* the closed-form tail bound beyond R is added to abs_error_estimate.

Divergence at fixed t (squared norm infinite) is decided symbolically from
origin_exponent, never from overflow of a quadrature sum.  All integrands
here are nonnegative, which is what makes per-block relative error control
and the progressive cutoff sound.

Determinism: panels are processed in fixed-size blocks, each block summed
by numpy's pairwise reduction, and block totals combined with math.fsum.
The panel layout is a pure function of (solution, t, tol), so repeated
calls return bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    ConfigError,
    NonIntegrableError,
    NonIntegrableTailError,
    UnsupportedKernelError,
)
from .spectral import (
    ModelSpec,
    SpectralSolution,
    energy_density,
    is_conservative,
    origin_exponent,
    power,
    sin_ratio,
    surface_measure,
)

# 15-point Kronrod extension of 7-point Gauss (QUADPACK pair), ascending.
_XK = np.array([
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
])
# Embedded 7-point Gauss weights live on the odd Kronrod nodes.
_WG = np.zeros(15)
_WG[1] = _WG[13] = 0.129484966168869693270611432679082
_WG[3] = _WG[11] = 0.279705391489276667901467771423780
_WG[5] = _WG[9] = 0.381830050505118944950369775488975
_WG[7] = 0.417959183673469387755102040816327

_BLOCK = 32768          # half-period panels per processing block
_MAX_REFINE = 24        # bisection rounds inside one block
_R_CAP = 1.0e9          # absolute cutoff ceiling
_ORIGIN_MAX_LEVELS = 2000


@dataclass(frozen=True)
class OscillationSegments:
    """Half-period structure of the phase w = r^sigma t (unit frequency scale).

    nu(j) and mu(j) bound the j-th band on which |sin(r^sigma t)| >= 1/sqrt(2);
    half_period_boundary(j) is the j-th zero of the sine factor.  Segment
    lengths mu_j - nu_j are non-increasing in j for sigma >= 1 and constant
    for sigma = 1.
    """

    sigma: float
    t: float

    def nu(self, j):
        return ((0.25 + np.asarray(j)) * math.pi / self.t) ** (1.0 / self.sigma)

    def mu(self, j):
        return ((0.75 + np.asarray(j)) * math.pi / self.t) ** (1.0 / self.sigma)

    def half_period_boundary(self, j):
        return (np.asarray(j) * math.pi / self.t) ** (1.0 / self.sigma)


def make_segments(spec: ModelSpec, t: float) -> OscillationSegments:
    if t <= 0.0:
        raise ValueError("segments require t > 0")
    return OscillationSegments(sigma=spec.sigma, t=t)


@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of a radial norm integral.

    finite is False when the integral is infinite at this t; then
    origin_exponent_value records the symbolic exponent that decided it and
    value is NaN.
    """

    finite: bool
    value: float
    abs_error_estimate: float
    origin_exponent_value: float
    segments_used: int
    function_evals: int

    @property
    def is_divergent(self) -> bool:
        return not self.finite


def _gk_panels(f, a: np.ndarray, b: np.ndarray):
    """Apply the 7/15 pair on each panel [a_i, b_i]; returns (k15, |k15-g7|)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    x = c[:, None] + h[:, None] * _XK[None, :]
    y = f(x.reshape(-1)).reshape(x.shape)
    k = (y @ _WK) * h
    g = (y @ _WG) * h
    return k, np.abs(k - g)


def _adaptive_block(f, edges: np.ndarray, rel_tol: float):
    """Integrate a nonnegative f over consecutive panels with local refinement.

    Returns (value, error, function_evals, panel_count).  Refinement bisects
    panels whose error estimate exceeds an equidistributed share of the
    block's relative budget.
    """
    a = edges[:-1].copy()
    b = edges[1:].copy()
    v, e = _gk_panels(f, a, b)
    evals = a.size * 15
    for _ in range(_MAX_REFINE):
        total = float(np.sum(v))
        err = float(np.sum(e))
        if total <= 0.0 or err <= 0.5 * rel_tol * total:
            break
        thresh = 0.5 * rel_tol * total / v.size
        bad = e > thresh
        if not bad.any():
            break
        mid = 0.5 * (a[bad] + b[bad])
        v1, e1 = _gk_panels(f, a[bad], mid)
        v2, e2 = _gk_panels(f, mid, b[bad])
        evals += 2 * mid.size * 15
        a = np.concatenate([a[~bad], a[bad], mid])
        b = np.concatenate([b[~bad], mid, b[bad]])
        v = np.concatenate([v[~bad], v1, v2])
        e = np.concatenate([e[~bad], e1, e2])
    return float(np.sum(v)), float(np.sum(e)), evals, int(v.size)


def _active_profiles(sol: SpectralSolution):
    bounded = [(c, p) for c, p in sol.bounded_terms if not p.is_zero]
    singular = None if sol.singular_profile.is_zero else sol.singular_profile
    return bounded, singular


def _support_cap(sol: SpectralSolution) -> float | None:
    """Radius beyond which the integrand vanishes, when every channel has one."""
    bounded, singular = _active_profiles(sol)
    radii = [p.support_radius for _, p in bounded]
    if singular is not None:
        radii.append(singular.support_radius)
    if not radii or any(r is None for r in radii):
        return None
    return max(radii)


def _breakpoints(sol: SpectralSolution) -> list[float]:
    bounded, singular = _active_profiles(sol)
    pts = {p.support_radius for _, p in bounded if p.support_radius is not None}
    if singular is not None and singular.support_radius is not None:
        pts.add(singular.support_radius)
    return sorted(pts)


def _power_tail(radius: float, q: float, d: float) -> float:
    """Bound on integral_R^inf (1+r)^(-q) r^d dr, assuming q - d > 1, R >= 1."""
    if q >= 0.0:
        scale = 1.0
    else:
        scale = 2.0 ** (-q)  # (1+r)^(-q) <= (2r)^(-q) for r >= 1, q < 0
    return scale * radius ** (d - q + 1.0) / (q - d - 1.0)


def _m2_integrand(sol: SpectralSolution, t: float) -> Callable:
    spec = sol.spec
    beta = sol.frequency_scale
    sigma, s = spec.sigma, spec.s
    nm1 = float(spec.n - 1)
    pref = sol.time_prefactor(t)
    pref2 = pref * pref
    bounded, singular = _active_profiles(sol)

    def f(r):
        br = beta * r if beta != 1.0 else r
        if singular is not None:
            w = power(br, sigma) * t
            u = (t * power(br, -s) * sin_ratio(w)) * singular(r)
        else:
            u = np.zeros_like(r)
        for coeff, prof in bounded:
            u = u + coeff.func(t, r) * prof(r)
        if np.iscomplexobj(u):
            a2 = u.real * u.real + u.imag * u.imag
        else:
            a2 = u * u
        return pref2 * a2 * power(r, nm1)

    return f


def _m2_tail_check(sol: SpectralSolution) -> None:
    spec = sol.spec
    bounded, singular = _active_profiles(sol)
    for _, p in bounded:
        if p.support_radius is None and 2.0 * p.decay_bound[1] <= spec.n:
            raise NonIntegrableTailError(
                f"bounded-channel profile {p.label or ''} decays too slowly "
                f"(p = {p.decay_bound[1]}) for a finite tail bound in "
                f"dimension n = {spec.n}"
            )
    if singular is not None and singular.support_radius is None:
        d = spec.n - 1 - 2.0 * spec.sigma - 2.0 * spec.s
        if 2.0 * singular.decay_bound[1] - d <= 1.0:
            raise NonIntegrableTailError(
                "singular-channel profile decays too slowly for a finite "
                "tail bound"
            )


def _m2_tail(sol: SpectralSolution, t: float, radius: float) -> float:
    """Certified bound on the norm integrand's mass beyond `radius` (R >= 1)."""
    spec = sol.spec
    beta = sol.frequency_scale
    bounded, singular = _active_profiles(sol)
    pref = sol.time_prefactor(t)
    channels = len(bounded) + (1 if singular is not None else 0)
    total = 0.0
    for coeff, p in bounded:
        if p.support_radius is not None and radius >= p.support_radius:
            continue
        a, pk = p.decay_bound
        total += (coeff.bound * a) ** 2 * _power_tail(radius, 2.0 * pk, spec.n - 1.0)
    if singular is not None and not (
        singular.support_radius is not None and radius >= singular.support_radius
    ):
        a, pk = singular.decay_bound
        d = spec.n - 1.0 - 2.0 * spec.sigma - 2.0 * spec.s
        total += a * a * beta ** (-2.0 * (spec.sigma + spec.s)) * _power_tail(
            radius, 2.0 * pk, d
        )
    return pref * pref * channels * total


def _energy_integrand(sol: SpectralSolution, t: float) -> Callable:
    nm1 = float(sol.spec.n - 1)

    def f(r):
        return energy_density(sol, t, r) * power(r, nm1)

    return f


def _energy_tail_check(sol: SpectralSolution) -> None:
    spec = sol.spec
    bounded, singular = _active_profiles(sol)
    if bounded:
        p = bounded[0][1]
        if p.support_radius is None and (
            2.0 * p.decay_bound[1] - (spec.n - 1.0 + 2.0 * spec.sigma) <= 1.0
        ):
            raise NonIntegrableTailError(
                "elastic-channel profile decays too slowly for a finite "
                "energy tail bound"
            )
    if singular is not None and singular.support_radius is None:
        if 2.0 * singular.decay_bound[1] - (spec.n - 1.0 - 2.0 * spec.s) <= 1.0:
            raise NonIntegrableTailError(
                "singular-channel profile decays too slowly for a finite "
                "energy tail bound"
            )


def _energy_tail(sol: SpectralSolution, t: float, radius: float) -> float:
    spec = sol.spec
    beta = sol.frequency_scale
    bounded, singular = _active_profiles(sol)
    total = 0.0
    if bounded:
        p = bounded[0][1]
        if not (p.support_radius is not None and radius >= p.support_radius):
            a, pk = p.decay_bound
            total += beta ** (2.0 * spec.sigma) * a * a * _power_tail(
                radius, 2.0 * pk, spec.n - 1.0 + 2.0 * spec.sigma
            )
    if singular is not None and not (
        singular.support_radius is not None and radius >= singular.support_radius
    ):
        a, pk = singular.decay_bound
        total += beta ** (-2.0 * spec.s) * a * a * _power_tail(
            radius, 2.0 * pk, spec.n - 1.0 - 2.0 * spec.s
        )
    return total


class _Accumulator:
    """Block sums combined exactly; deterministic for a fixed panel layout."""

    def __init__(self) -> None:
        self.blocks: list[float] = []
        self.err = 0.0
        self.evals = 0
        self.panels = 0

    def add(self, value: float, err: float, evals: int, panels: int) -> None:
        self.blocks.append(value)
        self.err += err
        self.evals += evals
        self.panels += panels

    @property
    def total(self) -> float:
        return math.fsum(self.blocks)


def _oscillatory_region(
    f, sol: SpectralSolution, t: float, tol: float, acc: _Accumulator,
    r_lo: float, tail_fn,
) -> float:
    """Integrate [r_lo, R) with half-period panels, growing R until the tail
    bound clears the tolerance.  Returns the tail bound actually added."""
    beta = sol.frequency_scale
    sigma = sol.spec.sigma
    brk = _breakpoints(sol)
    cap = _support_cap(sol)

    def boundary(j):
        return (j * math.pi / t) ** (1.0 / sigma) / beta

    def j_of(r):
        return (beta * r) ** sigma * t / math.pi

    def advance(r_from: float, r_to: float) -> None:
        if r_to <= r_from:
            return
        j_lo = int(math.floor(j_of(r_from))) + 1
        j_hi = int(math.floor(j_of(r_to)))
        start = r_from
        j = j_lo
        while True:
            j_end = min(j + _BLOCK, j_hi + 1)
            mids = boundary(np.arange(j, j_end, dtype=float)) if j_end > j else np.empty(0)
            mids = mids[(mids > start * (1.0 + 1e-15)) & (mids < r_to * (1.0 - 1e-15))]
            edges = np.concatenate([[start], mids])
            if j_end > j_hi:
                edges = np.concatenate([edges, [r_to]])
            cuts = [x for x in brk if edges[0] < x < edges[-1]]
            if cuts:
                edges = np.unique(np.concatenate([edges, cuts]))
            if edges.size >= 2:
                acc.add(*_adaptive_block(f, edges, tol))
            start = edges[-1]
            if j_end > j_hi:
                break
            j = j_end

    if cap is not None:
        if cap > r_lo:
            advance(r_lo, cap)
        return 0.0

    radius = max(1.0, 2.0 * r_lo, 2.0 * boundary(1))
    reached = r_lo
    while True:
        advance(reached, radius)
        reached = radius
        tail = tail_fn(sol, t, radius)
        if tail <= 0.5 * tol * acc.total or tail <= 1e-300 or radius >= _R_CAP:
            acc.err += tail
            return tail
        radius *= 2.0


def _origin_region(f, tol: float, acc: _Accumulator, top: float) -> None:
    """Dyadic descent on (0, top] with geometric-tail extrapolation."""
    if top <= 0.0:
        return
    prev = None
    hi = top
    for level in range(_ORIGIN_MAX_LEVELS):
        lo = 0.5 * hi
        val, err, evals, panels = _adaptive_block(f, np.array([lo, hi]), tol)
        if not math.isfinite(val):
            # profile magnitudes overflowed; stop descending and book the
            # last finite level as the remaining uncertainty
            acc.err += prev if prev is not None else 0.0
            return
        acc.add(val, err, evals, panels)
        # stopping rules engage only below unit scale: when t is tiny the
        # descent starts at a huge nu_0 and the top cells underflow to zero
        # long before the profiles' O(1) mass is reached
        if prev is not None and hi <= 1.0:
            if val <= 0.0 and prev <= 0.0:
                return
            if prev > 0.0 and val < prev:
                ratio = val / prev
                if ratio < 0.999:
                    tail = val * ratio / (1.0 - ratio)
                    total = acc.total
                    if level >= 4 and tail <= 0.25 * tol * total:
                        acc.blocks.append(tail)
                        acc.err += 0.5 * tail
                        return
        prev = val
        hi = lo
        if hi < 1e-280:
            if prev is not None and prev > 0.0:
                acc.err += 2.0 * prev
            return


def integrate_l2_squared(
    sol: SpectralSolution, t: float, tol: float = 1e-6
) -> QuadratureResult:
    """omega_n * integral_0^inf |u_hat(t, r)|^2 r^(n-1) dr, or a divergence verdict.

    Requires t > 0 and tol in (1e-14, 1e-2).  The returned value carries an
    absolute error estimate combining panel estimates, the near-origin
    extrapolation share and the analytic large-r tail bound.
    """
    if not (1e-14 < tol < 1e-2):
        raise ConfigError("tolerance must lie strictly between 1e-14 and 1e-2")
    if t <= 0.0 or not math.isfinite(t):
        raise ValueError("integration time must be positive and finite")
    e0 = origin_exponent(sol, t)
    if e0 <= -1.0:
        return QuadratureResult(
            finite=False,
            value=math.nan,
            abs_error_estimate=math.inf,
            origin_exponent_value=e0,
            segments_used=0,
            function_evals=0,
        )
    _m2_tail_check(sol)
    f = _m2_integrand(sol, t)
    acc = _Accumulator()
    beta = sol.frequency_scale
    nu0 = (0.25 * math.pi / t) ** (1.0 / sol.spec.sigma) / beta
    cap = _support_cap(sol)
    origin_top = nu0 if cap is None else min(nu0, cap)
    _oscillatory_region(f, sol, t, tol, acc, origin_top, _m2_tail)
    _origin_region(f, tol, acc, origin_top)
    omega = surface_measure(sol.spec.n)
    return QuadratureResult(
        finite=True,
        value=omega * acc.total,
        abs_error_estimate=omega * acc.err,
        origin_exponent_value=e0,
        segments_used=acc.panels,
        function_evals=acc.evals,
    )


def integrate_energy(
    sol: SpectralSolution, t: float, tol: float = 1e-10
) -> QuadratureResult:
    """omega_n * integral of the conservative energy density, radial weight included.

    Only defined for the conservative kernel shape (energy_density raises
    otherwise).  The exact value is independent of t; computing it through
    the oscillatory form at several t values measures end-to-end panel
    accuracy.
    """
    if not (1e-14 < tol < 1e-2):
        raise ConfigError("tolerance must lie strictly between 1e-14 and 1e-2")
    if t < 0.0 or not math.isfinite(t):
        raise ValueError("time must be >= 0 and finite")
    if not is_conservative(sol):
        raise UnsupportedKernelError(
            "energy identity holds only for the single-cosine conservative "
            "kernel with unit prefactor"
        )
    spec = sol.spec
    bounded, singular = _active_profiles(sol)
    if singular is not None:
        exponent = spec.n - 1.0 - 2.0 * spec.s + 2.0 * singular.leading_order
        if exponent <= -1.0:
            raise NonIntegrableError(
                "energy is infinite: singular channel carries too little "
                "regularity at the origin"
            )
    if bounded:
        m0 = bounded[0][1].leading_order
        if spec.n - 1.0 + 2.0 * spec.sigma + 2.0 * m0 <= -1.0:
            raise NonIntegrableError(
                "energy is infinite: elastic channel is too singular at the "
                "origin"
            )
    _energy_tail_check(sol)
    f = _energy_integrand(sol, t)
    acc = _Accumulator()
    # panel layout at t = 0 degenerates (no oscillation); lay panels as if t = 1
    t_layout = t if t > 0.0 else 1.0
    nu0 = (0.25 * math.pi / t_layout) ** (1.0 / spec.sigma) / sol.frequency_scale
    cap = _support_cap(sol)
    origin_top = nu0 if cap is None else min(nu0, cap)
    _oscillatory_region(f, sol, t_layout, tol, acc, origin_top, _energy_tail)
    _origin_region(f, tol, acc, origin_top)
    omega = surface_measure(spec.n)
    return QuadratureResult(
        finite=True,
        value=omega * acc.total,
        abs_error_estimate=omega * acc.err,
        origin_exponent_value=origin_exponent(sol, t_layout),
        segments_used=acc.panels,
        function_evals=acc.evals,
    )
