"""Large-time regime classification, growth envelopes, and empirical fits.

The dispersive dichotomy for the kernel shape handled here depends on the
dimension n only through its position relative to two thresholds built from
the multiplier order sigma, the singularity strength s, and the vanishing
order m of the singular data profile at the origin.  With the effective
strength s_eff = s - m:

    n <= 2 s_eff             squared norm infinite at every positive time
    2 s_eff < n < 2 sigma + 2 s_eff   polynomial growth t^(1 - (n - 2 s_eff)/(2 sigma))
    n = 2 sigma + 2 s_eff    logarithmic growth, norm ~ sqrt(ln t)
    n > 2 sigma + 2 s_eff    bounded, neither decay nor growth

fit_growth recovers the regime empirically from (t, M) samples by comparing
three candidate laws; sandwich_check verifies a two-sided envelope bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BlowupRegimeError, ConfigError
from .spectral import ModelSpec, SpectralSolution

# Fixed defaults so repeated runs and recorded acceptance bands line up.
DEFAULT_WINDOW = (1.0e2, 1.0e6)
DEFAULT_SAMPLE_COUNT = 25

# Equality of floats like n == 2*sigma + 2*s_eff is decided to this slack.
_EDGE_TOL = 1e-9

FINITE_TIME_BLOWUP = "finite_time_blowup"
POLYNOMIAL_GROWTH = "polynomial_growth"
LOG_GROWTH = "log_growth"
CRITICAL_LOG_GROWTH = "critical_log_growth"
BOUNDED = "bounded"


@dataclass(frozen=True)
class Regime:
    """Classification verdict plus the inequality that produced it."""

    tag: str
    rate: float | None
    governing: str
    s_effective: float

    @property
    def is_blowup(self) -> bool:
        return self.tag == FINITE_TIME_BLOWUP

    @property
    def grows(self) -> bool:
        return self.tag in (POLYNOMIAL_GROWTH, LOG_GROWTH, CRITICAL_LOG_GROWTH)


def classify_regime(spec: ModelSpec, data_moment_order: float = 0.0) -> Regime:
    """Place (n, sigma, s) relative to the growth thresholds.

    data_moment_order is the vanishing order m of the singular data profile
    at frequency zero (m = 0 when the profile has a nonzero limit there).
    Only the difference s - m matters, so fractional and negative orders,
    which arise when algebraic factors are folded into the profile, are
    accepted as-is.
    """
    n = float(spec.n)
    sigma = spec.sigma
    m = float(data_moment_order)
    s_eff = spec.s - m
    lower = 2.0 * s_eff
    upper = 2.0 * sigma + 2.0 * s_eff
    if n <= lower + _EDGE_TOL:
        return Regime(
            tag=FINITE_TIME_BLOWUP,
            rate=None,
            governing=f"n = {n:g} <= 2*s_eff = {lower:g}",
            s_effective=s_eff,
        )
    if abs(n - upper) <= _EDGE_TOL:
        tag = CRITICAL_LOG_GROWTH if m >= 1.0 - _EDGE_TOL else LOG_GROWTH
        return Regime(
            tag=tag,
            rate=None,
            governing=f"n = {n:g} = 2*sigma + 2*s_eff = {upper:g}",
            s_effective=s_eff,
        )
    if n < upper:
        rate = 1.0 - (n - lower) / (2.0 * sigma)
        return Regime(
            tag=POLYNOMIAL_GROWTH,
            rate=rate,
            governing=f"2*s_eff = {lower:g} < n = {n:g} < 2*sigma + 2*s_eff = {upper:g}",
            s_effective=s_eff,
        )
    return Regime(
        tag=BOUNDED,
        rate=None,
        governing=f"n = {n:g} > 2*sigma + 2*s_eff = {upper:g}",
        s_effective=s_eff,
    )


def envelope(spec: ModelSpec, t: float) -> float:
    """Optimal growth envelope for zero-vanishing-order data at time t >= e."""
    if t < math.e:
        raise ValueError("envelope is normalized for t >= e")
    n = float(spec.n)
    lower = 2.0 * spec.s
    upper = 2.0 * spec.sigma + 2.0 * spec.s
    if n <= lower + _EDGE_TOL:
        raise BlowupRegimeError(
            "no finite envelope exists: the squared norm is infinite for "
            f"n = {n:g} <= 2*s = {lower:g}"
        )
    if abs(n - upper) <= _EDGE_TOL:
        return math.sqrt(math.log(t))
    if n < upper:
        return t ** (1.0 - (n - lower) / (2.0 * spec.sigma))
    return 1.0


def regime_envelope(regime: Regime, t: float) -> float:
    """Envelope branch selected by an already-computed regime."""
    if t < math.e:
        raise ValueError("envelope is normalized for t >= e")
    if regime.is_blowup:
        raise BlowupRegimeError("no finite envelope exists in the blow-up regime")
    if regime.tag == POLYNOMIAL_GROWTH:
        return t ** regime.rate
    if regime.tag in (LOG_GROWTH, CRITICAL_LOG_GROWTH):
        return math.sqrt(math.log(t))
    return 1.0


def solution_regime(sol: SpectralSolution) -> Regime:
    """Regime of a spectral solution, read off its singular channel.

    A solution without an active singular channel has no growth mechanism;
    it is reported as bounded.
    """
    prof = sol.singular_profile
    if prof.is_zero:
        return Regime(
            tag=BOUNDED,
            rate=None,
            governing="no singular oscillatory channel",
            s_effective=sol.spec.s,
        )
    return classify_regime(sol.spec, prof.leading_order)


def solution_envelope(sol: SpectralSolution, t: float) -> float:
    """Predicted magnitude scale at time t: |prefactor| times the envelope."""
    return abs(sol.time_prefactor(t)) * regime_envelope(solution_regime(sol), t)


def log_spaced_times(window=DEFAULT_WINDOW, count: int = DEFAULT_SAMPLE_COUNT):
    t0, t1 = window
    if not (0.0 < t0 < t1) or count < 2:
        raise ConfigError("window must satisfy 0 < t_min < t_max with >= 2 samples")
    return np.geomspace(t0, t1, count)


@dataclass(frozen=True)
class RateFit:
    """Growth law selected from (t, M) samples, with goodness of fit.

    model is one of "power_law", "sqrt_log", "constant"; params holds the
    fitted constants; residual is the root-mean-square log-residual of the
    selected model over the window.
    """

    model: str
    params: dict[str, float]
    residual: float
    window: tuple[float, float]
    sample_count: int

    @property
    def exponent(self) -> float:
        """Growth exponent of the selected law (0 for non-power laws)."""
        return self.params.get("exponent", 0.0)


def _fit_candidates(log_t: np.ndarray, m: np.ndarray, log_m: np.ndarray):
    """Return [(name, params, rms log-residual)] for the three laws.

    Laws that cannot represent the data (non-positive fitted level) get an
    infinite residual rather than being dropped, keeping the selection order
    stable.
    """
    out = []

    level = float(np.mean(log_m))
    res = float(np.sqrt(np.mean((log_m - level) ** 2)))
    out.append(("constant", {"amplitude": math.exp(level)}, res))

    # squared norm against ln t, linear least squares with intercept
    design = np.column_stack([log_t, np.ones_like(log_t)])
    (slope, intercept), *_ = np.linalg.lstsq(design, m * m, rcond=None)
    model_sq = slope * log_t + intercept
    if slope > 0.0 and np.all(model_sq > 0.0):
        res = float(np.sqrt(np.mean((log_m - 0.5 * np.log(model_sq)) ** 2)))
        out.append((
            "sqrt_log",
            {"amplitude": math.sqrt(slope), "offset": float(intercept)},
            res,
        ))
    else:
        out.append(("sqrt_log", {"amplitude": math.nan, "offset": math.nan}, math.inf))

    (a, logc), *_ = np.linalg.lstsq(design, log_m, rcond=None)
    res = float(np.sqrt(np.mean((log_m - (a * log_t + logc)) ** 2)))
    out.append(("power_law", {"exponent": float(a), "amplitude": math.exp(logc)}, res))

    return out


def fit_growth(
    samples,
    window=DEFAULT_WINDOW,
    simplicity_margin: float = 0.5,
) -> RateFit:
    """Select the simplest growth law consistent with the samples.

    samples is a sequence of (t, M) pairs; only those with t inside the
    window participate.  Candidate laws are ranked constant, then sqrt-log,
    then power law, and the first whose rms log-residual is within
    (1 + simplicity_margin) of the best is returned.  The margin keeps a
    power law with a near-zero fitted exponent from displacing a genuinely
    flat law on transient noise.
    """
    t0, t1 = window
    if not (0.0 < t0 < t1):
        raise ConfigError("window must satisfy 0 < t_min < t_max")
    pts = [(float(t), float(v)) for t, v in samples if t0 <= float(t) <= t1]
    if len(pts) < 8:
        raise ValueError(
            f"need at least 8 samples inside the window, got {len(pts)}"
        )
    if any(v <= 0.0 for _, v in pts):
        raise ValueError("all norm samples must be positive to fit growth laws")
    ts = np.array([t for t, _ in pts])
    ms = np.array([v for _, v in pts])
    log_t = np.log(ts)
    log_m = np.log(ms)

    candidates = _fit_candidates(log_t, ms, log_m)
    best = min(res for _, _, res in candidates)
    for name, params, res in candidates:
        if res <= best * (1.0 + simplicity_margin) + 1e-15:
            return RateFit(
                model=name,
                params=params,
                residual=res,
                window=(t0, t1),
                sample_count=len(pts),
            )
    raise AssertionError("unreachable: the minimal-residual model always qualifies")


@dataclass(frozen=True)
class SandwichReport:
    """Two-sided envelope comparison over a shared time grid."""

    passed: bool
    band: tuple[float, float]
    ratio_min: float
    ratio_max: float
    t_at_min: float
    t_at_max: float

    def __str__(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return (
            f"sandwich {verdict}: ratio in [{self.ratio_min:.6g}, "
            f"{self.ratio_max:.6g}] against band [{self.band[0]:g}, "
            f"{self.band[1]:g}] (extremes at t = {self.t_at_min:g}, "
            f"{self.t_at_max:g})"
        )


def sandwich_check(samples, envelope_values, band) -> SandwichReport:
    """Check c_low <= M(t)/D(t) <= c_high pointwise on a shared grid.

    samples is a sequence of (t, M); envelope_values the matching D(t)
    sequence.  Mismatched lengths or non-positive envelope values are
    configuration errors, not failures.
    """
    c_low, c_high = band
    if not (0.0 < c_low < c_high):
        raise ConfigError("band must satisfy 0 < c_low < c_high")
    pts = list(samples)
    env = [float(d) for d in envelope_values]
    if len(pts) != len(env):
        raise ConfigError(
            f"sample grid ({len(pts)}) and envelope grid ({len(env)}) differ"
        )
    if not pts:
        raise ConfigError("sandwich check needs a non-empty grid")
    if any(d <= 0.0 for d in env):
        raise ConfigError("envelope values must be positive")
    ratios = [(float(v) / d, float(t)) for (t, v), d in zip(pts, env)]
    r_min, t_min = min(ratios)
    r_max, t_max = max(ratios)
    return SandwichReport(
        passed=(r_min >= c_low and r_max <= c_high),
        band=(float(c_low), float(c_high)),
        ratio_min=r_min,
        ratio_max=r_max,
        t_at_min=t_min,
        t_at_max=t_max,
    )
