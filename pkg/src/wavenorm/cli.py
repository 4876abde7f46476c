"""Command-line front end: sweeps, classification, fits, verification.

Subcommands:

* sweep     norm sweep over a log-spaced time grid, CSV output
* classify  regime report for the configured model, JSON output
* fit       growth-law fit (inline sweep or an existing CSV), JSON + plot
* verify    run the acceptance suite, exit nonzero on any failure

Configuration is a plain key = value file with [section] headers; see
the README for the grammar.  Exit codes: 0 success, 1 usage or
configuration problem, 2 refusal because the model sits in the blow-up
regime (its norm is infinite at every positive time).
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import re
import sys
from dataclasses import dataclass

from . import acceptance, asymptotics, models
from .errors import BlowupRegimeError, ConfigError
from .profiles import (
    RadialProfile,
    bump,
    combine,
    gaussian,
    monomial_gauss,
    power_sing,
    zero_profile,
)
from .quadrature import integrate_l2_squared
from .spectral import SpectralSolution


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage problems are exit code 1 in this tool, not argparse's default 2
    def error(self, message):
        raise _UsageError(message)


# ---------------------------------------------------------------- profiles

_TERM_RE = re.compile(
    r"^\s*(?:([-+]?[0-9.]+(?:[eE][-+]?[0-9]+)?)\s*\*\s*)?"
    r"([a-z_][a-z_0-9]*)\s*(?:\(([^()]*)\))?\s*$"
)

_BUILDERS = {
    "zero": (zero_profile, 0, 0),
    "gaussian": (gaussian, 0, 1),
    "bump": (bump, 0, 1),
    "power_sing": (power_sing, 1, 2),
    "monomial_gauss": (monomial_gauss, 1, 2),
}


def parse_profile(text: str) -> RadialProfile:
    """Parse `coeff*name(args) + ...` into a RadialProfile.

    Known atoms: zero, gaussian(a), bump(R), power_sing(p, R),
    monomial_gauss(m, a); coefficients are optional scalars.
    """
    terms = []
    for chunk in text.split("+"):
        m = _TERM_RE.match(chunk)
        if m is None:
            raise ConfigError(f"cannot parse profile term {chunk!r}")
        coeff = float(m.group(1)) if m.group(1) else 1.0
        name = m.group(2)
        if name not in _BUILDERS:
            raise ConfigError(
                f"unknown profile {name!r}; expected one of "
                f"{', '.join(sorted(_BUILDERS))}"
            )
        builder, min_args, max_args = _BUILDERS[name]
        raw = (m.group(3) or "").strip()
        args = [float(a) for a in raw.split(",")] if raw else []
        if not (min_args <= len(args) <= max_args):
            raise ConfigError(
                f"profile {name} takes {min_args}..{max_args} arguments, "
                f"got {len(args)}"
            )
        terms.append((coeff, builder(*args)))
    try:
        return combine(terms)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# ------------------------------------------------------------------ config

@dataclass(frozen=True)
class RunConfig:
    kind: str
    solution: SpectralSolution
    extra: dict
    t_min: float
    t_max: float
    count: int
    tol: float
    fit_window: tuple[float, float]
    fit_margin: float
    fit_csv: str | None


def _get(section, key, default=None):
    if section is None or key not in section:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default
    return section[key]


def _build_model(kind: str, sec) -> tuple[SpectralSolution, dict]:
    def prof(key, default="zero"):
        return parse_profile(_get(sec, key, default))

    n = int(float(_get(sec, "n")))
    extra: dict = {}
    if kind == "free_wave":
        sol = models.free_wave(n, float(_get(sec, "s", "0")),
                               prof("u0"), prof("v1"))
    elif kind == "sigma_evolution":
        sol = models.sigma_evolution(n, float(_get(sec, "sigma")),
                                     float(_get(sec, "s", "0")),
                                     prof("w0"), prof("w1"))
    elif kind == "scale_invariant":
        tau1 = float(_get(sec, "tau1"))
        sol = models.scale_invariant(n, float(_get(sec, "s", "0")), tau1,
                                     prof("u0"), prof("u1"))
        extra["tau1"] = tau1
        extra["tau2"] = models.delta_one_mass_coefficient(tau1)
    elif kind == "mgt":
        sol = models.mgt(n, float(_get(sec, "s", "0")),
                         float(_get(sec, "tau")),
                         prof("psi0"), prof("psi1"), prof("psi2"))
    elif kind == "euler":
        model = models.euler(
            n, float(_get(sec, "s", "0")), float(_get(sec, "beta")),
            profile_rho0=prof("rho0"),
            profile_div=prof("div"),
            profile_q=prof("q"),
            solenoidal_norm_sq=float(_get(sec, "solenoidal_sq", "0")),
        )
        target = _get(sec, "target", "density")
        if target == "density":
            sol = model.density
        elif target == "velocity":
            sol = model.velocity_oscillatory
            extra["solenoidal_sq"] = model.solenoidal_norm_sq
        else:
            raise ConfigError("euler target must be density or velocity")
        extra["target"] = target
    elif kind == "singular_l2":
        sol = models.singular_l2_example(n, float(_get(sec, "sigma", "1")),
                                         float(_get(sec, "eps")))
    else:
        raise ConfigError(
            f"unknown model kind {kind!r}; expected free_wave, "
            "sigma_evolution, scale_invariant, mgt, euler or singular_l2"
        )
    return sol, extra


def load_config(path: str, tol_override: float | None = None) -> RunConfig:
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        cp.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"bad config syntax: {exc}") from exc
    if "model" not in cp:
        raise ConfigError("config needs a [model] section")
    sec = cp["model"]
    kind = _get(sec, "kind")
    try:
        solution, extra = _build_model(kind, sec)
    except (ValueError, ConfigError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc

    grid = cp["grid"] if "grid" in cp else None
    t_min = float(_get(grid, "t_min", "1e2"))
    t_max = float(_get(grid, "t_max", "1e6"))
    count = int(float(_get(grid, "count", "25")))
    if not (0.0 < t_min < t_max):
        raise ConfigError("grid must satisfy 0 < t_min < t_max")
    if t_min < math.e:
        raise ConfigError(
            "grid must start at e (about 2.718) or later so the envelope "
            "column is defined"
        )
    if count < 2:
        raise ConfigError("grid count must be >= 2")

    quad = cp["quadrature"] if "quadrature" in cp else None
    tol = float(_get(quad, "tol", "1e-6"))
    if tol_override is not None:
        tol = tol_override
    if not (1e-14 < tol < 1e-2):
        raise ConfigError("tolerance must lie strictly between 1e-14 and 1e-2")

    fit = cp["fit"] if "fit" in cp else None
    fw_lo = float(_get(fit, "window_min", repr(t_min)))
    fw_hi = float(_get(fit, "window_max", repr(t_max)))
    margin = float(_get(fit, "margin", "0.5"))
    csv_path = _get(fit, "csv", "") or None
    if not (0.0 < fw_lo < fw_hi):
        raise ConfigError("fit window must satisfy 0 < window_min < window_max")
    if margin < 0.0:
        raise ConfigError("fit margin must be >= 0")

    return RunConfig(
        kind=kind,
        solution=solution,
        extra=extra,
        t_min=t_min,
        t_max=t_max,
        count=count,
        tol=tol,
        fit_window=(fw_lo, fw_hi),
        fit_margin=margin,
        fit_csv=csv_path,
    )


# ---------------------------------------------------------------- commands

def _say(args, message: str) -> None:
    if not args.quiet:
        print(message)


def _outfile(args, name: str) -> str:
    out = args.out or "."
    os.makedirs(out, exist_ok=True)
    return os.path.join(out, name)


def _regime_report(sol) -> dict:
    regime = asymptotics.solution_regime(sol)
    return {
        "model": sol.label,
        "tag": regime.tag,
        "rate": regime.rate,
        "governing": regime.governing,
        "s_effective": regime.s_effective,
    }


def _run_sweep(cfg: RunConfig):
    """Norm sweep rows, or an exit-2 refusal if the norm is infinite."""
    regime = asymptotics.solution_regime(cfg.solution)
    if regime.is_blowup:
        raise BlowupRegimeError(
            f"refusing to sweep: {cfg.solution.label} is in the blow-up "
            f"regime ({regime.governing}); the norm is infinite at every "
            "positive time"
        )
    offset = float(cfg.extra.get("solenoidal_sq", 0.0))
    rows = []
    for t in asymptotics.log_spaced_times((cfg.t_min, cfg.t_max), cfg.count):
        t = float(t)
        res = integrate_l2_squared(cfg.solution, t, tol=cfg.tol)
        if not res.finite:
            raise BlowupRegimeError(
                f"norm is infinite at t = {t:g} (origin exponent "
                f"{res.origin_exponent_value:g})"
            )
        m = math.sqrt(offset + res.value)
        d = asymptotics.solution_envelope(cfg.solution, t)
        rows.append((t, m, d, m / d, res.abs_error_estimate, res.segments_used))
    return rows


def _write_csv(path: str, rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write("t,M,D,ratio,err,segments\n")
        for t, m, d, ratio, err, seg in rows:
            fh.write(f"{t!r},{m!r},{d!r},{ratio!r},{err!r},{seg}\n")


def cmd_sweep(args) -> int:
    cfg = load_config(args.config, args.tol)
    rows = _run_sweep(cfg)
    path = _outfile(args, "sweep.csv")
    _write_csv(path, rows)
    _say(args, f"wrote {len(rows)} rows to {path}")
    return 0


def cmd_classify(args) -> int:
    cfg = load_config(args.config, args.tol)
    report = _regime_report(cfg.solution)
    report.update({k: v for k, v in cfg.extra.items() if k != "target"})
    text = json.dumps(report, indent=2, sort_keys=True)
    path = _outfile(args, "classify.json")
    with open(path, "w", newline="\n") as fh:
        fh.write(text + "\n")
    _say(args, text)
    return 0


def _read_sweep_csv(path: str):
    if not os.path.exists(path):
        raise ConfigError(f"sweep CSV not found: {path}")
    samples = []
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("t,M"):
            raise ConfigError(f"{path} does not look like a sweep CSV")
        for line in fh:
            parts = line.strip().split(",")
            if len(parts) < 2:
                continue
            samples.append((float(parts[0]), float(parts[1])))
    return samples


def _plot_script(csv_name: str, fit: asymptotics.RateFit) -> str:
    if fit.model == "power_law":
        a = fit.params["exponent"]
        c = fit.params["amplitude"]
        curve = f"{c!r} * x ** {a!r}"
    elif fit.model == "sqrt_log":
        k = fit.params["amplitude"] ** 2
        b = fit.params["offset"]
        curve = f"sqrt({k!r} * log(x) + {b!r})"
    else:
        curve = repr(fit.params["amplitude"])
    return (
        "# growth-law fit overlay; render with: gnuplot <this file>\n"
        "set terminal dumb size 120,40\n"
        "set logscale x\n"
        "set logscale y\n"
        'set datafile separator ","\n'
        'set xlabel "t"\n'
        'set ylabel "M(t)"\n'
        f'plot "{csv_name}" skip 1 using 1:2 with points title "measured M", \\\n'
        f'     "{csv_name}" skip 1 using 1:3 with lines title "envelope D", \\\n'
        f'     {curve} with lines title "fitted {fit.model}"\n'
    )


def cmd_fit(args) -> int:
    cfg = load_config(args.config, args.tol)
    if cfg.fit_csv is not None:
        samples = _read_sweep_csv(cfg.fit_csv)
        csv_name = cfg.fit_csv
    else:
        rows = _run_sweep(cfg)
        csv_path = _outfile(args, "sweep.csv")
        _write_csv(csv_path, rows)
        samples = [(t, m) for t, m, *_ in rows]
        csv_name = os.path.basename(csv_path)
    fit = asymptotics.fit_growth(
        samples, window=cfg.fit_window, simplicity_margin=cfg.fit_margin
    )
    payload = {
        "model": fit.model,
        "params": fit.params,
        "residual": fit.residual,
        "window": list(fit.window),
        "sample_count": fit.sample_count,
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    path = _outfile(args, "fit.json")
    with open(path, "w", newline="\n") as fh:
        fh.write(text + "\n")
    with open(_outfile(args, "fit_plot.gp"), "w", newline="\n") as fh:
        fh.write(_plot_script(csv_name, fit))
    _say(args, text)
    return 0


def cmd_verify(args) -> int:
    results = acceptance.run_all()
    width = max(len(r.title) for r in results)
    failed = 0
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        if not r.passed:
            failed += 1
        line = f"{r.index:2d}  {mark}  {r.title:<{width}}  [{r.seconds:6.1f}s]"
        if not args.quiet:
            line += f"\n      {r.detail}"
        print(line)
    print(f"{len(results) - failed}/{len(results)} acceptance criteria passed")
    return 0 if failed == 0 else 1


# -------------------------------------------------------------------- main

def _build_parser() -> _Parser:
    parser = _Parser(
        prog="wavenorm",
        description="Evaluate and classify large-time L2 growth of "
                    "undamped dispersive models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, needs_config in (
        ("sweep", cmd_sweep, True),
        ("classify", cmd_classify, True),
        ("fit", cmd_fit, True),
        ("verify", cmd_verify, False),
    ):
        p = sub.add_parser(name)
        if needs_config:
            p.add_argument("--config", required=True, help="model config file")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--tol", type=float, default=None,
                       help="quadrature tolerance override")
        p.add_argument("--quiet", action="store_true",
                       help="suppress informational output")
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except BlowupRegimeError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
