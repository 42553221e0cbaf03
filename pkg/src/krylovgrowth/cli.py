"""Command-line front end: parameter sweeps, figure data, verification.

One entry point (``krylov-growth``) drives the library over a time grid.
Grid points are evaluated independently in grid order, so identical
configurations produce byte-identical output files.

Exit codes: 0 success, 1 invalid configuration, 2 numerical failure
(truncation overflow, chain edge leak, non-convergent series; the message
carries the offending alpha, beta, t, dim), 3 authoritative verification
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from .algebra import LiouvillianSpec, build_liouvillian
from .coherent import (
    DisplacementParams,
    SL2RWeight,
    autocorrelator_alt_closed_form,
    autocorrelator_t,
    closed_form_params,
    complexity_closed,
    late_time_growth_exponent,
    mehler_normalization_check,
    moment_n,
    phi_series,
    schrodinger_complexity_t,
    sl2r_profile,
    variance_alt_closed_form,
)
from .errors import KrylovGrowthError, TruncationOverflow
from .fock import FockVector, TruncationConfig, evolve_state
from .lanczos import chain_complexity, lanczos_tridiagonalize, propagate_chain

__all__ = ["SweepConfig", "ResultRow", "run_sweep", "figure_data", "verify", "main"]

MODES = ("complexity", "variance", "distribution", "autocorrelator", "lanczos", "verify")
FIGURES = ("fig1", "fig2", "fig3")


@dataclass(frozen=True)
class SweepConfig:
    alpha: float = 1.0
    beta: float = 1.0
    t_min: float = 0.0
    t_max: float = 2.0
    steps: int = 41
    dim: int = 256
    tol: float = 1e-10
    mode: str = "complexity"

    def __post_init__(self):
        if self.t_min > self.t_max:
            raise ValueError(f"t_min {self.t_min} exceeds t_max {self.t_max}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if self.dim < 4:
            raise ValueError(f"dim must be >= 4, got {self.dim}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")

    def t_grid(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.t_min])
        return np.linspace(self.t_min, self.t_max, self.steps)

    def spec(self) -> LiouvillianSpec:
        return LiouvillianSpec(self.alpha, self.beta)


@dataclass(frozen=True)
class ResultRow:
    t: float
    values: Dict[str, float]
    method: str
    amplitudes: Optional[FockVector] = field(default=None, compare=False)


def _attach(err: KrylovGrowthError, cfg: SweepConfig, t: float) -> KrylovGrowthError:
    err.context.update(alpha=cfg.alpha, beta=cfg.beta, t=t, dim=cfg.dim)
    return err


def run_sweep(cfg: SweepConfig) -> List[ResultRow]:
    """One row per grid point; deterministic for a fixed config."""
    spec = cfg.spec()
    ts = cfg.t_grid()
    rows: List[ResultRow] = []
    if cfg.mode == "complexity":
        for t in ts:
            rows.append(ResultRow(float(t), {"K": schrodinger_complexity_t(spec, float(t))},
                                  "closed_form"))
    elif cfg.mode == "variance":
        for t in ts:
            try:
                p = closed_form_params(spec, float(t))
                m1 = moment_n(p, 1)
                m2 = moment_n(p, 2)
            except KrylovGrowthError as e:
                raise _attach(e, cfg, float(t))
            rows.append(ResultRow(float(t), {"K": m1, "sigma2": m2 - m1 * m1},
                                  "closed_form"))
    elif cfg.mode == "distribution":
        series = []
        for t in ts:
            try:
                series.append(phi_series(closed_form_params(spec, float(t)), tol=cfg.tol))
            except KrylovGrowthError as e:
                raise _attach(e, cfg, float(t))
        width = max(s.k_max + 1 for s in series)
        for t, s in zip(ts, series):
            probs = np.zeros(width)
            probs[: s.k_max + 1] = s.probabilities()
            values = {f"p{k}": float(probs[k]) for k in range(width)}
            rows.append(ResultRow(float(t), values, "closed_form",
                                  amplitudes=FockVector(width, np.pad(s.phi, (0, width - s.k_max - 1)))))
    elif cfg.mode == "autocorrelator":
        for t in ts:
            rows.append(ResultRow(float(t), {
                "autocorrelator": autocorrelator_t(spec, float(t)),
                "alt_form": autocorrelator_alt_closed_form(spec, float(t)),
            }, "closed_form"))
    elif cfg.mode == "lanczos":
        tc = TruncationConfig(dim=cfg.dim, tail_tolerance=cfg.tol)
        L = build_liouvillian(spec, tc)
        seed = FockVector.basis_state(cfg.dim, 0)
        m = min(cfg.dim // 2, 128)
        try:
            chain = lanczos_tridiagonalize(L, seed, m)
            wfs = propagate_chain(chain, [float(t) for t in ts])
        except KrylovGrowthError as e:
            raise _attach(e, cfg, getattr(e, "t", float(ts[-1])))
        for t, wf in zip(ts, wfs):
            rows.append(ResultRow(float(t), {"K_chain": chain_complexity(wf)}, "lanczos_chain"))
    else:
        raise ValueError(f"run_sweep does not handle mode {cfg.mode!r}; use verify()")
    return rows


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def rows_to_csv(rows: List[ResultRow]) -> str:
    keys = list(rows[0].values.keys()) if rows else []
    lines = ["t," + ",".join(keys)]
    for row in rows:
        lines.append(",".join([_fmt(row.t)] + [_fmt(row.values[k]) for k in keys]))
    return "\n".join(lines) + "\n"


def rows_to_json(cfg: SweepConfig, rows: List[ResultRow]) -> str:
    payload = {
        "config": asdict(cfg),
        "rows": [
            {
                "t": row.t,
                "values": row.values,
                "method": row.method,
                **(
                    {"amplitudes": json.loads(row.amplitudes.to_json_pairs())}
                    if row.amplitudes is not None
                    else {}
                ),
            }
            for row in rows
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def figure_data(which: str, outdir: Path) -> List[Path]:
    """Emit plot-ready CSV for one of the three reference figures.

    fig1: number-basis probabilities at alpha=0, beta=1, t=1 next to the
    h=1/4 lowest-weight profile (pairwise equal on even sites, shifted).
    fig2: K(t) for (alpha, beta) = (0.01, 1) and (1, 0.01) on t in [0, 5].
    fig3: autocorrelator for (1, 0), (0, 1), (1, 1) on t in [0, 3].
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / f"{which}.csv"
    if which == "fig1":
        series = phi_series(closed_form_params(LiouvillianSpec(0.0, 1.0), 1.0), tol=1e-12)
        sl2r, _ = sl2r_profile(SL2RWeight(0.25), 1.0, 1.0, tol=1e-12)
        kmax = 60
        probs = series.probabilities()
        sl2r_probs = sl2r.probabilities()
        lines = ["k,schrodinger_prob,sl2r_prob"]
        for k in range(kmax + 1):
            p1 = float(probs[k]) if k <= series.k_max else 0.0
            p2 = float(sl2r_probs[k]) if k <= sl2r.k_max else 0.0
            lines.append(f"{k},{_fmt(p1)},{_fmt(p2)}")
    elif which == "fig2":
        ts = np.linspace(0.0, 5.0, 101)
        red = LiouvillianSpec(0.01, 1.0)
        black = LiouvillianSpec(1.0, 0.01)
        lines = ["t,K_alpha_0.01_beta_1,K_alpha_1_beta_0.01"]
        for t in ts:
            lines.append(",".join(_fmt(x) for x in (
                t, schrodinger_complexity_t(red, float(t)),
                schrodinger_complexity_t(black, float(t)))))
    elif which == "fig3":
        ts = np.linspace(0.0, 3.0, 121)
        specs = [LiouvillianSpec(1.0, 0.0), LiouvillianSpec(0.0, 1.0), LiouvillianSpec(1.0, 1.0)]
        lines = ["t,auto_alpha_1_beta_0,auto_alpha_0_beta_1,auto_alpha_1_beta_1"]
        for t in ts:
            lines.append(",".join(_fmt(x) for x in (
                [t] + [autocorrelator_t(s, float(t)) for s in specs])))
    else:
        raise ValueError(f"unknown figure {which!r}; choose from {FIGURES}")
    path.write_text("\n".join(lines) + "\n")
    return [path]


def verify(cfg: SweepConfig) -> tuple[dict, bool]:
    """Cross-method equivalence suite plus the documented-discrepancy probes.

    Authoritative checks (failures flip the ok flag, CLI exit 3): the
    oracle-vs-closed-form amplitude match at the grid points representable
    at cfg.dim, the closed-form normalization residual, the closed-form
    complexity vs direct summation, and the exact limit recovery.
    Grid times whose evolved state trips the guard band at cfg.dim are
    reported as truncation-skipped, not failed. Documented discrepancies
    (alternative variance form, alternative autocorrelator form, late-time
    exponent) are reported with their deviations and never affect the flag.
    """
    spec = cfg.spec()
    tc = TruncationConfig(dim=cfg.dim, tail_tolerance=cfg.tol)
    report: dict = {"config": asdict(cfg)}
    ok = True

    # oracle vs closed form on the representable grid points
    L = build_liouvillian(spec, tc)
    seed = FockVector.basis_state(cfg.dim, 0)
    max_dev = 0.0
    checked, skipped = [], []
    for t in cfg.t_grid():
        t = float(t)
        try:
            psi = evolve_state(L, t, seed, tc)
        except TruncationOverflow:
            skipped.append(t)
            continue
        series = phi_series(closed_form_params(spec, t), tol=1e-12, max_k=16384)
        n = min(series.k_max + 1, cfg.dim)
        closed = series.phi[:n]
        mask = np.abs(closed) ** 2 > 1e-14
        dev = float(np.max(np.abs(np.abs(closed[mask]) - np.abs(psi.amplitudes[:n][mask]))))
        max_dev = max(max_dev, dev)
        checked.append(t)
    oracle_ok = bool(checked) and max_dev <= 1e-8
    ok &= oracle_ok
    report["oracle_vs_closed_form"] = {
        "max_amplitude_deviation": max_dev,
        "checked_t": checked,
        "skipped_truncation_limited_t": skipped,
        "tolerance": 1e-8,
        "pass": oracle_ok,
    }

    # normalization and complexity residuals over a parameter grid
    norm_dev = 0.0
    comp_dev = 0.0
    for av in np.linspace(0.0, 4.0, 6):
        for aw in np.linspace(0.0, 3.0, 6):
            p = DisplacementParams(v=complex(av), w=1j * aw)
            norm_dev = max(norm_dev, abs(mehler_normalization_check(p) - 1.0))
            comp_dev = max(
                comp_dev,
                abs(moment_n(p, 1, max_k=16384) - complexity_closed(p)),
            )
    norm_ok = norm_dev <= 1e-10
    comp_ok = comp_dev <= 1e-8
    ok &= norm_ok and comp_ok
    report["normalization"] = {"max_residual": norm_dev, "tolerance": 1e-10, "pass": norm_ok}
    report["complexity_closed_vs_direct"] = {
        "max_residual": comp_dev, "tolerance": 1e-8, "pass": comp_ok,
    }

    # exact limit recovery
    lim_dev = 0.0
    for t in (0.5, 1.0, 2.0):
        hw = LiouvillianSpec(cfg.alpha if cfg.alpha else 1.0, 0.0)
        lim_dev = max(lim_dev, abs(schrodinger_complexity_t(hw, t) - hw.alpha ** 2 * t ** 2))
        sl = LiouvillianSpec(0.0, cfg.beta if cfg.beta else 1.0)
        lim_dev = max(lim_dev, abs(schrodinger_complexity_t(sl, t) - math.sinh(sl.beta * t) ** 2))
    lim_ok = lim_dev == 0.0
    ok &= lim_ok
    report["limit_recovery"] = {"max_residual": lim_dev, "tolerance": 0.0, "pass": lim_ok}

    # documented discrepancies: reported, never asserted
    poisson_point = DisplacementParams(v=2j, w=0.0)
    direct_var = moment_n(poisson_point, 2) - moment_n(poisson_point, 1) ** 2
    alt_var = variance_alt_closed_form(poisson_point)
    probe_spec = spec if spec.beta != 0 else LiouvillianSpec(1.0, 1.0)
    auto_ts = [0.1, 0.2, 0.4]
    auto_rows = [
        {
            "t": t,
            "authoritative": autocorrelator_t(probe_spec, t),
            "alt_form": autocorrelator_alt_closed_form(probe_spec, t),
            "deviation": abs(
                autocorrelator_t(probe_spec, t) - autocorrelator_alt_closed_form(probe_spec, t)
            ),
        }
        for t in auto_ts
    ]
    exponent = late_time_growth_exponent(probe_spec)
    report["documented_discrepancies"] = {
        "variance_alt_form_first_term": {
            "point": "v=2i, w=0",
            "direct_summation": direct_var,
            "alt_form": alt_var,
            "deviation": abs(direct_var - alt_var),
        },
        "autocorrelator_alt_form": auto_rows,
        "late_time_exponent": {
            "measured_over_t_4_to_6": exponent,
            "candidate_beta": probe_spec.beta,
            "candidate_two_beta": 2.0 * probe_spec.beta,
        },
    }
    report["pass"] = bool(ok)
    return report, bool(ok)


def _load_config_file(path: Path) -> Dict[str, str]:
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        values[key] = val
    return values


_FLOAT_KEYS = {"alpha", "beta", "tmin", "tmax", "tol"}
_INT_KEYS = {"steps", "dim"}
_STR_KEYS = {"mode", "format", "out", "figure"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krylov-growth",
        description="Operator-growth complexity sweeps for the linear-plus-two-photon generator",
    )
    parser.add_argument("--alpha", type=float, default=None, help="linear coefficient")
    parser.add_argument("--beta", type=float, default=None, help="two-photon coefficient")
    parser.add_argument("--tmin", type=float, default=None, help="grid start (default 0)")
    parser.add_argument("--tmax", type=float, default=None, help="grid end (default 2)")
    parser.add_argument("--steps", type=int, default=None, help="grid points (default 41)")
    parser.add_argument("--dim", type=int, default=None, help="Fock truncation (default 256)")
    parser.add_argument("--tol", type=float, default=None, help="series/guard tolerance (default 1e-10)")
    parser.add_argument("--mode", choices=MODES, default=None, help="observable to sweep")
    parser.add_argument("--format", dest="format", choices=("csv", "json"), default=None)
    parser.add_argument("--out", type=str, default=None,
                        help="output file (sweeps/verify) or directory (figures); default stdout")
    parser.add_argument("--config", type=str, default=None, help="key=value config file; flags override")
    parser.add_argument("--figure", choices=FIGURES, default=None,
                        help="emit the data behind one reference figure instead of sweeping")
    return parser


def _merge_config(args: argparse.Namespace) -> Dict[str, object]:
    merged: Dict[str, object] = {
        "alpha": 1.0, "beta": 1.0, "tmin": 0.0, "tmax": 2.0, "steps": 41,
        "dim": 256, "tol": 1e-10, "mode": "complexity", "format": "csv",
        "out": None, "figure": None,
    }
    if args.config:
        for key, val in _load_config_file(Path(args.config)).items():
            if key in _FLOAT_KEYS:
                merged[key] = float(val)
            elif key in _INT_KEYS:
                merged[key] = int(val)
            elif key in _STR_KEYS:
                merged[key] = val
            else:
                raise ValueError(f"unknown config key {key!r}")
    for key in list(merged):
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    return merged


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    try:
        merged = _merge_config(args)
        if merged["figure"] is not None:
            outdir = Path(merged["out"] or ".")
            paths = figure_data(str(merged["figure"]), outdir)
            for p in paths:
                print(p)
            return 0
        cfg = SweepConfig(
            alpha=float(merged["alpha"]), beta=float(merged["beta"]),
            t_min=float(merged["tmin"]), t_max=float(merged["tmax"]),
            steps=int(merged["steps"]), dim=int(merged["dim"]),
            tol=float(merged["tol"]), mode=str(merged["mode"]),
        )
    except (ValueError, OSError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 1

    try:
        if cfg.mode == "verify":
            report, ok = verify(cfg)
            text = json.dumps(report, indent=2) + "\n"
            if merged["out"]:
                Path(merged["out"]).write_text(text)
            else:
                sys.stdout.write(text)
            for name in ("oracle_vs_closed_form", "normalization",
                         "complexity_closed_vs_direct", "limit_recovery"):
                status = "PASS" if report[name]["pass"] else "FAIL"
                print(f"{name}: {status}", file=sys.stderr)
            return 0 if ok else 3
        rows = run_sweep(cfg)
    except KrylovGrowthError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2

    text = rows_to_csv(rows) if merged["format"] == "csv" else rows_to_json(cfg, rows)
    if merged["out"]:
        Path(merged["out"]).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
