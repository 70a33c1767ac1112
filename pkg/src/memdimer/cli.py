"""Command-line front end: `spectrum`, `simulate`, and `sweep` subcommands.

Every output file embeds the effective config (defaults resolved) and a
schema version, so re-running a shipped scenario reproduces the same bytes.
Exit codes: 0 success (a physically divergent run is still a success),
2 config error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from .circuit import eigenvalues_closed_form, gamma_pt
from .config import (
    ConfigError,
    ScenarioConfig,
    SCHEMA_VERSION,
    build_runtime,
    config_hash,
    effective_config_dict,
    effective_config_text,
    load_scenario,
)
from .diagnostics import classify_phase
from .dynamics import IntegrationDiverged, integrate, write_trajectory_csv
from .sweep import SweepSpec, parse_axis, run_sweep, write_sweep


def _config_header_lines(cfg: ScenarioConfig) -> list[str]:
    lines = [f"schema={SCHEMA_VERSION}", f"config_hash={config_hash(cfg)}"]
    lines += effective_config_text(cfg).splitlines()
    return lines


def cmd_spectrum(cfg: ScenarioConfig, outdir: Path) -> int:
    """Closed-form eigenvalue flow over a gamma range, as CSV rows
    (gamma/gamma_PT, Re e1..4, Im e1..4)."""
    if cfg.variant != "static":
        raise ConfigError("spectrum requires a static-variant config")
    g_pt = gamma_pt(cfg.mu, cfg.omega0)
    if g_pt <= 0.0:
        raise ConfigError("spectrum requires mu > 0")
    rel = np.linspace(cfg.gamma_rel_min, cfg.gamma_rel_max, cfg.count)
    path = outdir / "spectrum.csv"
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in _config_header_lines(cfg):
            f.write(f"# {line}\n")
        f.write("gamma_rel,re_e1,re_e2,re_e3,re_e4,im_e1,im_e2,im_e3,im_e4\n")
        for g in rel:
            Gamma = g * g_pt / cfg.omega0
            eigs = eigenvalues_closed_form(cfg.mu, Gamma, cfg.omega0).nonzero
            eigs = sorted(eigs, key=lambda e: (-e.real, -e.imag))
            row = [repr(float(g))]
            row += [repr(float(e.real)) for e in eigs]
            row += [repr(float(e.imag)) for e in eigs]
            f.write(",".join(row) + "\n")
    print(f"wrote {path}")
    return 0


def cmd_simulate(cfg: ScenarioConfig, outdir: Path) -> int:
    """Integrate one scenario; writes trajectory.csv and summary.json."""
    rt = build_runtime(cfg)
    try:
        traj = integrate(
            rt.variant, rt.params, rt.phi0, rt.mem0,
            dt=rt.dt, t_end=rt.t_end, record_every=rt.record_every,
            clamp_epsilon=rt.clamp_epsilon, divergence_cutoff=rt.divergence_cutoff,
        )
    except IntegrationDiverged as exc:
        traj = exc.trajectory

    traj_path = outdir / "trajectory.csv"
    write_trajectory_csv(traj, traj_path, header_lines=_config_header_lines(cfg))

    label = classify_phase(traj, rt.tau, rt.lambda_threshold)
    summary = {
        "schema": SCHEMA_VERSION,
        "config_hash": config_hash(cfg),
        "lambda_amp": label.lambda_amp,
        "phase": label.label.value,
        "tau_used": label.tau_used,
        "final_gamma_avg": None if traj.gamma_avg is None else float(traj.gamma_avg[-1]),
        "diverged": bool(traj.diverged),
        "divergence_reason": traj.divergence_reason,
        "config": effective_config_dict(cfg),
    }
    summary_path = outdir / "summary.json"
    with open(summary_path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(summary, f, indent=2, sort_keys=True)
        f.write("\n")
    print(f"wrote {traj_path} and {summary_path}: phase={label.label.value} "
          f"lambda_amp={label.lambda_amp:.6g}")
    return 0


def cmd_sweep(cfg: ScenarioConfig, outdir: Path, parallel: int) -> int:
    """Run the grid described by [sweep] axis1/axis2; writes sweep.csv."""
    if not cfg.axis1 or not cfg.axis2:
        raise ConfigError("sweep requires both [sweep] axis1 and axis2")
    spec = SweepSpec(axis1=parse_axis(cfg.axis1), axis2=parse_axis(cfg.axis2), base=cfg)
    result = run_sweep(spec, parallelism=parallel)
    path = outdir / "sweep.csv"
    write_sweep(result, path)
    n_broken = int((result.phase == "broken").sum())
    print(f"wrote {path}: {result.phase.size} cells, {n_broken} broken, "
          f"{result.metadata['wall_time_s']:.1f}s")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="memdimer",
        description="Simulate gain-loss balanced LC dimers with memory elements.",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("spectrum", "closed-form eigenvalue flow over a gamma range"),
        ("simulate", "integrate one scenario and classify its phase"),
        ("sweep", "phase map over a 2-D parameter grid"),
    ):
        sp = sub.add_parser(name, help=doc)
        sp.add_argument("--config", required=True, help="scenario config file (INI)")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--dt", type=float, default=None,
                        help="override time step, in units of T0")
        sp.add_argument("--t-end", type=float, default=None,
                        help="override run length, in units of T0")
        sp.add_argument("--tau", type=float, default=None,
                        help="override observation window, in units of T0")
        if name == "sweep":
            sp.add_argument("--parallel", type=int, default=1,
                            help="number of worker threads")
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_scenario(args.config)
        overrides = {}
        if args.dt is not None:
            overrides["dt"] = args.dt
        if args.t_end is not None:
            overrides["t_end"] = args.t_end
        if args.tau is not None:
            overrides["tau"] = args.tau
        if overrides:
            cfg = dataclasses.replace(cfg, **overrides)
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        if args.command == "spectrum":
            return cmd_spectrum(cfg, outdir)
        if args.command == "simulate":
            return cmd_simulate(cfg, outdir)
        return cmd_sweep(cfg, outdir, args.parallel)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
