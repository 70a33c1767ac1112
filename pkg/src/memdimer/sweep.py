"""Phase-map sweeps: grids of independent simulations over two config fields.

Each cell is one integrate + classify run.  Cells are assigned to worker
threads in a fixed round-robin over the flattened grid and written into a
preallocated result grid indexed by (i, j), so the output is bit-identical
for any parallelism level.  The integration kernels release the GIL, which
is where all the time goes.

Persisted format (schema 1): a CSV with commented header rows carrying the
schema version, the hash of the effective base config and both axis specs,
then one `i, j, axis1_value, axis2_value, lambda_amp, phase, diverged` row
per cell, in row-major order.  A structured-text snapshot of the base
config is written next to the CSV so a sweep file is self-describing.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config import (
    AXIS_FIELDS,
    ConfigError,
    ScenarioConfig,
    build_runtime,
    config_hash,
    effective_config_text,
    parse_scenario,
    set_field,
)
from .diagnostics import PhaseKind, classify_phase
from .dynamics import IntegrationDiverged, integrate

SCHEMA_VERSION = 1

PHASE_FAILED = "failed"


class SchemaError(ValueError):
    """Sweep file does not match the expected schema."""


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if self.name not in AXIS_FIELDS:
            raise ConfigError(f"'{self.name}' is not a sweepable config field")
        if self.count < 2:
            raise ConfigError("axis count must be >= 2")
        if not self.lo < self.hi:
            raise ConfigError("axis needs min < max")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)

    def spec_string(self) -> str:
        return f"{self.name},{self.lo!r},{self.hi!r},{self.count}"


def parse_axis(text: str) -> Axis:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 4:
        raise ConfigError(f"axis spec must be 'field,min,max,count', got '{text}'")
    try:
        return Axis(parts[0], float(parts[1]), float(parts[2]), int(parts[3]))
    except ValueError as exc:
        raise ConfigError(f"bad axis spec '{text}': {exc}") from exc


@dataclass(frozen=True)
class SweepSpec:
    axis1: Axis
    axis2: Axis
    base: ScenarioConfig

    def __post_init__(self):
        if self.axis1.name == self.axis2.name:
            raise ConfigError("the two sweep axes must scan different fields")


@dataclass
class SweepResult:
    """Grid of (lambda_amp, phase, diverged) plus the spec that produced it.

    ``metadata`` (wall time, worker count, per-cell failure reasons) is
    informational and excluded from equality so persisted results can be
    compared round-trip.
    """

    spec: SweepSpec
    lambda_amp: np.ndarray  # (n1, n2) float
    phase: np.ndarray       # (n1, n2) str
    diverged: np.ndarray    # (n1, n2) bool
    metadata: dict = field(default_factory=dict, compare=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SweepResult):
            return NotImplemented
        return (
            self.spec == other.spec
            and np.array_equal(self.lambda_amp, other.lambda_amp, equal_nan=True)
            and bool((self.phase == other.phase).all())
            and np.array_equal(self.diverged, other.diverged)
        )


def _run_cell(base: ScenarioConfig, axis1: Axis, axis2: Axis, v1: float, v2: float):
    """One grid cell: returns (lambda_amp, phase, diverged, reason)."""
    try:
        cfg = set_field(set_field(base, axis1.name, float(v1)), axis2.name, float(v2))
        rt = build_runtime(cfg)
        try:
            traj = integrate(
                rt.variant, rt.params, rt.phi0, rt.mem0,
                dt=rt.dt, t_end=rt.t_end, record_every=rt.record_every,
                clamp_epsilon=rt.clamp_epsilon, divergence_cutoff=rt.divergence_cutoff,
            )
        except IntegrationDiverged as exc:
            traj = exc.trajectory
        if traj.diverged and len(traj) < 2:
            # overflowed essentially immediately: broken by any measure
            return float("inf"), PhaseKind.PT_BROKEN.value, True, ""
        label = classify_phase(traj, rt.tau, rt.lambda_threshold)
        return label.lambda_amp, label.label.value, bool(traj.diverged), ""
    except (ValueError, ConfigError) as exc:
        return float("nan"), PHASE_FAILED, False, str(exc)


def run_sweep(spec: SweepSpec, parallelism: int = 1) -> SweepResult:
    """Evaluate every grid cell; per-cell failures are recorded, not raised.

    Results are identical for any parallelism level.
    """
    if parallelism < 1:
        raise ValueError("parallelism must be a positive integer")
    v1s = spec.axis1.values()
    v2s = spec.axis2.values()
    n1, n2 = len(v1s), len(v2s)
    lam = np.empty((n1, n2))
    phase = np.empty((n1, n2), dtype=object)
    div = np.zeros((n1, n2), dtype=bool)
    reasons = {}

    t_start = time.perf_counter()

    def worker(offset: int):
        for flat in range(offset, n1 * n2, parallelism):
            i, j = divmod(flat, n2)
            cell = _run_cell(spec.base, spec.axis1, spec.axis2, v1s[i], v2s[j])
            lam[i, j], phase[i, j], div[i, j], reason = cell
            if reason:
                reasons[(i, j)] = reason

    if parallelism == 1:
        worker(0)
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            futures = [pool.submit(worker, w) for w in range(parallelism)]
            for fut in futures:
                fut.result()

    meta = {
        "wall_time_s": time.perf_counter() - t_start,
        "parallelism": parallelism,
        "failed_cells": reasons,
    }
    return SweepResult(spec=spec, lambda_amp=lam, phase=phase, diverged=div, metadata=meta)


# ---------------------------------------------------------------------------
# persistence


def sidecar_path(path) -> Path:
    return Path(path).with_suffix("").with_name(Path(path).stem + ".config.ini")


def write_sweep(result: SweepResult, path) -> None:
    """Write the sweep CSV plus the base-config snapshot next to it."""
    path = Path(path)
    spec = result.spec
    cfg_text = effective_config_text(spec.base)
    v1s = spec.axis1.values()
    v2s = spec.axis2.values()
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"# schema={SCHEMA_VERSION}\n")
        f.write(f"# config_hash={config_hash(spec.base)}\n")
        f.write(f"# axis1={spec.axis1.spec_string()}\n")
        f.write(f"# axis2={spec.axis2.spec_string()}\n")
        f.write("i,j,axis1_value,axis2_value,lambda_amp,phase,diverged\n")
        for i in range(len(v1s)):
            for j in range(len(v2s)):
                f.write(
                    f"{i},{j},{v1s[i]!r},{v2s[j]!r},"
                    f"{float(result.lambda_amp[i, j])!r},"
                    f"{result.phase[i, j]},{int(result.diverged[i, j])}\n"
                )
    with open(sidecar_path(path), "w", encoding="utf-8", newline="\n") as f:
        f.write(cfg_text)


def read_sweep(path) -> SweepResult:
    """Inverse of write_sweep; verifies schema, the config hash, and that
    every grid cell is present."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise SchemaError(f"cannot read sweep file: {exc}") from exc

    headers = {}
    body = []
    for line in lines:
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            headers[key.strip()] = value.strip()
        elif line.strip():
            body.append(line)
    if headers.get("schema") != str(SCHEMA_VERSION):
        raise SchemaError(f"unsupported schema version {headers.get('schema')!r}")
    for needed in ("config_hash", "axis1", "axis2"):
        if needed not in headers:
            raise SchemaError(f"missing header '{needed}'")
    axis1 = parse_axis(headers["axis1"])
    axis2 = parse_axis(headers["axis2"])

    try:
        base = parse_scenario(sidecar_path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SchemaError(f"missing config snapshot next to sweep file: {exc}") from exc
    if config_hash(base) != headers["config_hash"]:
        raise SchemaError("config snapshot does not match the hash in the sweep file")

    if not body or body[0] != "i,j,axis1_value,axis2_value,lambda_amp,phase,diverged":
        raise SchemaError("missing or wrong column header row")

    n1, n2 = axis1.count, axis2.count
    lam = np.full((n1, n2), np.nan)
    phase = np.empty((n1, n2), dtype=object)
    div = np.zeros((n1, n2), dtype=bool)
    seen = np.zeros((n1, n2), dtype=bool)
    for line in body[1:]:
        parts = line.split(",")
        if len(parts) != 7:
            raise SchemaError(f"malformed row: '{line}'")
        try:
            i, j = int(parts[0]), int(parts[1])
            lam_ij = float(parts[4])
            div_ij = bool(int(parts[6]))
        except ValueError as exc:
            raise SchemaError(f"malformed row: '{line}'") from exc
        if not (0 <= i < n1 and 0 <= j < n2):
            raise SchemaError(f"cell ({i}, {j}) outside the declared grid")
        lam[i, j] = lam_ij
        phase[i, j] = parts[5]
        div[i, j] = div_ij
        seen[i, j] = True
    if not seen.all():
        i, j = (int(v) for v in np.argwhere(~seen)[0])
        raise SchemaError(f"missing cell ({i}, {j})")

    spec = SweepSpec(axis1=axis1, axis2=axis2, base=base)
    return SweepResult(spec=spec, lambda_amp=lam, phase=phase, diverged=div,
                       metadata={"source": str(path)})
