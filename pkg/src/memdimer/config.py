"""Scenario configuration: strict INI parsing, canonical echo, and the
mapping from a config to runnable objects.

Configs are flat key-value files with one section per concern.  Unknown
sections or keys are rejected, and every output file embeds the effective
config (all defaults resolved) so a run can be reproduced from its own
artifacts.  Rates are expressed relative to the relevant threshold
(gamma_on/gamma_PT, mu_less/mu_PT, ...) exactly as the sweep axes are, and
all times (dt, t_end, tau) are in units of the fundamental period T0.
"""

from __future__ import annotations

import configparser
import dataclasses
import hashlib
import io
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .circuit import CircuitParams, PhiState, gamma_pt, mu_pt
from .diagnostics import InitialStateKind, make_initial_state
from .dynamics import Memristive, Meminductive, Static, SystemVariant
from .elements import Meminductor, Memristor

SCHEMA_VERSION = 1

# documented default offset for the weak coupling when only the strong one
# is given: mu_greater = (mu_less_rel - 0.3) * mu_PT
MU_GREATER_REL_OFFSET = 0.3


class ConfigError(ValueError):
    """Malformed or inconsistent scenario configuration."""


@dataclass(frozen=True)
class ScenarioConfig:
    # [scenario]
    variant: str = "static"
    # [circuit]
    omega0: float = 1.0
    mu: float = 1.0
    Gamma: float = 0.0
    # [memristor] -- gain-loss bounds relative to gamma_PT(mu)
    gamma_on_rel: float = 2.0
    gamma_off_rel: float = 0.3
    x0: float = 0.5
    # [meminductor] -- coupling bounds relative to mu_PT(Gamma)
    mu_less_rel: float = 1.3
    mu_greater_rel: Optional[float] = None  # None: mu_less_rel - 0.3
    y0: float = 0.5
    # shared memory-element knobs
    eta: int = 1
    p: int = 1
    # [initial]
    kind: str = "psi1"
    amplitude: float = 1.0
    custom: Optional[Tuple[float, float, float, float, float]] = None
    # [run] -- times in units of T0
    dt: float = 1.0 / 500.0
    t_end: float = 200.0
    tau: float = 100.0
    decimation: int = 10
    clamp_epsilon: float = 1e-6
    divergence_cutoff: float = 1e12
    lambda_threshold: float = 1e-3  # units of omega0
    # [spectrum] -- gamma range relative to gamma_PT(mu)
    gamma_rel_min: float = 0.0
    gamma_rel_max: float = 5.1
    count: int = 256
    # [sweep] -- "field,min,max,count"
    axis1: Optional[str] = None
    axis2: Optional[str] = None

    def __post_init__(self):
        # normalize numeric field types so the canonical echo (and hence the
        # config hash) does not depend on how the value was constructed
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if v is None:
                continue
            if f.type == "float" and not isinstance(v, float):
                object.__setattr__(self, f.name, float(v))
            elif f.type == "int" and not isinstance(v, int):
                object.__setattr__(self, f.name, int(v))
        if self.mu_greater_rel is not None:
            object.__setattr__(self, "mu_greater_rel", float(self.mu_greater_rel))
        if self.custom is not None:
            object.__setattr__(self, "custom", tuple(float(v) for v in self.custom))


_SCHEMA = {
    "scenario": {"variant": str},
    "circuit": {"omega0": float, "mu": float, "Gamma": float},
    "memristor": {
        "gamma_on_rel": float,
        "gamma_off_rel": float,
        "x0": float,
        "eta": int,
        "p": int,
    },
    "meminductor": {
        "mu_less_rel": float,
        "mu_greater_rel": float,
        "y0": float,
        "eta": int,
        "p": int,
    },
    "initial": {"kind": str, "amplitude": float, "custom": str},
    "run": {
        "dt": float,
        "t_end": float,
        "tau": float,
        "decimation": int,
        "clamp_epsilon": float,
        "divergence_cutoff": float,
        "lambda_threshold": float,
    },
    "spectrum": {"gamma_rel_min": float, "gamma_rel_max": float, "count": int},
    "sweep": {"axis1": str, "axis2": str},
}

_VARIANTS = ("static", "memristive", "meminductive")

# config fields a sweep axis may scan
AXIS_FIELDS = (
    "mu",
    "Gamma",
    "gamma_on_rel",
    "gamma_off_rel",
    "x0",
    "mu_less_rel",
    "mu_greater_rel",
    "y0",
    "amplitude",
)


def parse_scenario(text: str) -> ScenarioConfig:
    """Parse and validate INI text; unknown sections/keys are errors."""
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str  # keys are case-sensitive (Gamma vs gamma_on_rel)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config: {exc}") from exc

    values = {}
    for section in cp.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        for key, raw in cp.items(section):
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key '{key}' in section [{section}]")
            values[(section, key)] = raw

    variant = values.get(("scenario", "variant"), "static").strip().lower()
    if variant not in _VARIANTS:
        raise ConfigError(f"variant must be one of {_VARIANTS}, got '{variant}'")
    for shared in ("eta", "p"):
        a = values.get(("memristor", shared))
        b = values.get(("meminductor", shared))
        if a is not None and b is not None and a.strip() != b.strip():
            raise ConfigError(f"conflicting '{shared}' between element sections")

    kwargs = {"variant": variant}
    for (section, key), raw in values.items():
        if (section, key) == ("scenario", "variant"):
            continue
        raw = raw.strip()
        if raw.lower() == "none" and (section, key) in (
                ("initial", "custom"), ("sweep", "axis1"), ("sweep", "axis2")):
            continue
        if (section, key) == ("initial", "custom"):
            parts = [s.strip() for s in raw.split(",")]
            if len(parts) != 5:
                raise ConfigError("initial custom state needs 5 comma-separated values")
            try:
                kwargs["custom"] = tuple(float(s) for s in parts)
            except ValueError as exc:
                raise ConfigError(f"bad custom state '{raw}'") from exc
            continue
        if (section, key) == ("meminductor", "mu_greater_rel") and raw.lower() == "auto":
            kwargs["mu_greater_rel"] = None
            continue
        typ = _SCHEMA[section][key]
        try:
            kwargs[key] = typ(raw)
        except ValueError as exc:
            raise ConfigError(f"bad value for {section}.{key}: '{raw}'") from exc

    cfg = ScenarioConfig(**kwargs)
    _validate(cfg)
    return cfg


def load_scenario(path) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as f:
        return parse_scenario(f.read())


def _validate(cfg: ScenarioConfig) -> None:
    if cfg.omega0 <= 0.0:
        raise ConfigError("omega0 must be positive")
    if cfg.mu < 0.0 or cfg.Gamma < 0.0:
        raise ConfigError("mu and Gamma must be >= 0")
    if cfg.eta not in (1, -1):
        raise ConfigError("eta must be +1 or -1")
    if cfg.p < 1:
        raise ConfigError("window exponent p must be >= 1")
    if cfg.kind not in [k.value for k in InitialStateKind]:
        raise ConfigError(f"unknown initial state kind '{cfg.kind}'")
    if cfg.kind == "custom" and cfg.custom is None:
        raise ConfigError("initial kind 'custom' requires the custom key")
    if cfg.dt <= 0.0 or cfg.t_end <= 0.0 or cfg.tau <= 0.0:
        raise ConfigError("dt, t_end, tau must be positive")
    if cfg.decimation < 1:
        raise ConfigError("decimation must be >= 1")
    if not 0.0 < cfg.clamp_epsilon <= 1e-3:
        raise ConfigError("clamp_epsilon must lie in (0, 1e-3]")
    if cfg.divergence_cutoff <= 1.0:
        raise ConfigError("divergence_cutoff must exceed 1")
    if cfg.count < 2:
        raise ConfigError("spectrum count must be >= 2")


def set_field(cfg: ScenarioConfig, name: str, value: float) -> ScenarioConfig:
    """Return a copy with one sweep-able field replaced."""
    if name not in AXIS_FIELDS:
        raise ConfigError(f"'{name}' is not a sweepable config field "
                          f"(choose from {', '.join(AXIS_FIELDS)})")
    return dataclasses.replace(cfg, **{name: value})


def _fmt(value) -> str:
    if value is None:
        return "auto"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ",".join(repr(float(v)) for v in value)
    return str(value)


def effective_config_text(cfg: ScenarioConfig) -> str:
    """Canonical INI echo with every field present (defaults resolved)."""
    out = io.StringIO()
    out.write("[scenario]\n")
    out.write(f"variant = {cfg.variant}\n")
    for section in ("circuit", "memristor", "meminductor", "initial", "run", "spectrum", "sweep"):
        keys = sorted(_SCHEMA[section])
        out.write(f"\n[{section}]\n")
        for key in keys:
            if (section, key) == ("sweep", "axis1"):
                out.write(f"axis1 = {cfg.axis1 if cfg.axis1 else 'none'}\n")
            elif (section, key) == ("sweep", "axis2"):
                out.write(f"axis2 = {cfg.axis2 if cfg.axis2 else 'none'}\n")
            elif (section, key) == ("initial", "custom"):
                out.write(f"custom = {_fmt(cfg.custom) if cfg.custom else 'none'}\n")
            else:
                out.write(f"{key} = {_fmt(getattr(cfg, key))}\n")
    return out.getvalue()


def effective_config_dict(cfg: ScenarioConfig) -> dict:
    """Nested {section: {key: value-string}} form of the canonical echo."""
    out = {"scenario": {"variant": cfg.variant}}
    for section in ("circuit", "memristor", "meminductor", "initial", "run", "spectrum", "sweep"):
        sec = {}
        for key in sorted(_SCHEMA[section]):
            if (section, key) == ("sweep", "axis1"):
                sec[key] = cfg.axis1 if cfg.axis1 else "none"
            elif (section, key) == ("sweep", "axis2"):
                sec[key] = cfg.axis2 if cfg.axis2 else "none"
            elif (section, key) == ("initial", "custom"):
                sec[key] = _fmt(cfg.custom) if cfg.custom else "none"
            else:
                sec[key] = _fmt(getattr(cfg, key))
        out[section] = sec
    return out


def config_hash(cfg: ScenarioConfig) -> str:
    return hashlib.sha256(effective_config_text(cfg).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class RuntimeSetup:
    """A scenario resolved into runnable objects and absolute time units."""

    variant: SystemVariant
    params: CircuitParams
    phi0: PhiState
    mem0: Optional[float]
    dt: float
    t_end: float
    tau: float
    record_every: int
    clamp_epsilon: float
    divergence_cutoff: float
    lambda_threshold: float


def resolved_mu_greater_rel(cfg: ScenarioConfig) -> float:
    if cfg.mu_greater_rel is not None:
        return cfg.mu_greater_rel
    return cfg.mu_less_rel - MU_GREATER_REL_OFFSET


def build_runtime(cfg: ScenarioConfig) -> RuntimeSetup:
    """Resolve thresholds and working units into variant/params/initial state.

    Raises ConfigError for structural problems and ValueError when the
    resolved element values are unphysical (sweeps record the latter as
    failed cells).
    """
    w = cfg.omega0
    t0 = 2.0 * math.pi / w

    if cfg.variant == "static":
        params = CircuitParams.make(mu=cfg.mu, Gamma=cfg.Gamma, omega0=w)
        variant: SystemVariant = Static(Gamma=cfg.Gamma)
        mem0 = None
    elif cfg.variant == "memristive":
        g_pt = gamma_pt(cfg.mu, w)
        if g_pt <= 0.0:
            raise ValueError("memristive scenario needs mu > 0")
        element = Memristor.from_gamma_bounds(
            gamma_off=cfg.gamma_off_rel * g_pt,
            gamma_on=cfg.gamma_on_rel * g_pt,
            C=1.0,
            polarity=cfg.eta,
            p=cfg.p,
            x=cfg.x0,
        )
        params = CircuitParams.make(mu=cfg.mu, Gamma=0.0, omega0=w)
        variant = Memristive(element=element)
        mem0 = cfg.x0
    elif cfg.variant == "meminductive":
        m_pt = mu_pt(cfg.Gamma)
        if m_pt <= 0.0:
            raise ValueError("meminductive scenario needs Gamma > 0")
        mu_strong = cfg.mu_less_rel * m_pt
        mu_weak = resolved_mu_greater_rel(cfg) * m_pt
        element = Meminductor.from_couplings(
            mu_strong=mu_strong,
            mu_weak=mu_weak,
            L=1.0 / w**2,
            polarity=cfg.eta,
            p=cfg.p,
            y=cfg.y0,
        )
        mu_y0 = math.sqrt((1.0 / w**2) / element.inductance(cfg.y0))
        params = CircuitParams.make(mu=mu_y0, Gamma=cfg.Gamma, omega0=w)
        variant = Meminductive(element=element, Gamma=cfg.Gamma)
        mem0 = cfg.y0
    else:  # pragma: no cover - parse_scenario already rejects this
        raise ConfigError(f"unknown variant '{cfg.variant}'")

    phi0 = make_initial_state(
        InitialStateKind(cfg.kind), cfg.amplitude, params,
        mem0, custom=cfg.custom,
    )
    return RuntimeSetup(
        variant=variant,
        params=params,
        phi0=phi0,
        mem0=mem0,
        dt=cfg.dt * t0,
        t_end=cfg.t_end * t0,
        tau=cfg.tau * t0,
        record_every=cfg.decimation,
        clamp_epsilon=cfg.clamp_epsilon,
        divergence_cutoff=cfg.divergence_cutoff,
        lambda_threshold=cfg.lambda_threshold * w,
    )
