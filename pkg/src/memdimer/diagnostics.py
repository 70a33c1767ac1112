"""Observables: amplification rate, averaged dissipation, phase labels,
resonant couplings, and the standard initial states.

The amplification rate compares the energy maximum over [0, 2*tau] with the
maximum over [0, tau]; a bounded oscillation gives exactly zero, a clean
exponential exp(2*sigma*t) gives exactly 2*sigma.  The ratio form makes the
result invariant under rescaling the whole energy series.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .circuit import CircuitParams, PhiState, parity_matrix
from .dynamics import Trajectory


class InsufficientDataError(ValueError):
    """Trajectory too short for the requested observation window."""


def amplification_factor(energy, times, tau: float) -> float:
    """Long-time envelope growth rate ln(max E[0,2tau] / max E[0,tau]) / tau.

    Nonnegative by construction (the windows are nested).  tau should exceed
    both the fast period and the slow beat period of the envelope, otherwise
    an oscillatory trajectory can pick up a spurious positive rate.
    """
    energy = np.asarray(energy, dtype=float)
    times = np.asarray(times, dtype=float)
    if energy.shape != times.shape or energy.ndim != 1 or len(energy) < 2:
        raise ValueError("energy and times must be equal-length 1-D series")
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    slack = 1e-9 * tau
    if times[-1] < 2.0 * tau - slack:
        raise InsufficientDataError(
            f"trajectory ends at t={times[-1]:.6g}, need 2*tau={2.0 * tau:.6g}")
    i_tau = int(np.searchsorted(times, tau + slack, side="right"))
    i_2tau = int(np.searchsorted(times, 2.0 * tau + slack, side="right"))
    m1 = float(np.max(energy[:i_tau]))
    m2 = float(np.max(energy[:i_2tau]))
    if m1 == 0.0:
        return 0.0
    return math.log(m2 / m1) / tau


def average_gamma(gamma_inst, times) -> np.ndarray:
    """Running time average (1/t) * integral of gamma, by the trapezoid rule.

    The t=0 entry is the instantaneous value.  Bounded by the extremes of
    the input series.
    """
    g = np.asarray(gamma_inst, dtype=float)
    t = np.asarray(times, dtype=float)
    if g.shape != t.shape or g.ndim != 1 or len(g) == 0:
        raise ValueError("gamma_inst and times must be equal-length 1-D series")
    out = np.empty_like(g)
    out[0] = g[0]
    if len(g) > 1:
        seg = 0.5 * (g[1:] + g[:-1]) * np.diff(t)
        out[1:] = np.cumsum(seg) / (t[1:] - t[0])
    return out


class PhaseKind(enum.Enum):
    PT_SYMMETRIC = "symmetric"
    PT_BROKEN = "broken"


@dataclass(frozen=True)
class PhaseLabel:
    """Classification of one trajectory with its provenance."""

    label: PhaseKind
    lambda_amp: float
    tau_used: float

    @property
    def is_broken(self) -> bool:
        return self.label is PhaseKind.PT_BROKEN


def classify_phase(traj: Trajectory, tau: float, threshold: float) -> PhaseLabel:
    """Label a trajectory broken iff its amplification rate exceeds threshold.

    A run truncated by the energy cutoff is classified from the data it did
    produce (tau_used = t_end/2), per the cutoff policy.
    """
    tau_used = tau
    if traj.diverged and traj.t_end < 2.0 * tau:
        tau_used = traj.t_end / 2.0
    lam = amplification_factor(traj.energy, traj.times, tau_used)
    kind = PhaseKind.PT_BROKEN if lam > threshold else PhaseKind.PT_SYMMETRIC
    return PhaseLabel(label=kind, lambda_amp=lam, tau_used=tau_used)


@dataclass(frozen=True)
class ResonanceTable:
    """Couplings mu_n at which the switching frequency hits an odd
    sub-harmonic of the Hermitian energy gap; strictly increasing in n."""

    entries: Tuple[Tuple[int, float], ...]

    @property
    def couplings(self) -> List[float]:
        return [mu for _, mu in self.entries]


def floquet_resonant_couplings(n_max: int) -> ResonanceTable:
    """Solve sqrt(1 + 2*mu_n^2) - 1 = 2n + 1 for n = 0..n_max.

    mu_n = sqrt((2n+1)(2n+3)/2); the first resonance is mu_0 = sqrt(3/2).
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    entries = tuple(
        (n, math.sqrt((2.0 * n + 1.0) * (2.0 * n + 3.0) / 2.0)) for n in range(n_max + 1)
    )
    return ResonanceTable(entries=entries)


class InitialStateKind(enum.Enum):
    PSI1 = "psi1"   # voltage on the lossy circuit
    PSI2 = "psi2"   # parity image: voltage on the gain circuit
    PSI3 = "psi3"   # current in the lossy-circuit inductor
    PSI4 = "psi4"   # parity image of PSI3
    CHI1 = "chi1"   # current through the coupling inductor
    CUSTOM = "custom"


def make_initial_state(
    kind: InitialStateKind,
    amplitude: float,
    p: CircuitParams,
    mem0: Optional[float] = None,
    *,
    custom=None,
    v0: float = 1.0,
    i0: float = 1.0,
) -> PhiState:
    """Standard initial states; amplitude is in units of v0 (voltages) or i0
    (currents), both 1 in working units.

    The sign of the amplitude is meaningful: the memory elements make the
    dynamics sensitive to it.  mem0 is accepted for interface parity with
    energy-basis state definitions but the built-in kinds are all defined in
    the physical basis and do not use it.
    """
    del p, mem0  # states are defined in the physical basis, working units
    if kind is InitialStateKind.CUSTOM:
        if custom is None:
            raise ValueError("custom initial state requires the custom= vector")
        return custom if isinstance(custom, PhiState) else PhiState.from_array(custom)
    if kind is InitialStateKind.PSI1:
        phi = np.array([amplitude * v0, 0.0, 0.0, 0.0, 0.0])
    elif kind is InitialStateKind.PSI2:
        phi = parity_matrix() @ np.array([amplitude * v0, 0.0, 0.0, 0.0, 0.0])
    elif kind is InitialStateKind.PSI3:
        phi = np.array([0.0, 0.0, amplitude * i0, 0.0, 0.0])
    elif kind is InitialStateKind.PSI4:
        phi = parity_matrix() @ np.array([0.0, 0.0, amplitude * i0, 0.0, 0.0])
    elif kind is InitialStateKind.CHI1:
        phi = np.array([0.0, 0.0, 0.0, 0.0, amplitude * i0])
    else:
        raise ValueError(f"unknown initial state kind {kind!r}")
    return PhiState.from_array(phi)
