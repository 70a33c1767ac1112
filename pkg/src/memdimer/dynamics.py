"""ODE integration of the three dimer variants.

The primary path integrates the physical Kirchhoff variables
[V1, V2, I1, I2, Ic] (plus the memory state when present) with a fixed-step
classical RK4; the energy-basis path integrates the same flow in the
A^(1/2) coordinates and exists as an independent cross-check.  Both paths
share the policies defined in `_kernels`: clamped memory state with
step-halving retries near the boundaries, and an energy cutoff that turns
runaway broken-phase growth into a truncated-but-usable trajectory.

`integrate` is a pure function of its inputs; identical inputs give
bit-identical trajectories on any thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import _kernels
from .circuit import CircuitParams, EnergyForm, _as_state_array, build_heff
from .elements import Memristor, Meminductor, gamma_of_x, memristor_rate, meminductor_rate


@dataclass(frozen=True)
class Static:
    """Fixed gain-loss strength.  Negative Gamma swaps the lossy and
    amplifying circuits (used by the parity-duality checks)."""

    Gamma: float


@dataclass(frozen=True)
class Memristive:
    """Memristive dissipation with an instantaneously balanced gain side."""

    element: Memristor


@dataclass(frozen=True)
class Meminductive:
    """Fixed gain-loss strength, memory in the coupling inductor."""

    element: Meminductor
    Gamma: float

    def __post_init__(self):
        if self.Gamma < 0.0:
            raise ValueError("Gamma must be >= 0 for the meminductive variant")


SystemVariant = Union[Static, Memristive, Meminductive]


class IntegrationDiverged(RuntimeError):
    """Raised when the state goes non-finite; carries the partial trajectory."""

    def __init__(self, message: str, trajectory: "Trajectory"):
        super().__init__(message)
        self.trajectory = trajectory


@dataclass
class Trajectory:
    """Recorded time series of one integration.

    ``states`` rows are [V1, V2, I1, I2, Ic] on the primary path and the
    five energy-basis components on the cross-check path (see ``space``).
    ``memory``/``gamma_inst``/``gamma_avg`` are None for the static variant.
    Times are uniformly spaced by dt*record_every, except that a run
    truncated by the energy cutoff keeps its final (off-grid) sample.
    """

    times: np.ndarray
    states: np.ndarray
    memory: Optional[np.ndarray]
    energy: np.ndarray
    gamma_inst: Optional[np.ndarray]
    gamma_avg: Optional[np.ndarray]
    dt: float
    variant_kind: str
    space: str = "phi"
    diverged: bool = False
    divergence_reason: Optional[str] = None

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    def __len__(self) -> int:
        return len(self.times)


# ---------------------------------------------------------------------------
# Right-hand sides as plain functions (the compiled kernels inline the same
# formulas; the unit tests pin both against independently coded circuit laws).


def derivative_static(phi, p: CircuitParams, Gamma: float) -> np.ndarray:
    """Kirchhoff flow of the memory-less dimer, gamma = Gamma*omega0."""
    v1, v2, i1, i2, ic = _as_state_array(phi)
    gamma = Gamma * p.omega0
    C, L, Lc = p.C, p.L, p.Lc
    return np.array(
        [
            -gamma * v1 - i1 / C - ic / C,
            +gamma * v2 - i2 / C + ic / C,
            v1 / L,
            v2 / L,
            (v1 - v2) / Lc,
        ]
    )


def derivative_memristive(phi, x: float, m: Memristor, p: CircuitParams):
    """Coupled flow (phi-rate, dx/dt) with the gain matched to gamma(x)."""
    gamma_x = gamma_of_x(x, m, p.C)
    phi_rate = derivative_static(phi, p, gamma_x / p.omega0)
    v1 = _as_state_array(phi)[0]
    dxdt = memristor_rate(x, v1, m) * p.omega0
    return phi_rate, dxdt


def derivative_meminductive(phi, y: float, md: Meminductor, p: CircuitParams, Gamma: float):
    """Coupled flow (phi-rate, dy/dt) with the live coupling inductance Lc(y).

    The coupling-current rate carries the back-action of the moving core:
    dIc/dt = (V1-V2)/Lc(y) - (dL/Lc(y)) * dy/dt * Ic.
    """
    v1, v2, i1, i2, ic = _as_state_array(phi)
    lc = md.inductance(y)
    dydt = meminductor_rate(y, ic, md) * p.omega0
    gamma = Gamma * p.omega0
    C, L = p.C, p.L
    phi_rate = np.array(
        [
            -gamma * v1 - i1 / C - ic / C,
            +gamma * v2 - i2 / C + ic / C,
            v1 / L,
            v2 / L,
            (v1 - v2) / lc - (md.delta_l / lc) * dydt * ic,
        ]
    )
    return phi_rate, dydt


def build_hbar_eff(p: CircuitParams, md: Meminductor, y: float, dydt: float) -> np.ndarray:
    """Effective Hamiltonian of the meminductive dimer at internal state (y, dy/dt).

    Equals the static Hamiltonian at coupling mu(y) = sqrt(L/Lc(y)) plus a
    purely imaginary gauge entry -(i/2) * dL*dydt/Lc(y) in the
    coupling-inductor slot, the only diagonal element of d/dt ln A.
    Whether this matrix still commutes with the parity-time operation
    depends on dydt; callers report the check rather than assert it.
    """
    if not 0.0 < y < 1.0:
        raise ValueError("y must lie strictly inside (0,1)")
    lc = md.inductance(y)
    mu_y = math.sqrt(p.L / lc)
    base = CircuitParams.make(mu=mu_y, Gamma=p.Gamma, omega0=p.omega0, C=p.C)
    H = build_heff(base, p.Gamma)
    H[4, 4] += -0.5j * (md.delta_l * dydt) / lc
    return H


# ---------------------------------------------------------------------------
# integration driver


def _alloc(n_steps: int, record_every: int, with_mem: bool):
    n_max = n_steps // record_every + 2
    times = np.empty(n_max)
    states = np.empty((n_max, 5))
    energy = np.empty(n_max)
    if with_mem:
        mem = np.empty(n_max)
        g_inst = np.empty(n_max)
        g_avg = np.empty(n_max)
        return times, states, energy, mem, g_inst, g_avg
    return times, states, energy, None, None, None


def _finish(kind, space, dt, n_rec, status, times, states, energy, mem, g_inst, g_avg):
    traj = Trajectory(
        times=times[:n_rec].copy(),
        states=states[:n_rec].copy(),
        memory=None if mem is None else mem[:n_rec].copy(),
        energy=energy[:n_rec].copy(),
        gamma_inst=None if g_inst is None else g_inst[:n_rec].copy(),
        gamma_avg=None if g_avg is None else g_avg[:n_rec].copy(),
        dt=dt,
        variant_kind=kind,
        space=space,
        diverged=status != _kernels.STATUS_OK,
        divergence_reason={
            _kernels.STATUS_OK: None,
            _kernels.STATUS_CUTOFF: "energy-cutoff",
            _kernels.STATUS_NONFINITE: "non-finite",
        }[status],
    )
    if status == _kernels.STATUS_NONFINITE:
        raise IntegrationDiverged("state became non-finite during integration", traj)
    return traj


def _resolve_mem0(variant, mem0):
    if isinstance(variant, Static):
        return None
    x = variant.element.x if isinstance(variant, Memristive) else variant.element.y
    if mem0 is not None:
        x = float(mem0)
    if not 0.0 < x < 1.0:
        raise ValueError("initial memory state must lie strictly inside (0,1)")
    return x


def _steps(dt: float, t_end: float) -> int:
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if t_end < dt:
        raise ValueError("t_end must be at least dt")
    return int(round(t_end / dt))


def integrate(
    variant: SystemVariant,
    p: CircuitParams,
    phi0,
    mem0: Optional[float] = None,
    *,
    dt: float,
    t_end: float,
    record_every: int = 10,
    clamp_epsilon: float = 1e-6,
    divergence_cutoff: float = 1e12,
) -> Trajectory:
    """Fixed-step RK4 integration in the physical Kirchhoff variables.

    mem0 overrides the initial state stored on the memory element.  Runs
    whose energy exceeds ``divergence_cutoff * E(0)`` stop early with
    ``diverged=True`` and keep the triggering sample; a non-finite state
    raises IntegrationDiverged carrying the partial trajectory.
    """
    phi0 = _as_state_array(phi0)
    if not 0 < record_every:
        raise ValueError("record_every must be a positive integer")
    if not 0.0 < clamp_epsilon <= 1e-3:
        raise ValueError("clamp_epsilon must lie in (0, 1e-3]")
    n_steps = _steps(dt, t_end)
    x0 = _resolve_mem0(variant, mem0)

    if isinstance(variant, Static):
        if math.isinf(p.Lc):
            raise ValueError("integration requires a finite coupling inductance")
        times, states, energy, mem, g_inst, g_avg = _alloc(n_steps, record_every, False)
        n_rec, status = _kernels.sim_static_phi(
            phi0, variant.Gamma * p.omega0, p.C, p.L, p.Lc,
            dt, n_steps, record_every, divergence_cutoff,
            times, states, energy)
        return _finish("static", "phi", dt, n_rec, status,
                       times, states, energy, mem, g_inst, g_avg)

    if isinstance(variant, Memristive):
        if math.isinf(p.Lc):
            raise ValueError("integration requires a finite coupling inductance")
        m = variant.element
        times, states, energy, mem, g_inst, g_avg = _alloc(n_steps, record_every, True)
        n_rec, status = _kernels.sim_memristive_phi(
            phi0, x0, p.C, p.L, p.Lc, m.r_on, m.r_off, float(m.polarity), m.p,
            m.v0, p.omega0, dt, n_steps, record_every, clamp_epsilon,
            divergence_cutoff, times, states, mem, energy, g_inst, g_avg)
        return _finish("memristive", "phi", dt, n_rec, status,
                       times, states, energy, mem, g_inst, g_avg)

    if isinstance(variant, Meminductive):
        md = variant.element
        times, states, energy, mem, g_inst, g_avg = _alloc(n_steps, record_every, True)
        n_rec, status = _kernels.sim_meminductive_phi(
            phi0, x0, variant.Gamma * p.omega0, p.C, p.L, md.l_small, md.l_large,
            float(md.polarity), md.p, md.i0, p.omega0, dt, n_steps, record_every,
            clamp_epsilon, divergence_cutoff, times, states, mem, energy, g_inst, g_avg)
        return _finish("meminductive", "phi", dt, n_rec, status,
                       times, states, energy, mem, g_inst, g_avg)

    raise TypeError(f"unknown variant {variant!r}")


def integrate_psi(
    variant: SystemVariant,
    p: CircuitParams,
    phi0,
    mem0: Optional[float] = None,
    *,
    dt: float,
    t_end: float,
    record_every: int = 10,
    clamp_epsilon: float = 1e-6,
    divergence_cutoff: float = 1e12,
) -> Trajectory:
    """Cross-check integration in the energy basis psi = A^(1/2) phi.

    Takes the same physical initial state as `integrate` (converted with the
    A form at the initial memory state) and returns a trajectory whose
    states are the energy-basis components; energy is |psi|^2.
    """
    phi0 = _as_state_array(phi0)
    n_steps = _steps(dt, t_end)
    x0 = _resolve_mem0(variant, mem0)

    if isinstance(variant, Static):
        if math.isinf(p.Lc):
            raise ValueError("integration requires a finite coupling inductance")
        psi0 = EnergyForm.from_params(p).to_energy_basis(phi0)
        times, states, energy, mem, g_inst, g_avg = _alloc(n_steps, record_every, False)
        n_rec, status = _kernels.sim_static_psi(
            psi0, variant.Gamma * p.omega0, p.mu, p.omega0,
            dt, n_steps, record_every, divergence_cutoff,
            times, states, energy)
        return _finish("static", "psi", dt, n_rec, status,
                       times, states, energy, mem, g_inst, g_avg)

    if isinstance(variant, Memristive):
        if math.isinf(p.Lc):
            raise ValueError("integration requires a finite coupling inductance")
        m = variant.element
        psi0 = EnergyForm.from_params(p).to_energy_basis(phi0)
        times, states, energy, mem, g_inst, g_avg = _alloc(n_steps, record_every, True)
        n_rec, status = _kernels.sim_memristive_psi(
            psi0, x0, p.C, p.mu, m.r_on, m.r_off, float(m.polarity), m.p,
            m.v0, p.omega0, dt, n_steps, record_every, clamp_epsilon,
            divergence_cutoff, times, states, mem, energy, g_inst, g_avg)
        return _finish("memristive", "psi", dt, n_rec, status,
                       times, states, energy, mem, g_inst, g_avg)

    if isinstance(variant, Meminductive):
        md = variant.element
        form = EnergyForm.from_values(p.C, p.L, md.inductance(x0))
        psi0 = form.to_energy_basis(phi0)
        times, states, energy, mem, g_inst, g_avg = _alloc(n_steps, record_every, True)
        n_rec, status = _kernels.sim_meminductive_psi(
            psi0, x0, variant.Gamma * p.omega0, p.C, p.L, md.l_small, md.l_large,
            float(md.polarity), md.p, md.i0, p.omega0, dt, n_steps, record_every,
            clamp_epsilon, divergence_cutoff, times, states, mem, energy, g_inst, g_avg)
        return _finish("meminductive", "psi", dt, n_rec, status,
                       times, states, energy, mem, g_inst, g_avg)

    raise TypeError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# export

TRAJECTORY_COLUMNS = "t,V1,V2,I1,I2,Ic,mem,E,gamma_inst,gamma_avg"


def write_trajectory_csv(traj: Trajectory, path, header_lines=()) -> None:
    """One row per recorded step; mem/gamma columns empty for the static variant."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in header_lines:
            f.write(f"# {line}\n")
        f.write(TRAJECTORY_COLUMNS + "\n")
        has_mem = traj.memory is not None
        for k in range(len(traj.times)):
            row = [repr(float(traj.times[k]))]
            row += [repr(float(v)) for v in traj.states[k]]
            row.append(repr(float(traj.memory[k])) if has_mem else "")
            row.append(repr(float(traj.energy[k])))
            row.append(repr(float(traj.gamma_inst[k])) if traj.gamma_inst is not None else "")
            row.append(repr(float(traj.gamma_avg[k])) if traj.gamma_avg is not None else "")
            f.write(",".join(row) + "\n")
