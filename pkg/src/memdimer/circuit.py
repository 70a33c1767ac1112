"""Memory-less gain-loss dimer: circuit matrices, spectra, thresholds, symmetries.

Two identical LC circuits, one carrying a resistor R (loss) and the other a
matched negative resistance -R (gain), coupled through an inductor Lc.  The
physical state is the real vector [V1, V2, I1, I2, Ic].  This module builds
the Kirchhoff generator of that state, the energy-density Hamiltonian
obtained by the A^(1/2) change of basis, the closed-form eigenvalue quartet,
and the two exceptional-point thresholds that bound the broken-symmetry
region.  Everything is a pure function of plain values, safe to call from
any thread.

Working units used throughout the package: omega0 = 1, C = 1, L = 1, so one
oscillation period is T0 = 2*pi and the impedance scale is 1.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

# relative guard band for exact-threshold comparisons
_PHASE_GUARD = 1e-12


def _require_positive(**kwargs):
    for name, value in kwargs.items():
        if not (value > 0.0) or not math.isfinite(value):
            raise ValueError(f"{name} must be strictly positive, got {value!r}")


@dataclass(frozen=True)
class CircuitParams:
    """Element values of the dimer plus the derived dimensionless numbers.

    Invariants: omega0 = 1/sqrt(L*C) and mu**2 * Lc = L (to 1e-12 relative);
    all element values strictly positive.  ``Gamma`` is the dimensionless
    gain-loss strength gamma/omega0; for the memory variants it only records
    the static value (the live gain-loss comes from the memory element).
    """

    omega0: float
    mu: float
    Gamma: float
    C: float
    L: float
    Lc: float

    def __post_init__(self):
        _require_positive(C=self.C, L=self.L, Lc=self.Lc)
        if self.mu < 0.0:
            raise ValueError(f"mu must be >= 0, got {self.mu}")
        if self.Gamma < 0.0:
            raise ValueError(f"Gamma must be >= 0, got {self.Gamma}")
        if abs(self.omega0 * math.sqrt(self.L * self.C) - 1.0) > 1e-12:
            raise ValueError("omega0 inconsistent with 1/sqrt(L*C)")
        if self.mu > 0.0:
            if math.isinf(self.Lc) or abs(self.mu**2 * self.Lc / self.L - 1.0) > 1e-12:
                raise ValueError("mu inconsistent with sqrt(L/Lc)")

    @classmethod
    def make(cls, mu: float, Gamma: float, omega0: float = 1.0, C: float = 1.0) -> "CircuitParams":
        """Build params from the dimensionless pair (mu, Gamma) in working units."""
        _require_positive(omega0=omega0, C=C)
        L = 1.0 / (omega0**2 * C)
        Lc = L / mu**2 if mu > 0.0 else math.inf
        return cls(omega0=omega0, mu=mu, Gamma=Gamma, C=C, L=L, Lc=Lc)

    @property
    def gamma(self) -> float:
        """Dimensionful gain-loss rate 1/(R C)."""
        return self.Gamma * self.omega0

    @property
    def period(self) -> float:
        """Fundamental oscillation period T0 = 2*pi/omega0."""
        return TWO_PI / self.omega0


@dataclass(frozen=True)
class PhiState:
    """Physical state [V1, V2, I1, I2, Ic]; all components must be finite."""

    v1: float
    v2: float
    i1: float
    i2: float
    ic: float

    def __post_init__(self):
        for name in ("v1", "v2", "i1", "i2", "ic"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"PhiState component {name} is not finite")

    @property
    def array(self) -> np.ndarray:
        return np.array([self.v1, self.v2, self.i1, self.i2, self.ic], dtype=float)

    @classmethod
    def from_array(cls, arr) -> "PhiState":
        a = np.asarray(arr, dtype=float)
        if a.shape != (5,):
            raise ValueError(f"expected 5 components, got shape {a.shape}")
        return cls(*a)


def _as_state_array(phi) -> np.ndarray:
    if isinstance(phi, PhiState):
        return phi.array
    a = np.asarray(phi, dtype=float)
    if a.shape != (5,):
        raise ValueError(f"expected a 5-component state, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class EnergyForm:
    """Diagonal quadratic form A giving the circuit energy <phi|A|phi>.

    diag = (C/2, C/2, L/2, L/2, Lc/2).  For a state-dependent coupling
    inductor rebuild the form at the current Lc value.
    """

    diag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        if d.shape != (5,):
            raise ValueError("EnergyForm needs exactly 5 weights")
        if not np.all(d > 0.0):
            raise ValueError("EnergyForm weights must be strictly positive")
        object.__setattr__(self, "diag", d)

    @classmethod
    def from_values(cls, C: float, L: float, Lc: float) -> "EnergyForm":
        return cls(np.array([C, C, L, L, Lc]) / 2.0)

    @classmethod
    def from_params(cls, p: CircuitParams) -> "EnergyForm":
        return cls.from_values(p.C, p.L, p.Lc)

    def energy(self, phi) -> float:
        a = _as_state_array(phi)
        return float(np.dot(self.diag, a * a))

    def to_energy_basis(self, phi) -> np.ndarray:
        """psi = A^(1/2) phi, so that |psi|^2 is the circuit energy."""
        return np.sqrt(self.diag) * _as_state_array(phi)

    def from_energy_basis(self, psi) -> np.ndarray:
        return np.asarray(psi, dtype=float) / np.sqrt(self.diag)


def circuit_energy(phi, a: EnergyForm) -> float:
    """Total circuit energy sum_i a_i phi_i^2 (zero iff phi = 0)."""
    return a.energy(phi)


def build_kirchhoff_matrix(p: CircuitParams, gamma_loss: float, gamma_gain: float) -> np.ndarray:
    """Purely imaginary generator M of i d/dt |phi> = M |phi>.

    Loss and gain rates are passed separately so the instantaneously
    balanced memristive case can reuse this with both set to gamma(x).
    Rank 4 whenever the couplings are nonzero.
    """
    if gamma_loss < 0.0 or gamma_gain < 0.0:
        raise ValueError("gain/loss rates must be >= 0")
    C, L, Lc = p.C, p.L, p.Lc
    inv_lc = 0.0 if math.isinf(Lc) else 1.0 / Lc
    M = np.zeros((5, 5), dtype=complex)
    M[0, 0] = -gamma_loss
    M[0, 2] = -1.0 / C
    M[0, 4] = -1.0 / C
    M[1, 1] = +gamma_gain
    M[1, 3] = -1.0 / C
    M[1, 4] = +1.0 / C
    M[2, 0] = 1.0 / L
    M[3, 1] = 1.0 / L
    M[4, 0] = +inv_lc
    M[4, 1] = -inv_lc
    return 1j * M


def build_heff(p: CircuitParams, Gamma: float) -> np.ndarray:
    """Energy-density Hamiltonian, i.e. the generator in the A^(1/2) basis.

    Built directly from its pattern (entries +-i*omega0*Gamma, +-i*omega0,
    +-i*omega0*mu); tests cross-check it against the explicit similarity
    transform of the Kirchhoff matrix.
    """
    w, mu = p.omega0, p.mu
    K = np.array(
        [
            [-Gamma, 0.0, -1.0, 0.0, -mu],
            [0.0, +Gamma, 0.0, -1.0, +mu],
            [1.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0, 0.0],
            [+mu, -mu, 0.0, 0.0, 0.0],
        ]
    )
    return 1j * w * K


def gamma_pt(mu: float, omega0: float = 1.0) -> float:
    """Lower exceptional-point threshold omega0*(sqrt(1+2 mu^2) - 1)."""
    if mu < 0.0:
        raise ValueError("mu must be >= 0")
    return omega0 * (math.sqrt(1.0 + 2.0 * mu**2) - 1.0)


def gamma_c(mu: float, omega0: float = 1.0) -> float:
    """Upper threshold omega0*(sqrt(1+2 mu^2) + 1).

    Computed as gamma_pt + 2*omega0 so the difference of the two thresholds
    is exactly 2*omega0 in floating point.
    """
    return gamma_pt(mu, omega0) + 2.0 * omega0


def mu_pt(Gamma: float) -> float:
    """Threshold coupling sqrt(Gamma*(Gamma+2)/2); inverse of gamma_pt/omega0."""
    if Gamma < 0.0:
        raise ValueError("Gamma must be >= 0")
    return math.sqrt(Gamma * (Gamma + 2.0) / 2.0)


class PTPhase(enum.Enum):
    SYMMETRIC = "symmetric"
    BROKEN = "broken"
    OVERDAMPED_BROKEN = "overdamped-broken"


@dataclass(frozen=True)
class SpectrumResult:
    """Closed-form eigenvalue quartet plus the exact zero of the rank-4 generator.

    ``eigenvalues`` holds [+e_a, -e_a, +e_b, -e_b, 0] with the zero carried
    explicitly (never computed numerically).  The nonzero values occur in
    +-pairs and close under complex conjugation.
    """

    eigenvalues: np.ndarray
    pt_phase: PTPhase

    @property
    def nonzero(self) -> np.ndarray:
        return self.eigenvalues[:4]


def eigenvalues_closed_form(mu: float, Gamma: float, omega0: float = 1.0) -> SpectrumResult:
    """Exact spectrum of the energy-density Hamiltonian.

    e = +-(omega0/sqrt(2)) * sqrt(2 + 2 mu^2 - Gamma^2 +- sqrt((2 mu^2 - Gamma^2)^2 - 4 Gamma^2))

    The phase label comes from comparing gamma = Gamma*omega0 with the two
    thresholds (strict comparison with a 1e-12 relative guard band), not
    from inspecting the numerical eigenvalues.
    """
    if mu < 0.0 or Gamma < 0.0:
        raise ValueError("mu and Gamma must be >= 0")
    a = 2.0 * mu**2 - Gamma**2
    inner = cmath.sqrt(complex(a * a - 4.0 * Gamma**2))
    scale = omega0 / math.sqrt(2.0)
    e_plus = scale * cmath.sqrt(2.0 + a + inner)
    e_minus = scale * cmath.sqrt(2.0 + a - inner)
    eigs = np.array([e_plus, -e_plus, e_minus, -e_minus, 0.0], dtype=complex)

    gamma = Gamma * omega0
    g_pt = gamma_pt(mu, omega0)
    g_c = gamma_c(mu, omega0)
    if gamma <= g_pt * (1.0 + _PHASE_GUARD):
        phase = PTPhase.SYMMETRIC
    elif gamma < g_c * (1.0 - _PHASE_GUARD):
        phase = PTPhase.BROKEN
    else:
        phase = PTPhase.OVERDAMPED_BROKEN
    return SpectrumResult(eigenvalues=eigs, pt_phase=phase)


# ---------------------------------------------------------------------------
# symmetry operators


def parity_matrix() -> np.ndarray:
    """Left-right swap of the two LC units; the coupling current is odd."""
    P = np.zeros((5, 5))
    P[0, 1] = P[1, 0] = 1.0
    P[2, 3] = P[3, 2] = 1.0
    P[4, 4] = -1.0
    return P


def time_reversal_unitary() -> np.ndarray:
    """Unitary part U of the antilinear time reversal (currents are odd)."""
    return np.diag([1.0, 1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True)
class SymmetryOps:
    """Parity, the unitary part of time reversal, and their product (chiral op)."""

    parity: np.ndarray
    time_unitary: np.ndarray
    chiral: np.ndarray


def symmetry_ops() -> SymmetryOps:
    P = parity_matrix()
    U = time_reversal_unitary()
    return SymmetryOps(parity=P, time_unitary=U, chiral=P @ U)


def check_pt_symmetry(H: np.ndarray, tol: float = 1e-9) -> bool:
    """True when (P U) conj(H) (P U)^-1 equals H within tol (relative)."""
    H = np.asarray(H, dtype=complex)
    ops = symmetry_ops()
    PU = ops.chiral  # (P U)^2 = 1, so PU is its own inverse
    lhs = PU @ np.conj(H) @ PU
    scale = max(np.max(np.abs(H)), 1.0)
    return bool(np.max(np.abs(lhs - H)) <= tol * scale)


def check_chiral(H: np.ndarray, tol: float = 1e-9) -> bool:
    """True when the chiral operator anticommutes with H within tol (relative)."""
    H = np.asarray(H, dtype=complex)
    Pi = symmetry_ops().chiral
    resid = Pi @ H + H @ Pi
    scale = max(np.max(np.abs(H)), 1.0)
    return bool(np.max(np.abs(resid)) <= tol * scale)
