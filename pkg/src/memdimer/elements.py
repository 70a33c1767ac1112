"""Constitutive laws of the two memory elements.

The memristor is the classic two-resistors-in-series picture: a doped
low-resistance fraction x and an undoped fraction 1-x, with the dopant
front drifting at a rate set by the voltage across the device.  The
meminductor is the analogous drift model for a coupling inductor whose
core fraction y is polarised by the current through it.  Both carry a
polynomial window F_p that freezes the internal state at its boundaries,
plus clamping as the numerical safety net.

Rates are expressed per unit of omega0*t (dimensionless time).  The device
scales v0 (memristor) and i0 = omega0*Qc (meminductor) are the working-unit
anchors; the raw device constants only enter through them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi


def window(x: float, p: int) -> float:
    """Drift window F_p(x) = 1 - (2x-1)^(2p); zero at x=0,1 and 1 at x=1/2."""
    return 1.0 - (2.0 * x - 1.0) ** (2 * int(p))


def memristance(x: float, r_on: float, r_off: float) -> float:
    """Series resistance x*r_on + (1-x)*r_off of the doped/undoped stack."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"state fraction x must lie in [0,1], got {x}")
    return x * r_on + (1.0 - x) * r_off


def meminductance(y: float, l_small: float, l_large: float) -> float:
    """Coupling inductance y*l_large + (1-y)*l_small of the polarised core."""
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"core fraction y must lie in [0,1], got {y}")
    return y * l_large + (1.0 - y) * l_small


def clamp_state(x_candidate: float, epsilon: float) -> float:
    """Pull an internal-state value just inside (0,1); idempotent."""
    if not 0.0 < epsilon <= 1e-3:
        raise ValueError(f"epsilon must lie in (0, 1e-3], got {epsilon}")
    return min(max(x_candidate, epsilon), 1.0 - epsilon)


@dataclass(frozen=True)
class Memristor:
    """Memristor description; x is the initial doped fraction.

    q0 is the characteristic charge of the raw device law.  It is recorded
    for documentation only: after nondimensionalising, the drift rate
    depends on the device solely through v0.
    """

    r_on: float
    r_off: float
    polarity: int = 1
    p: int = 1
    x: float = 0.5
    v0: float = 1.0
    q0: float | None = None

    def __post_init__(self):
        if not (0.0 < self.r_on < self.r_off):
            raise ValueError("need 0 < r_on < r_off")
        if self.polarity not in (1, -1):
            raise ValueError("polarity must be +1 or -1")
        if self.p < 1 or self.p != int(self.p):
            raise ValueError("window exponent p must be a positive integer")
        if not 0.0 < self.x < 1.0:
            raise ValueError("initial state x must lie strictly inside (0,1)")
        if self.v0 <= 0.0:
            raise ValueError("v0 must be positive")

    @classmethod
    def from_gamma_bounds(
        cls,
        gamma_off: float,
        gamma_on: float,
        C: float = 1.0,
        **kwargs,
    ) -> "Memristor":
        """Solve r_on, r_off from the target gain-loss bounds gamma(x=1), gamma(x=0)."""
        if not 0.0 < gamma_off < gamma_on:
            raise ValueError("need 0 < gamma_off < gamma_on")
        return cls(r_on=1.0 / (gamma_on * C), r_off=1.0 / (gamma_off * C), **kwargs)

    def resistance(self, x: float) -> float:
        return memristance(x, self.r_on, self.r_off)


@dataclass(frozen=True)
class Meminductor:
    """Meminductor description; y is the initial core fraction.

    l_small == l_large is allowed: it is the zero-memory-range limit in
    which the element degenerates to an ordinary inductor.
    """

    l_small: float
    l_large: float
    polarity: int = 1
    p: int = 1
    y: float = 0.5
    i0: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.l_small <= self.l_large):
            raise ValueError("need 0 < l_small <= l_large")
        if self.polarity not in (1, -1):
            raise ValueError("polarity must be +1 or -1")
        if self.p < 1 or self.p != int(self.p):
            raise ValueError("window exponent p must be a positive integer")
        if not 0.0 < self.y < 1.0:
            raise ValueError("initial state y must lie strictly inside (0,1)")
        if self.i0 <= 0.0:
            raise ValueError("i0 must be positive")

    @property
    def delta_l(self) -> float:
        return self.l_large - self.l_small

    @classmethod
    def from_couplings(
        cls,
        mu_strong: float,
        mu_weak: float,
        L: float = 1.0,
        **kwargs,
    ) -> "Meminductor":
        """Build from the coupling bounds: mu_strong = sqrt(L/l_small) >= mu_weak."""
        if not 0.0 < mu_weak <= mu_strong:
            raise ValueError("need 0 < mu_weak <= mu_strong")
        return cls(l_small=L / mu_strong**2, l_large=L / mu_weak**2, **kwargs)

    def inductance(self, y: float) -> float:
        return meminductance(y, self.l_small, self.l_large)


def memristor_rate(x: float, v1: float, m: Memristor) -> float:
    """Dopant drift dx/d(omega0*t) for a voltage v1 across the device.

    Nondimensional form of the drift law: the characteristic charge
    Q0 = D^2/(mu_D r_on) and voltage v0 = D^2 omega0/(2 pi mu_D) combine so
    that only r_on/R(x), v1/v0 and the window survive:

        dx/d(omega0*t) = eta * F_p(x) * (r_on / R(x)) * (v1 / v0) / (2*pi)
    """
    r = memristance(x, m.r_on, m.r_off)
    return m.polarity * window(x, m.p) * (m.r_on / r) * (v1 / m.v0) / TWO_PI


def meminductor_rate(y: float, ic: float, md: Meminductor) -> float:
    """Core drift dy/d(omega0*t) = eta * F_p(y) * ic/i0 for a coupling current ic."""
    return md.polarity * window(y, md.p) * (ic / md.i0)


def gamma_of_x(x: float, m: Memristor, C: float) -> float:
    """Instantaneous gain-loss strength 1/(R(x) C); increasing in x."""
    if C <= 0.0:
        raise ValueError("C must be positive")
    return 1.0 / (memristance(x, m.r_on, m.r_off) * C)
