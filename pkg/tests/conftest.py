import math

import pytest

from memdimer import IntegrationDiverged, classify_phase, integrate
from memdimer.config import build_runtime

# Initial-state amplitudes in the shipped figure scenarios are measured
# against the one-radian drift scale, 2*pi times the one-period scale that
# the element laws are nondimensionalised with (see the scenario files).
FIG_AMPLITUDE_SCALE = 2.0 * math.pi

T0 = 2.0 * math.pi


def run_scenario(cfg):
    """build_runtime + integrate + classify, tolerating energy blow-up."""
    rt = build_runtime(cfg)
    try:
        traj = integrate(
            rt.variant, rt.params, rt.phi0, rt.mem0,
            dt=rt.dt, t_end=rt.t_end, record_every=rt.record_every,
            clamp_epsilon=rt.clamp_epsilon,
            divergence_cutoff=rt.divergence_cutoff,
        )
    except IntegrationDiverged as exc:
        traj = exc.trajectory
    label = classify_phase(traj, rt.tau, rt.lambda_threshold)
    return label, traj


@pytest.fixture(scope="session")
def scenario_dir():
    from pathlib import Path

    d = Path(__file__).resolve().parent.parent / "scenarios"
    assert d.is_dir(), "scenarios/ directory missing"
    return d
