import math

import pytest

from unruh_phase import _kernels_py, kernels
from unruh_phase.dynamics import DissipatorCoefficients, EvolutionSpec

BACKENDS = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run a test once per available kernel implementation."""
    if request.param == "python":
        monkeypatch.setattr(kernels, "rk4_linear", _kernels_py.rk4_linear)
        monkeypatch.setattr(kernels, "overlap_phase_sum", _kernels_py.overlap_phase_sum)
    return request.param


def make_spec(theta0, ratio, omega_over_sigma, sigma=1.0):
    """Spec in units where sigma = 1 unless told otherwise."""
    if omega_over_sigma is None:
        return EvolutionSpec(theta0, 1.0, DissipatorCoefficients(0.0, 0.0))
    return EvolutionSpec(theta0, omega_over_sigma * sigma, DissipatorCoefficients(sigma, ratio * sigma))


THETAS = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi)
RATIOS = (0.2, 0.5, 1.0)
SIGMA_T = (0.1, 0.5, 1.0, 2.0, 5.0)
OMEGA_OVER_SIGMA = (10.0, 100.0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
