"""Reduced dynamics of a two-level atom coupled to a field reservoir.

Two independent routes to ``rho(tau)``:

* :func:`rho_closed_form` -- the analytic solution written through the decay
  parameters ``chi`` and ``xi``;
* :func:`rho_integrated` -- RK4 integration of the Lindblad equation built
  directly from the Kossakowski matrix, used as an oracle for the former.

Rates (``sigma``, ``upsilon``, ``omega``) are angular frequencies in rad/s and
times are proper times in seconds. The integrator works internally in units
of ``omega`` so that GHz frequencies and sub-radian phases live on one scale.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .bloch import PAULI, TwoLevelState
from .errors import DegenerateState, StepSizeUnderflow

LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_j, _i, _k] = -1.0


@dataclass(frozen=True)
class DissipatorCoefficients:
    """Symmetric (``sigma``) and antisymmetric (``upsilon``) dissipator rates.

    Complete positivity of the Kossakowski matrix requires
    ``|upsilon| <= sigma``; ``sigma == upsilon == 0`` is the closed system.
    """

    sigma: float
    upsilon: float

    def __post_init__(self):
        if not (np.isfinite(self.sigma) and np.isfinite(self.upsilon)):
            raise ValueError("dissipator rates must be finite")
        if self.sigma < 0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma!r}")
        if abs(self.upsilon) > self.sigma * (1 + 1e-12):
            raise ValueError("|upsilon| > sigma: Kossakowski matrix not positive")

    @property
    def ratio(self):
        """``upsilon / sigma``; 0 for the closed system."""
        return self.upsilon / self.sigma if self.sigma > 0 else 0.0

    def kossakowski(self):
        """The 3x3 matrix ``a_ij = S d_ij - i U e_ij3 - S d_i3 d_j3``."""
        a = self.sigma * np.eye(3, dtype=complex)
        a -= 1j * self.upsilon * LEVI_CIVITA[:, :, 2]
        a[2, 2] -= self.sigma
        return a


@dataclass(frozen=True)
class EvolutionSpec:
    theta0: float
    omega: float
    coefficients: DissipatorCoefficients

    def __post_init__(self):
        if not 0.0 <= self.theta0 <= np.pi:
            raise ValueError(f"theta0 must lie in [0, pi], got {self.theta0!r}")
        if not self.omega > 0:
            raise ValueError(f"level spacing must be positive, got {self.omega!r}")

    @property
    def sigma(self):
        return self.coefficients.sigma

    @property
    def upsilon(self):
        return self.coefficients.upsilon

    @property
    def ratio(self):
        return self.coefficients.ratio


@dataclass(frozen=True)
class ChiXi:
    chi: object
    xi: object


@dataclass(frozen=True)
class SurvivalFraction:
    decay: float  # exp(-gamma0 tau)
    population_ratio: float  # rho11(tau) / rho11(0)


def relaxed_time(sigma, tau):
    """``(1 - exp(-4 sigma tau)) / (4 sigma)``, finite as ``sigma -> 0``."""
    tau = np.asarray(tau, dtype=float)
    x = 4.0 * sigma * tau
    with np.errstate(invalid="ignore", divide="ignore"):
        factor = np.where(x > 0, -np.expm1(-x) / np.where(x > 0, x, 1.0), 1.0)
    return tau * factor


def chi_xi(spec, tau):
    """Closed-form ``chi(tau)`` and ``xi(tau)``; ``tau`` may be an array."""
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0):
        raise ValueError("proper time must be non-negative")
    decay = np.exp(-4.0 * spec.sigma * tau)
    # R (e - 1) == -4 upsilon (1 - e)/(4 sigma): no division by sigma
    chi = decay * np.cos(spec.theta0) - 4.0 * spec.upsilon * relaxed_time(spec.sigma, tau)
    xi = np.sqrt(chi * chi + decay * np.sin(spec.theta0) ** 2)
    if chi.ndim == 0:
        return ChiXi(float(chi), float(xi))
    return ChiXi(chi, xi)


def _transverse(spec, tau):
    # sqrt(xi^2 - chi^2) through its defining identity, free of cancellation
    return np.exp(-2.0 * spec.sigma * np.asarray(tau, dtype=float)) * np.sin(spec.theta0)


def bloch_path(spec, taus):
    """Closed-form Bloch vectors, shape ``(len(taus), 3)``."""
    taus = np.asarray(taus, dtype=float)
    cx = chi_xi(spec, taus)
    transverse = _transverse(spec, taus)
    phase = spec.omega * taus
    return np.column_stack(
        [transverse * np.cos(phase), transverse * np.sin(phase), np.broadcast_to(cx.chi, taus.shape)]
    )


def rho_compact_matrix(spec, tau):
    """``rho`` written through ``chi`` and ``xi`` (diagonal ``(1 +- chi)/2``)."""
    cx = chi_xi(spec, tau)
    off = 0.5 * _transverse(spec, tau) * np.exp(-1j * spec.omega * tau)
    return np.array(
        [[0.5 * (1.0 + cx.chi), off], [np.conj(off), 0.5 * (1.0 - cx.chi)]], dtype=complex
    )


def rho_population_matrix(spec, tau):
    """``rho`` in the population form: ``e cos^2(theta/2) + (U - S)/(2S) (e - 1)``."""
    decay = np.exp(-4.0 * spec.sigma * tau)
    # (U - S)/(2S) (e - 1) rewritten with relaxed_time to survive sigma -> 0
    shift = -2.0 * (spec.upsilon - spec.sigma) * relaxed_time(spec.sigma, tau)
    rho11 = decay * np.cos(0.5 * spec.theta0) ** 2 + shift
    off = 0.5 * np.exp(-2.0 * spec.sigma * tau - 1j * spec.omega * tau) * np.sin(spec.theta0)
    return np.array([[rho11, off], [np.conj(off), 1.0 - rho11]], dtype=complex)


def rho_closed_form(spec, tau):
    if tau < 0:
        raise ValueError("proper time must be non-negative")
    n = bloch_path(spec, [tau])[0]
    return TwoLevelState(*(float(v) for v in n))


def lindblad_rhs(rho, spec):
    """``d rho / d tau`` for the master equation with ``H_eff = omega sz / 2``."""
    rho = np.asarray(rho, dtype=complex)
    h = 0.5 * spec.omega * PAULI[3]
    out = -1j * (h @ rho - rho @ h)
    a = spec.coefficients.kossakowski()
    sig = PAULI[1:]
    for i in range(3):
        for j in range(3):
            if a[i, j] == 0:
                continue
            ss = sig[i] @ sig[j]
            out += 0.5 * a[i, j] * (2.0 * sig[j] @ rho @ sig[i] - ss @ rho - rho @ ss)
    return out


def bloch_generator(spec):
    """Real 4x4 matrix ``M`` with ``d/dtau (1, n1, n2, n3) = M (1, n1, n2, n3)``.

    Built by pushing each Pauli basis element through :func:`lindblad_rhs`,
    so it inherits nothing from the closed-form solution.
    """
    m = np.empty((4, 4))
    for b in range(4):
        image = lindblad_rhs(0.5 * PAULI[b], spec)
        for a in range(4):
            m[a, b] = np.trace(PAULI[a] @ image).real
    return m


def rho_integrated(spec, tau, rtol=1e-10, max_halvings=24):
    """Integrate the master equation from the initial pure state to ``tau``.

    Fixed-step RK4 in units of ``omega``; the step is halved until two
    successive solutions differ by less than ``rtol``.
    """
    if tau < 0:
        raise ValueError("proper time must be non-negative")
    if not 1e-14 <= rtol <= 1e-6:
        raise ValueError("rtol must lie in [1e-14, 1e-6]")
    y0 = np.array([1.0, np.sin(spec.theta0), 0.0, np.cos(spec.theta0)])
    if tau == 0:
        return TwoLevelState(*y0[1:])
    gen = bloch_generator(spec) / spec.omega
    span = spec.omega * tau
    h_max = 0.1 / max(1.0, np.linalg.norm(gen, 2))
    steps = max(8, int(np.ceil(span / h_max)))
    prev = kernels.rk4_linear(gen, y0, span / steps, steps)
    for _ in range(max_halvings):
        steps *= 2
        cur = kernels.rk4_linear(gen, y0, span / steps, steps)
        if np.max(np.abs(cur - prev)) <= rtol * max(1.0, np.max(np.abs(cur))):
            return TwoLevelState(*(float(v) for v in cur[1:]))
        prev = cur
    raise StepSizeUnderflow(
        f"no convergence to rtol={rtol:g} after {max_halvings} halvings ({steps} steps)"
    )


def survival_fraction(line, tau, spec=None):
    """Excited-state survival over ``tau`` two ways.

    ``decay`` is ``exp(-gamma0 tau)``; ``population_ratio`` is
    ``rho11(tau) / rho11(0)`` along ``spec`` (default: inertial atom starting
    on the equator, ``Omega = omega0``).
    """
    if tau < 0:
        raise ValueError("proper time must be non-negative")
    if spec is None:
        quarter = line.gamma0 / 4.0
        spec = EvolutionSpec(np.pi / 2, line.omega0, DissipatorCoefficients(quarter, quarter))
    rho11_0 = np.cos(0.5 * spec.theta0) ** 2
    if rho11_0 < 1e-15:
        raise DegenerateState("initial excited population is zero")
    rho11 = 0.5 * (1.0 + chi_xi(spec, tau).chi)
    return SurvivalFraction(decay=float(np.exp(-line.gamma0 * tau)), population_ratio=float(rho11 / rho11_0))
