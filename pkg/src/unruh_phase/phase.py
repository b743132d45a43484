"""Geometric, dynamic and total phases of (mixed) two-level evolutions.

Sign convention: every phase here is ``arg<ref|now> - Im int <phi|d phi>``,
so a spin-1/2 precessing once around z at polar angle ``theta`` acquires
``-pi (1 - cos theta)``.

The closed form (:func:`geometric_phase_closed`) and the path-sampled form
(:func:`geometric_phase_generic`) are independent evaluations of the same
quantity and are cross-checked in the test suite.
"""
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import kernels
from .bloch import DEGENERACY_TOL, eigenframes
from .dynamics import bloch_path, chi_xi, relaxed_time
from .errors import (
    DegeneratePath,
    DegenerateState,
    OverlapVanishes,
    PathTooCoarse,
    QuadratureMismatch,
)

OVERLAP_TOL = 1e-12
MIN_ADJACENT_OVERLAP = 0.7
QUADRATURE_RTOL = 1e-10


@dataclass(frozen=True)
class PhaseBreakdown:
    geometric: float
    dynamic: float
    total: float
    unwrapped: bool = False


@dataclass(frozen=True)
class MismatchDelta:
    delta: float
    delta_phi: float
    ratio: float


@dataclass(frozen=True)
class PureStateDiagnostics:
    psi: np.ndarray
    dD2: np.ndarray
    dS2: np.ndarray
    deltaE: np.ndarray


@dataclass(frozen=True)
class PurePhaseResult:
    connection_phase: float
    metric_phase: float
    aai_length: float
    diagnostics: PureStateDiagnostics


def _frozen(arr, dtype):
    arr = np.array(arr, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SampledStatePath:
    """Time-ordered samples of a state path.

    ``states`` is either a sequence of :class:`~unruh_phase.bloch.TwoLevelState`
    or an ``(N, 3)`` array of Bloch vectors (mixed path), or an ``(N, 2)``
    complex array of kets (pure path). ``azimuth`` optionally supplies the
    frame azimuth used for eigenvectors of samples sitting on a pole.
    """

    times: np.ndarray
    states: np.ndarray
    azimuth: np.ndarray = None

    def __post_init__(self):
        times = _frozen(self.times, float)
        if times.ndim != 1 or times.size < 3:
            raise ValueError("a path needs at least 3 samples")
        if np.any(np.diff(times) <= 0):
            raise ValueError("sample times must be strictly increasing")
        states = self.states
        if len(states) and hasattr(states[0], "vector"):
            states = np.array([s.vector for s in states])
        states = np.asarray(states)
        if np.iscomplexobj(states):
            if states.shape != (times.size, 2):
                raise ValueError("pure path needs one 2-component ket per time")
            states = _frozen(states, complex)
        else:
            if states.shape != (times.size, 3):
                raise ValueError("mixed path needs one Bloch vector per time")
            states = _frozen(states, float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", states)
        if self.azimuth is not None:
            object.__setattr__(self, "azimuth", _frozen(self.azimuth, float))

    @property
    def is_pure(self):
        return np.iscomplexobj(self.states)


# --- closed form ------------------------------------------------------------


def dynamic_integral(spec, t):
    """``int_0^t [1 - xi cos theta] dtau`` via its antiderivative.

    Uses ``xi cos theta = chi`` so that the integral is
    ``(1 + R) t - (cos theta0 + R)(1 - e^{-4 S t}) / (4 S)``.
    """
    t = np.asarray(t, dtype=float)
    relaxed = relaxed_time(spec.sigma, t)
    value = t - np.cos(spec.theta0) * relaxed + spec.ratio * (t - relaxed)
    return float(value) if value.ndim == 0 else value


def dynamic_integral_quad(spec, t):
    """Same integral by adaptive quadrature of ``xi(tau) cos(theta(tau))``."""

    def integrand(tau):
        cx = chi_xi(spec, tau)
        if cx.xi == 0.0:
            return 1.0
        return 1.0 - cx.xi * np.cos(np.arccos(np.clip(cx.chi / cx.xi, -1.0, 1.0)))

    breaks = None
    if spec.sigma > 0 and 4.0 * spec.sigma * t > 1.0:
        breaks = list(np.geomspace(1.0 / (4.0 * spec.sigma), t, 8)[:-1])
    value, _ = integrate.quad(integrand, 0.0, t, epsabs=0.0, epsrel=1e-13, limit=500, points=breaks)
    return value


def _half_angles_t(spec, t):
    cx = chi_xi(spec, t)
    xi = np.asarray(cx.xi)
    if np.any(xi < DEGENERACY_TOL):
        raise DegenerateState(f"Bloch radius xi(t) = {xi.min():.3e} is degenerate")
    ratio = np.clip(np.asarray(cx.chi) / xi, -1.0, 1.0)
    return np.sqrt(0.5 * (1.0 + ratio)), np.sqrt(0.5 * (1.0 - ratio))


def _reference_overlap(spec, t):
    cos_t, sin_t = _half_angles_t(spec, t)
    z = np.cos(0.5 * spec.theta0) * cos_t + np.sin(0.5 * spec.theta0) * sin_t * np.exp(
        1j * spec.omega * np.asarray(t, dtype=float)
    )
    if np.any(np.abs(z) < OVERLAP_TOL):
        raise OverlapVanishes("<phi+(0)|phi+(t)> vanishes; total phase undefined")
    return z


def total_phase_term(spec, t, unwrap=False):
    """``arg<phi+(0)|phi+(t)>``, principal or tracked continuously from 0."""
    if t < 0:
        raise ValueError("time must be non-negative")
    if not unwrap:
        return float(np.angle(_reference_overlap(spec, t)))
    steps = max(64, int(np.ceil(spec.omega * t / 0.05)))
    grid = np.linspace(0.0, t, steps + 1)
    return float(np.unwrap(np.angle(_reference_overlap(spec, grid)))[-1])


def sin_half_theta_explicit(spec, t):
    """``sin(theta(t)/2)`` in the form written with ``e^{+4 S t}``.

    Algebraically equal to ``sqrt((1 - chi/xi)/2)``; overflows once
    ``4 S t`` exceeds about 700.
    """
    grow = np.exp(4.0 * spec.sigma * t)
    shifted = spec.ratio - spec.ratio * grow + np.cos(spec.theta0)
    root = np.sqrt(grow * np.sin(spec.theta0) ** 2 + shifted ** 2)
    return float(np.sqrt(max(0.5 - shifted / (2.0 * root), 0.0)))


def geometric_phase_closed(spec, t, unwrap=False, verify_quadrature=False):
    """Mixed-state geometric phase of the closed-form evolution at time ``t``."""
    dynamic = 0.5 * spec.omega * _checked_integral(spec, t, verify_quadrature)
    return total_phase_term(spec, t, unwrap) - dynamic


def _checked_integral(spec, t, verify):
    value = dynamic_integral(spec, t)
    if verify:
        quad = dynamic_integral_quad(spec, t)
        if abs(quad - value) > QUADRATURE_RTOL * max(abs(value), 1e-300):
            raise QuadratureMismatch(f"antiderivative {value!r} vs quadrature {quad!r}")
    return value


def total_phase(spec, t, unwrap=False):
    """Split of the total phase into geometric and dynamic parts."""
    dynamic = 0.5 * spec.omega * dynamic_integral(spec, t)
    total = total_phase_term(spec, t, unwrap)
    return PhaseBreakdown(geometric=total - dynamic, dynamic=dynamic, total=total, unwrapped=unwrap)


def dynamical_mismatch_delta(spec_a, t_prime, spec_ref, t, delta_phi=None):
    """Dynamic-phase mismatch between two interferometer arms.

    ``delta = (Omega/2)[I_a(t') - I_ref(t)]``. ``delta_phi`` defaults to the
    geometric-phase difference of the two specs at the common time ``t``;
    ``ratio`` is ``|delta| / |delta_phi|`` (0 when both vanish).
    """
    if not np.isclose(spec_a.omega, spec_ref.omega, rtol=1e-12, atol=0.0):
        raise ValueError("both arms must share the level spacing Omega")
    delta = 0.5 * spec_a.omega * (dynamic_integral(spec_a, t_prime) - dynamic_integral(spec_ref, t))
    if delta_phi is None:
        delta_phi = geometric_phase_closed(spec_a, t) - geometric_phase_closed(spec_ref, t)
    if delta == 0.0:
        ratio = 0.0
    elif delta_phi == 0.0:
        ratio = float("inf")
    else:
        ratio = abs(delta) / abs(delta_phi)
    return MismatchDelta(delta=float(delta), delta_phi=float(delta_phi), ratio=float(ratio))


# --- path-sampled form ------------------------------------------------------


def sample_path(spec, t, samples=10_001):
    """Closed-form path on a uniform grid, with the precession azimuth attached."""
    times = np.linspace(0.0, t, samples)
    return SampledStatePath(times, bloch_path(spec, times), azimuth=spec.omega * times)


def _canonical_gauge(vectors):
    # first component real >= 0; on its zeros follow the previous sample
    out = np.array(vectors, dtype=complex)
    nsamp, nbranch = out.shape[:2]
    for k in range(nbranch):
        first = out[:, k, 0]
        mag = np.abs(first)
        regular = mag > OVERLAP_TOL
        out[regular, k, :] *= (first[regular].conj() / mag[regular])[:, None]
        for i in np.flatnonzero(~regular):
            if i == 0:
                second = out[0, k, 1]
                if abs(second) > 0:
                    out[0, k, :] *= second.conj() / abs(second)
                continue
            ov = np.vdot(out[i - 1, k], out[i, k])
            if abs(ov) > 0:
                out[i, k, :] *= ov.conj() / abs(ov)
    return out


def _is_uniform(times):
    steps = np.diff(times)
    return np.allclose(steps, steps[0], rtol=1e-9, atol=0.0)


def _connection_integral(vectors, lam, richardson):
    weights = 0.5 * (lam[:-1] + lam[1:])
    fine, smallest = kernels.overlap_phase_sum(np.ascontiguousarray(vectors), weights)
    if smallest <= MIN_ADJACENT_OVERLAP:
        raise PathTooCoarse(
            f"adjacent eigenvector overlap {smallest:.3f} <= {MIN_ADJACENT_OVERLAP}; refine the path"
        )
    if not richardson:
        return fine
    coarse_vec = np.ascontiguousarray(vectors[::2])
    coarse_lam = lam[::2]
    coarse, _ = kernels.overlap_phase_sum(coarse_vec, 0.5 * (coarse_lam[:-1] + coarse_lam[1:]))
    return (4.0 * fine - coarse) / 3.0


def phase_from_eigenframes(times, lambdas, vectors, richardson=True, gauge="canonical"):
    """Geometric phase from sampled eigenvalues and eigenvectors.

    ``lambdas`` has shape ``(N, K)`` and ``vectors`` ``(N, K, 2)``. Branches
    whose weight vanishes at either end drop out of the total-phase term
    but keep their (weighted) connection term. The connection integral is the
    weighted sum of adjacent-overlap phases; on a uniform grid with an even
    number of intervals it is Richardson-extrapolated against the
    every-other-sample sum.

    ``gauge="canonical"`` first rotates every eigenvector to a real,
    non-negative first component, which makes the result independent of the
    phases the caller's eigensolver happened to return.
    """
    times = np.asarray(times, dtype=float)
    lam = np.asarray(lambdas, dtype=float)
    vecs = np.asarray(vectors, dtype=complex)
    if gauge == "canonical":
        vecs = _canonical_gauge(vecs)
    elif gauge != "as-is":
        raise ValueError("gauge must be 'canonical' or 'as-is'")
    nsamp = times.size
    richardson = richardson and nsamp >= 5 and (nsamp - 1) % 2 == 0 and _is_uniform(times)

    total = 0.0
    dynamic = 0.0
    for k in range(lam.shape[1]):
        if lam[0, k] > DEGENERACY_TOL and lam[-1, k] > DEGENERACY_TOL:
            ov = np.vdot(vecs[0, k], vecs[-1, k])
            if abs(ov) < OVERLAP_TOL:
                raise OverlapVanishes(f"branch {k}: end-point eigenvectors are orthogonal")
            total += np.angle(np.sqrt(lam[0, k] * lam[-1, k]) * ov)
        if np.any(lam[:, k] != 0.0):
            dynamic += _connection_integral(vecs[:, k, :], lam[:, k], richardson)
    return float(total - dynamic)


def _check_no_crossing(n):
    r = np.sqrt(np.einsum("ij,ij->i", n, n))
    if np.any(r < DEGENERACY_TOL):
        raise DegeneratePath(f"Bloch radius {r.min():.3e} on the path; eigenvalues cross")
    a, b = n[:-1], n[1:]
    chord = b - a
    length2 = np.einsum("ij,ij->i", chord, chord)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.clip(-np.einsum("ij,ij->i", a, chord) / length2, 0.0, 1.0)
    s = np.where(length2 > 0, s, 0.0)
    closest = np.sqrt(np.sum((a + s[:, None] * chord) ** 2, axis=1))
    if np.any(closest < DEGENERACY_TOL):
        idx = int(np.argmin(closest))
        raise DegeneratePath(f"path passes through the maximally mixed state between samples {idx} and {idx + 1}")


def _pure_frames(kets):
    kets = kets / np.linalg.norm(kets, axis=1)[:, None]
    vectors = np.empty((kets.shape[0], 2, 2), dtype=complex)
    vectors[:, 0, :] = kets
    vectors[:, 1, 0] = -kets[:, 1].conj()
    vectors[:, 1, 1] = kets[:, 0].conj()
    lambdas = np.zeros((kets.shape[0], 2))
    lambdas[:, 0] = 1.0
    return lambdas, vectors


def geometric_phase_generic(path, richardson=True):
    """Geometric phase of a sampled path by eigen-decomposing every sample."""
    if path.is_pure:
        lam, vecs = _pure_frames(path.states)
        return phase_from_eigenframes(path.times, lam, vecs, richardson, gauge="canonical")
    _check_no_crossing(path.states)
    lam, vecs = eigenframes(path.states, path.azimuth)
    return phase_from_eigenframes(path.times, lam, vecs, richardson, gauge="as-is")


# --- pure states ------------------------------------------------------------


def pure_phase_from_path(times, kets, hamiltonians):
    """Pure-state geometric phase two ways, plus the Fubini-Study path length.

    ``kets`` must come from a differentiable ket path (derivatives are taken
    by finite differences). ``hamiltonians`` is one 2x2 matrix or one per
    sample, in units with hbar = 1.

    Returns the connection form ``int <phi|i d/dt - psi'|phi> dt``, the metric
    form ``int sqrt(dD^2 - dS^2)`` (which only sees the magnitude) and the
    length ``S = 2 int dE dt``.
    """
    times = np.asarray(times, dtype=float)
    kets = np.asarray(kets, dtype=complex)
    if times.ndim != 1 or times.size < 3 or kets.shape != (times.size, 2):
        raise ValueError("need >= 3 times and one 2-component ket per time")
    phi = kets / np.linalg.norm(kets, axis=1)[:, None]
    ref = phi[0].conj() @ phi.T
    if np.any(np.abs(ref) < OVERLAP_TOL):
        raise OverlapVanishes("<phi(0)|phi(t)> vanishes along the path")
    # (i/2) ln(<0|t>/<t|0>) = -arg<0|t>, tracked continuously
    psi = -np.unwrap(np.angle(ref))
    dphi = np.gradient(phi, times, axis=0, edge_order=2)
    dpsi = np.gradient(psi, times, edge_order=2)
    inner = np.einsum("ij,ij->i", phi.conj(), dphi)
    speed2 = np.einsum("ij,ij->i", dphi.conj(), dphi).real
    dD2 = (speed2 + dpsi ** 2 - 2j * dpsi * inner).real
    dS2 = (speed2 - (1j * inner) ** 2).real
    # int (i<phi|phi'> - psi') dt with the discrete connection for the first term
    steps = np.angle(np.einsum("ij,ij->i", phi[:-1].conj(), phi[1:]))
    connection = -np.sum(steps) - (psi[-1] - psi[0])
    metric = integrate.trapezoid(np.sqrt(np.clip(dD2 - dS2, 0.0, None)), times)

    h = np.asarray(hamiltonians, dtype=complex)
    if h.shape == (2, 2):
        h = np.broadcast_to(h, (times.size, 2, 2))
    hphi = np.einsum("nij,nj->ni", h, phi)
    mean = np.einsum("ni,ni->n", phi.conj(), hphi).real
    # dE = ||(H - <H>) phi||, exact zero on eigenstates
    delta_e = np.linalg.norm(hphi - mean[:, None] * phi, axis=1)
    length = 2.0 * integrate.trapezoid(delta_e, times)
    return PurePhaseResult(
        connection_phase=float(connection),
        metric_phase=float(metric),
        aai_length=float(length),
        diagnostics=PureStateDiagnostics(psi=psi, dD2=dD2, dS2=dS2, deltaE=delta_e),
    )
