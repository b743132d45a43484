"""Two-level density matrices, Bloch vectors and the instantaneous eigenframe.

Conventions
-----------
``rho = (1 + n1*sx + n2*sy + n3*sz) / 2`` with basis order (|+>, |->), so
``rho11`` is the excited-state population and ``rho12 = (n1 - i n2) / 2``.

Eigenvectors are returned in a fixed gauge: first component real and
non-negative,

    |phi+> = (cos(theta/2),  e^{i phi} sin(theta/2))
    |phi-> = (sin(theta/2), -e^{i phi} cos(theta/2))

with ``phi = atan2(n2, n1)``. On the poles ``phi`` is not determined by the
state; callers that know the azimuth of the frame (e.g. a precessing path)
may pass it as ``azimuth``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateState

#: Bloch radius below which eigenvectors are considered ambiguous.
DEGENERACY_TOL = 1e-12
#: Hermiticity / trace tolerance for matrices handed in by callers.
INPUT_TOL = 1e-9
#: Transverse Bloch component (relative to r) below which the state sits on a pole.
POLE_TOL = 1e-12

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class TwoLevelState:
    """Density matrix of a qubit, stored as its Bloch vector."""

    n1: float
    n2: float
    n3: float

    def __post_init__(self):
        r = self.r
        if not np.isfinite(r):
            raise ValueError("Bloch vector must be finite")
        if r > 1.0 + 1e-12:
            raise ValueError(f"Bloch radius {r!r} exceeds 1; state is not positive")

    @property
    def r(self):
        return float(np.sqrt(self.n1 ** 2 + self.n2 ** 2 + self.n3 ** 2))

    @property
    def vector(self):
        return np.array([self.n1, self.n2, self.n3])

    @property
    def rho11(self):
        return 0.5 * (1.0 + self.n3)

    @property
    def rho22(self):
        return 0.5 * (1.0 - self.n3)

    @property
    def rho12(self):
        return 0.5 * complex(self.n1, -self.n2)

    def matrix(self):
        rho12 = self.rho12
        return np.array(
            [[self.rho11, rho12], [rho12.conjugate(), self.rho22]], dtype=complex
        )

    @classmethod
    def from_matrix(cls, rho):
        n1, n2, n3, _ = bloch_from_density(rho)
        return cls(n1, n2, n3)

    @classmethod
    def from_vector(cls, psi):
        """Pure state ``|psi><psi|`` from a (not necessarily normalized) ket."""
        psi = np.asarray(psi, dtype=complex)
        norm = np.vdot(psi, psi).real
        if norm <= 0:
            raise ValueError("zero vector has no density matrix")
        return cls.from_matrix(np.outer(psi, psi.conj()) / norm)


@dataclass(frozen=True)
class BlochAngles:
    theta: float
    phi: float


@dataclass(frozen=True)
class EigenSystem:
    lambda_plus: float
    lambda_minus: float
    vec_plus: np.ndarray
    vec_minus: np.ndarray

    def reconstruct(self):
        return self.lambda_plus * np.outer(
            self.vec_plus, self.vec_plus.conj()
        ) + self.lambda_minus * np.outer(self.vec_minus, self.vec_minus.conj())


def bloch_from_density(rho):
    """Return ``(n1, n2, n3, r)`` for a 2x2 density matrix.

    Raises ``ValueError`` if ``rho`` is not Hermitian or not unit-trace to
    within 1e-9; both indicate a bug upstream rather than a physics problem.
    """
    if isinstance(rho, TwoLevelState):
        return rho.n1, rho.n2, rho.n3, rho.r
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > INPUT_TOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > INPUT_TOL:
        raise ValueError(f"density matrix trace {np.trace(rho).real!r} != 1")
    n1 = (rho[0, 1] + rho[1, 0]).real
    n2 = (1j * (rho[0, 1] - rho[1, 0])).real
    n3 = (rho[0, 0] - rho[1, 1]).real
    return float(n1), float(n2), float(n3), float(np.sqrt(n1 * n1 + n2 * n2 + n3 * n3))


def angles_from_bloch(n1, n2, n3):
    r = np.sqrt(n1 * n1 + n2 * n2 + n3 * n3)
    if r < DEGENERACY_TOL:
        raise DegenerateState(f"Bloch radius {r:.3e} too small to define angles")
    theta = float(np.arccos(np.clip(n3 / r, -1.0, 1.0)))
    return BlochAngles(theta=theta, phi=float(np.arctan2(n2, n1)))


def _half_angles(n, r):
    # cos(theta/2), sin(theta/2) without arccos; the smaller one comes from
    # the transverse component so that tilts far below 1e-8 survive
    z = n[..., 2]
    transverse = np.hypot(n[..., 0], n[..., 1])
    north = z >= 0
    big = np.sqrt(np.clip((r + np.abs(z)) / (2.0 * r), 0.0, 1.0))
    small = np.minimum(transverse / (2.0 * r * big), 1.0)
    return np.where(north, big, small), np.where(north, small, big)


def eigensystem(state, azimuth=None):
    """Eigenvalues ``(1 +- r)/2`` and gauge-fixed eigenvectors of ``state``.

    ``azimuth`` replaces ``atan2(n2, n1)`` when the state lies on a pole,
    where the Bloch vector carries no azimuthal information.
    """
    if not isinstance(state, TwoLevelState):
        state = TwoLevelState.from_matrix(state)
    lam, vecs = eigenframes(state.vector[None, :], None if azimuth is None else [azimuth])
    return EigenSystem(
        lambda_plus=float(lam[0, 0]),
        lambda_minus=float(lam[0, 1]),
        vec_plus=vecs[0, 0],
        vec_minus=vecs[0, 1],
    )


def eigenframes(n, azimuth=None):
    """Vectorized :func:`eigensystem` over an ``(N, 3)`` array of Bloch vectors.

    Returns ``lambdas`` of shape ``(N, 2)`` and ``vectors`` of shape
    ``(N, 2, 2)`` indexed as ``[sample, branch, component]`` with branch 0
    the larger eigenvalue.
    """
    n = np.atleast_2d(np.asarray(n, dtype=float))
    r = np.sqrt(np.einsum("ij,ij->i", n, n))
    if np.any(r < DEGENERACY_TOL):
        raise DegenerateState(
            f"Bloch radius {r.min():.3e} below {DEGENERACY_TOL}; eigenvectors ambiguous"
        )
    phi = np.arctan2(n[:, 1], n[:, 0])
    if azimuth is not None:
        transverse = np.hypot(n[:, 0], n[:, 1])
        on_pole = transverse <= POLE_TOL * r
        phi = np.where(on_pole, np.asarray(azimuth, dtype=float), phi)
    c, s = _half_angles(n, r)
    rot = np.exp(1j * phi)
    vectors = np.empty((n.shape[0], 2, 2), dtype=complex)
    vectors[:, 0, 0] = c
    vectors[:, 0, 1] = rot * s
    vectors[:, 1, 0] = s
    vectors[:, 1, 1] = -rot * c
    lambdas = np.column_stack([0.5 * (1.0 + r), 0.5 * (1.0 - r)])
    return lambdas, vectors
