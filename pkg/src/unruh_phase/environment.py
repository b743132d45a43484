"""Environments, atomic lines and the dissipator rates they induce.

Three environments are modelled: an inertial atom in the Minkowski vacuum, a
uniformly accelerated atom (which sees the vacuum as a thermal Rindler bath)
and an inertial atom in a thermal bath. Each maps to a
:class:`~unruh_phase.dynamics.DissipatorCoefficients` pair.
"""
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .constants import CONSTANTS
from .dynamics import DissipatorCoefficients
from .errors import CatalogFormatError, UnknownLine

INERTIAL, ACCELERATED, THERMAL = "inertial", "accelerated", "thermal"
UNITS = ("angular", "cyclic")


@dataclass(frozen=True)
class AtomicLine:
    id: str
    omega0: float  # rad/s
    gamma0: float  # rad/s
    source: str = ""

    def __post_init__(self):
        if not 0 < self.gamma0 < self.omega0:
            raise ValueError(f"{self.id}: need 0 < gamma0 < omega0")

    @property
    def energy(self):
        """Transition energy ``hbar omega0`` in joules."""
        return CONSTANTS.hbar * self.omega0


@dataclass(frozen=True)
class EnvironmentSpec:
    kind: str
    a: float = 0.0  # proper acceleration, m/s^2
    T: float = 0.0  # temperature, K

    def __post_init__(self):
        if self.kind not in (INERTIAL, ACCELERATED, THERMAL):
            raise ValueError(f"unknown environment kind {self.kind!r}")
        if self.a < 0 or self.T < 0:
            raise ValueError("acceleration and temperature must be non-negative")

    @classmethod
    def inertial(cls):
        return cls(INERTIAL)

    @classmethod
    def accelerated(cls, a):
        return cls(ACCELERATED, a=float(a))

    @classmethod
    def thermal(cls, T):
        return cls(THERMAL, T=float(T))


@dataclass(frozen=True)
class RindlerPoint:
    x: float
    t: float
    speed: float


def coth_half(x):
    """``(e^x + 1) / (e^x - 1) = coth(x/2)`` for ``x > 0`` without overflow."""
    if x > 40.0:
        return 1.0 + 2.0 * math.exp(-x)
    if x < 1e-4:
        return 2.0 / x + x / 6.0
    return 1.0 / math.tanh(0.5 * x)


def one_plus_coth(y):
    """``1 + coth(y)`` for signed ``y != 0``, stable at both tails."""
    if y == 0:
        raise ValueError("1 + coth(y) diverges at y = 0")
    if -2.0 * y > 700.0:
        return -2.0 * math.exp(2.0 * y) / (1.0 - math.exp(2.0 * y))
    return -2.0 / math.expm1(-2.0 * y)


def coefficients(line, env):
    """Dissipator rates ``(sigma, upsilon)`` in rad/s for ``line`` in ``env``.

    Zero acceleration or zero temperature reduces continuously to the
    inertial vacuum value ``sigma = upsilon = gamma0 / 4``.
    """
    quarter = 0.25 * line.gamma0
    if env.kind == ACCELERATED and env.a > 0:
        scaled = env.a / (CONSTANTS.c * line.omega0)
        upsilon = quarter * (1.0 + scaled * scaled)
        return DissipatorCoefficients(upsilon * coth_half(2.0 * math.pi / scaled), upsilon)
    if env.kind == THERMAL and env.T > 0:
        q = CONSTANTS.k_B * env.T / (CONSTANTS.hbar * line.omega0)
        upsilon = quarter * (1.0 + 4.0 * math.pi ** 2 * q * q)
        return DissipatorCoefficients(upsilon * coth_half(1.0 / q), upsilon)
    return DissipatorCoefficients(quarter, quarter)


def unruh_spectral_function(line, a, omega):
    """Field-correlation spectrum seen by the accelerated atom, in units of ``gamma0``.

    The dipole prefactor is fixed to ``gamma0 / (2 omega0^3)`` so that
    ``[G(w0) +- G(-w0)] / 4`` reproduces the closed-form ``sigma``/``upsilon``.
    """
    if omega == 0:
        raise ValueError("spectral function is singular at omega = 0")
    if not a > 0:
        raise ValueError("acceleration must be positive")
    w = omega / line.omega0
    scaled = a / (CONSTANTS.c * line.omega0)
    # w^3 (1 + a^2 / (c w)^2) written to stay finite as w -> 0
    return 0.5 * (w ** 3 + w * scaled * scaled) * one_plus_coth(math.pi * w / scaled)


def rindler_kinematics(a, tau):
    """Inertial-frame position, coordinate time and speed at proper time ``tau``."""
    if not a > 0:
        raise ValueError("acceleration must be positive")
    if tau < 0:
        raise ValueError("proper time must be non-negative")
    c = CONSTANTS.c
    eta = a * tau / c
    with np.errstate(over="ignore"):
        x = c * c / a * np.cosh(eta)
        t = c / a * np.sinh(eta)
    return RindlerPoint(x=float(x), t=float(t), speed=float(c * np.tanh(eta)))


def proper_time_for_distance(a, distance):
    """Proper time for an atom starting at rest to cover ``distance`` at acceleration ``a``."""
    if not a > 0:
        raise ValueError("acceleration must be positive")
    if distance < 0:
        raise ValueError("distance must be non-negative")
    c = CONSTANTS.c
    eps = a * distance / (c * c)
    # arccosh(1 + eps) without cancellation for small eps
    return c / a * math.log1p(eps + math.sqrt(eps * (2.0 + eps)))


def parse_catalog(text, origin="<catalog>"):
    """Parse ``id, omega0, gamma0, source`` lines into a dict of lines."""
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = [f.strip() for f in stripped.split(",", 3)]
        if len(fields) < 3:
            raise CatalogFormatError(f"{origin}:{lineno}: expected 'id, omega0, gamma0, source'")
        ident = fields[0]
        if not ident:
            raise CatalogFormatError(f"{origin}:{lineno}: empty id")
        if ident in lines:
            raise CatalogFormatError(f"{origin}:{lineno}: duplicate id {ident!r}")
        try:
            omega0, gamma0 = float(fields[1]), float(fields[2])
        except ValueError:
            raise CatalogFormatError(f"{origin}:{lineno}: non-numeric frequency") from None
        source = fields[3] if len(fields) == 4 else ""
        try:
            lines[ident] = AtomicLine(ident, omega0, gamma0, source)
        except ValueError as exc:
            raise CatalogFormatError(f"{origin}:{lineno}: {exc}") from None
    return lines


def load_catalog(path=None):
    if path is None:
        text = resources.files("unruh_phase").joinpath("data/atomic_lines.txt").read_text()
        return parse_catalog(text, "atomic_lines.txt")
    path = Path(path)
    return parse_catalog(path.read_text(), str(path))


_CATALOG = load_catalog()


def catalog_ids():
    return list(_CATALOG)


def catalog_lookup(ident, units="angular"):
    """Return the catalog line ``ident``.

    ``units="cyclic"`` reads the tabulated numbers as ordinary frequencies
    and multiplies both by 2 pi; it exists for sensitivity checks only.
    """
    if units not in UNITS:
        raise ValueError(f"units must be one of {UNITS}")
    try:
        line = _CATALOG[ident]
    except KeyError:
        raise UnknownLine(ident) from None
    if units == "cyclic":
        two_pi = 2.0 * math.pi
        return AtomicLine(line.id, two_pi * line.omega0, two_pi * line.gamma0, line.source)
    return line
