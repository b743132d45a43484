"""Acceleration and temperature sweeps, the thermometer inversion and the interferometer budget."""
import csv
import io
import json
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np
from scipy import optimize

from .dynamics import EvolutionSpec, chi_xi
from .environment import (
    EnvironmentSpec,
    catalog_lookup,
    coefficients,
    proper_time_for_distance,
    rindler_kinematics,
)
from .constants import CONSTANTS
from .errors import NotMonotone, OutOfRange, PhysicsDomainError
from .phase import dynamic_integral, dynamical_mismatch_delta, geometric_phase_closed

UNRUH, THERMAL = "unruh", "thermal"
CSV_COLUMNS = ("abscissa", "delta_phi", "phi_env", "phi_ref", "sigma", "upsilon", "xi_t", "survival")
GEOMETRIC_DOMINANCE = 0.01


class SweepError(PhysicsDomainError):
    def __init__(self, abscissa, cause):
        super().__init__(f"sweep failed at abscissa {abscissa!r}: {cause}")
        self.abscissa = abscissa
        self.cause = cause


def parse_time(text, omega0):
    """Seconds from ``"1/omega0"``, ``"1/(4 omega0)"`` or a plain number."""
    if isinstance(text, (int, float)):
        return float(text)
    compact = re.sub(r"\s+", "", str(text)).lower()
    m = re.fullmatch(r"1/\(?(\d*\.?\d*(?:e[+-]?\d+)?)\*?omega0\)?", compact)
    if m:
        factor = float(m.group(1)) if m.group(1) else 1.0
        return 1.0 / (factor * omega0)
    try:
        return float(compact)
    except ValueError:
        raise ValueError(f"cannot parse time {text!r}") from None


@dataclass(frozen=True)
class SweepRequest:
    line_id: str
    mode: str
    grid_min: float = None
    grid_max: float = None
    points: int = 61
    spacing: str = None
    theta0: float = math.pi / 2
    time: object = None  # seconds or a parse_time expression
    T_h: float = None
    values: tuple = None  # explicit abscissae; overrides the grid
    units: str = "angular"

    def __post_init__(self):
        if self.mode not in (UNRUH, THERMAL):
            raise ValueError(f"mode must be {UNRUH!r} or {THERMAL!r}")
        if self.mode == THERMAL and not (self.T_h and self.T_h > 0):
            raise ValueError("thermal sweeps need a positive reference temperature T_h")
        if self.values is None:
            lo, hi = self.bounds()
            if not lo < hi:
                raise ValueError("grid needs min < max")
            if self.points < 2:
                raise ValueError("grid needs at least 2 points")
            if self.mode == THERMAL and hi > self.T_h * (1 + 1e-12):
                raise ValueError("cold-source grid must not exceed T_h")
        if self.spacing not in (None, "linear", "logarithmic"):
            raise ValueError("spacing must be 'linear' or 'logarithmic'")

    def bounds(self):
        if self.mode == UNRUH:
            lo = 1e15 if self.grid_min is None else self.grid_min
            hi = 1e18 if self.grid_max is None else self.grid_max
        else:
            lo = self.T_h / 100 if self.grid_min is None else self.grid_min
            hi = self.T_h if self.grid_max is None else self.grid_max
        return float(lo), float(hi)

    def abscissae(self):
        if self.values is not None:
            return np.asarray(self.values, dtype=float)
        lo, hi = self.bounds()
        spacing = self.spacing or ("logarithmic" if self.mode == UNRUH else "linear")
        if spacing == "logarithmic":
            return np.geomspace(lo, hi, self.points)
        return np.linspace(lo, hi, self.points)

    def line(self):
        return catalog_lookup(self.line_id, self.units)

    def window(self, line=None):
        line = line or self.line()
        if self.time is None:
            return 1.0 / line.omega0 if self.mode == UNRUH else 1.0 / (4.0 * line.omega0)
        return parse_time(self.time, line.omega0)

    def to_dict(self):
        d = asdict(self)
        if d["values"] is not None:
            d["values"] = [float(v) for v in d["values"]]
        return d


@dataclass(frozen=True)
class SweepRow:
    abscissa: float
    delta_phi: float
    phi_env: float
    phi_ref: float
    sigma: float
    upsilon: float
    xi_t: float
    survival: float


def evolution_spec(line, env, theta0=math.pi / 2):
    return EvolutionSpec(theta0, line.omega0, coefficients(line, env))


def _reference_phase(line, env, theta0, t, abscissa):
    try:
        return geometric_phase_closed(evolution_spec(line, env, theta0), t)
    except PhysicsDomainError as exc:
        raise SweepError(float(abscissa), exc) from exc


def _run(rows_of, values, jobs):
    def guarded(v):
        try:
            return rows_of(v)
        except PhysicsDomainError as exc:
            raise SweepError(float(v), exc) from exc

    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(guarded, values))
    return [guarded(v) for v in values]


def unruh_sweep(req, jobs=1):
    """Rows of ``dPhi_U(a) = Phi_g(accelerated) - Phi_g(inertial)``."""
    if req.mode != UNRUH:
        raise ValueError("unruh_sweep needs mode='unruh'")
    line = req.line()
    t = req.window(line)
    phi_ref = _reference_phase(line, EnvironmentSpec.inertial(), req.theta0, t, 0.0)
    survival = math.exp(-line.gamma0 * t)

    def row(a):
        spec = evolution_spec(line, EnvironmentSpec.accelerated(a), req.theta0)
        phi = geometric_phase_closed(spec, t)
        return SweepRow(float(a), phi - phi_ref, phi, phi_ref, spec.sigma, spec.upsilon,
                        chi_xi(spec, t).xi, survival)

    return _run(row, req.abscissae(), jobs)


def thermal_phase_difference(line, T_h, T_c, t, theta0=math.pi / 2):
    """``dPhi_T = Phi_g(T_h) - Phi_g(T_c)``."""
    hot = geometric_phase_closed(evolution_spec(line, EnvironmentSpec.thermal(T_h), theta0), t)
    cold = geometric_phase_closed(evolution_spec(line, EnvironmentSpec.thermal(T_c), theta0), t)
    return hot - cold


def thermal_sweep(req, jobs=1):
    """Rows of ``dPhi_T(T_c)``.

    ``phi_env`` is the hot arm at ``T_h`` and ``phi_ref`` the cold arm at
    the abscissa, so that ``delta_phi = phi_env - phi_ref``; ``sigma``,
    ``upsilon`` and ``xi_t`` describe the cold arm.
    """
    if req.mode != THERMAL:
        raise ValueError("thermal_sweep needs mode='thermal'")
    line = req.line()
    t = req.window(line)
    phi_hot = _reference_phase(line, EnvironmentSpec.thermal(req.T_h), req.theta0, t, req.T_h)
    survival = math.exp(-line.gamma0 * t)

    def row(T_c):
        spec = evolution_spec(line, EnvironmentSpec.thermal(T_c), req.theta0)
        phi = geometric_phase_closed(spec, t)
        return SweepRow(float(T_c), phi_hot - phi, phi_hot, phi, spec.sigma, spec.upsilon,
                        chi_xi(spec, t).xi, survival)

    return _run(row, req.abscissae(), jobs)


@dataclass(frozen=True)
class ThermometerResult:
    T_c: float
    residual: float
    bracket: tuple
    attainable: tuple


def thermometer_invert(line, T_h, measured, t=None, theta0=math.pi / 2, bracket=None, probe_points=65):
    """Cold-source temperature whose ``dPhi_T`` equals ``measured``.

    The bracket (default ``[T_h/100, T_h]``) is probed on a log grid first;
    inversion proceeds only if ``dPhi_T`` is strictly monotone there.
    """
    if t is None:
        t = 1.0 / (4.0 * line.omega0)
    lo, hi = bracket if bracket is not None else (T_h / 100.0, T_h)
    if not 0 < lo < hi:
        raise ValueError("bracket must satisfy 0 < low < high")
    phi_hot = geometric_phase_closed(evolution_spec(line, EnvironmentSpec.thermal(T_h), theta0), t)

    def dphi(T):
        return phi_hot - geometric_phase_closed(evolution_spec(line, EnvironmentSpec.thermal(T), theta0), t)

    grid = np.geomspace(lo, hi, probe_points)
    values = np.array([dphi(T) for T in grid])
    steps = np.diff(values)
    if not (np.all(steps > 0) or np.all(steps < 0)):
        bad = int(np.flatnonzero(np.sign(steps) != np.sign(steps[0]))[0])
        raise NotMonotone(
            f"dPhi_T is not monotone on [{lo:g}, {hi:g}] K (turns near {grid[bad + 1]:g} K)"
        )
    attainable = (float(values.min()), float(values.max()))
    if not attainable[0] <= measured <= attainable[1]:
        raise OutOfRange(
            f"measured {measured!r} rad outside attainable [{attainable[0]!r}, {attainable[1]!r}]",
            attainable=attainable,
        )
    exact = np.flatnonzero(values == measured)
    if exact.size:
        T_c = float(grid[exact[0]])
    else:
        # values are monotone, so the crossing lies between two probes
        idx = int(np.flatnonzero(np.sign(values[:-1] - measured) != np.sign(values[1:] - measured))[0])
        a, b = grid[idx], grid[idx + 1]
        T_c = optimize.bisect(lambda T: dphi(T) - measured, a, b, xtol=1e-14 * a, rtol=1e-10, maxiter=500)
    return ThermometerResult(T_c=float(T_c), residual=float(dphi(T_c) - measured),
                             bracket=(float(lo), float(hi)), attainable=attainable)


@dataclass(frozen=True)
class InterferometerReport:
    line_id: str
    a: float
    arm_length: float
    arm_length_delta: float
    proper_time: float  # along the reference arm
    proper_time_long: float  # along the arm lengthened by arm_length_delta
    speed: float  # at the end of the reference arm, m/s
    delta_phi: float  # dPhi_U at proper_time
    delta: float  # dynamic mismatch from the arm-length difference
    ratio: float  # |delta| / |delta_phi|
    geometric_dominated: bool
    environment_delta: float  # accelerated vs inertial dynamic phase at equal times
    compensating_length_delta: float  # arm difference that nulls environment_delta


def interferometer_report(line, a, arm_length, arm_length_delta, theta0=math.pi / 2):
    """Phase budget of an accelerated-atom Mach-Zehnder interferometer.

    Proper times follow from the arm geometry for an atom starting at rest
    under constant proper acceleration ``a``.
    """
    if not (arm_length > 0 and arm_length_delta >= 0):
        raise ValueError("arm length must be positive and its delta non-negative")
    t = proper_time_for_distance(a, arm_length)
    t_long = proper_time_for_distance(a, arm_length + arm_length_delta)
    spec_a = evolution_spec(line, EnvironmentSpec.accelerated(a), theta0)
    spec_0 = evolution_spec(line, EnvironmentSpec.inertial(), theta0)
    dphi = geometric_phase_closed(spec_a, t) - geometric_phase_closed(spec_0, t)
    arm = dynamical_mismatch_delta(spec_a, t_long, spec_a, t, delta_phi=dphi)
    env = dynamical_mismatch_delta(spec_a, t, spec_0, t, delta_phi=dphi)
    return InterferometerReport(
        line_id=line.id,
        a=float(a),
        arm_length=float(arm_length),
        arm_length_delta=float(arm_length_delta),
        proper_time=t,
        proper_time_long=t_long,
        speed=rindler_kinematics(a, t).speed,
        delta_phi=float(dphi),
        delta=arm.delta,
        ratio=arm.ratio,
        geometric_dominated=bool(arm.ratio < GEOMETRIC_DOMINANCE),
        environment_delta=env.delta,
        compensating_length_delta=_compensating_length(spec_a, spec_0, a, t),
    )


def _compensating_length(spec_a, spec_0, a, t):
    # signed change of the accelerated arm that makes both dynamic integrals equal
    target = dynamic_integral(spec_0, t)
    gap = dynamic_integral(spec_a, t) - target
    if gap == 0.0:
        return 0.0
    f = lambda s: dynamic_integral(spec_a, s) - target
    lo, hi = (0.0, t) if gap > 0 else (t, 2.0 * t)
    t_match = optimize.brentq(f, lo, hi, xtol=1e-30, rtol=1e-14)
    c = CONSTANTS.c
    return c * c / a * (math.cosh(a * t_match / c) - math.cosh(a * t / c))


# --- output -------------------------------------------------------------------


def _fmt(x):
    return format(float(x), ".17g")


def write_rows_csv(rows, stream, request=None):
    if request is not None:
        payload = request.to_dict() if hasattr(request, "to_dict") else request
        stream.write("# request: " + json.dumps(payload, sort_keys=True) + "\n")
    stream.write(",".join(CSV_COLUMNS) + "\n")
    for r in rows:
        stream.write(",".join(_fmt(getattr(r, c)) for c in CSV_COLUMNS) + "\n")


def read_rows_csv(stream):
    """Inverse of :func:`write_rows_csv`; returns ``(rows, request_dict)``."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    request = None
    body = []
    for line in stream:
        if line.startswith("#"):
            if line.startswith("# request: "):
                request = json.loads(line[len("# request: "):])
            continue
        body.append(line)
    reader = csv.DictReader(body)
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames!r}")
    rows = [SweepRow(**{k: float(v) for k, v in rec.items()}) for rec in reader]
    return rows, request


def rows_to_json(rows, request=None):
    payload = {"request": request.to_dict() if hasattr(request, "to_dict") else request,
               "rows": [asdict(r) for r in rows]}
    return json.dumps(payload, indent=2, sort_keys=True)


def rows_from_json(text):
    payload = json.loads(text)
    return [SweepRow(**r) for r in payload["rows"]], payload.get("request")


def request_from_dict(d):
    names = {f.name for f in fields(SweepRequest)}
    d = {k: v for k, v in d.items() if k in names}
    if d.get("values") is not None:
        d["values"] = tuple(d["values"])
    return SweepRequest(**d)
