"""Command-line driver.

Exit codes: 0 success, 2 bad arguments, 3 physics-domain error, 4 I/O error.
"""
import argparse
import json
import math
import sys
from dataclasses import asdict

import numpy as np

from . import condensate
from .dynamics import chi_xi, rho_closed_form, rho_integrated, survival_fraction
from .environment import EnvironmentSpec, catalog_ids, catalog_lookup, coefficients
from .errors import PhysicsDomainError, UnknownLine
from .experiments import (
    SweepRequest,
    evolution_spec,
    interferometer_report,
    parse_time,
    rows_to_json,
    thermal_sweep,
    thermometer_invert,
    unruh_sweep,
    write_rows_csv,
)
from .phase import geometric_phase_generic, sample_path, total_phase

EXIT_OK, EXIT_USAGE, EXIT_PHYSICS, EXIT_IO = 0, 2, 3, 4


def _common(p, time_default="1/omega0", fmt_default="json"):
    p.add_argument("--line", default="Rb87-5P12-F1F2", help="catalog id of the atomic line")
    p.add_argument("--units", choices=("angular", "cyclic"), default="angular",
                   help="read catalog numbers as rad/s (default) or as Hz")
    p.add_argument("--theta0", type=float, default=math.pi / 2, help="initial polar angle, rad")
    p.add_argument("--time", default=time_default,
                   help='seconds, "1/omega0" or "1/(4 omega0)"')
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=fmt_default)


def _environment_args(p):
    p.add_argument("--env", choices=("inertial", "accelerated", "thermal"), default="inertial")
    p.add_argument("--a", type=float, default=0.0, help="proper acceleration, m/s^2")
    p.add_argument("--T", type=float, default=0.0, help="temperature, K")


def _environment(args):
    if args.env == "accelerated":
        return EnvironmentSpec.accelerated(args.a)
    if args.env == "thermal":
        return EnvironmentSpec.thermal(args.T)
    return EnvironmentSpec.inertial()


def build_parser():
    parser = argparse.ArgumentParser(prog="unruh-phase", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="list or show atomic lines")
    cat.add_argument("action", choices=("list", "show"))
    cat.add_argument("id", nargs="?")
    cat.add_argument("--units", choices=("angular", "cyclic"), default="angular")

    p = sub.add_parser("coeffs", help="dissipator rates for a line and environment")
    _common(p)
    _environment_args(p)

    p = sub.add_parser("evolve", help="reduced density matrix at a time")
    _common(p)
    _environment_args(p)
    p.add_argument("--integrate", action="store_true", help="also run the RK4 integrator")

    p = sub.add_parser("phase", help="geometric / dynamic / total phase")
    _common(p)
    _environment_args(p)
    p.add_argument("--unwrap", action="store_true")
    p.add_argument("--samples", type=int, default=0,
                   help="also evaluate on a sampled path with this many samples")

    p = sub.add_parser("unruh-sweep", help="dPhi_U versus acceleration")
    _common(p, fmt_default="csv")
    p.add_argument("--min", type=float, default=1e15)
    p.add_argument("--max", type=float, default=1e18)
    p.add_argument("--points", type=int, default=61)
    p.add_argument("--spacing", choices=("linear", "logarithmic"), default="logarithmic")
    p.add_argument("--values", type=float, nargs="+", help="explicit accelerations")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("thermal-sweep", help="dPhi_T versus cold-source temperature")
    _common(p, time_default="1/(4 omega0)", fmt_default="csv")
    p.add_argument("--T-h", dest="T_h", type=float, required=True)
    p.add_argument("--min", type=float)
    p.add_argument("--max", type=float)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--spacing", choices=("linear", "logarithmic"), default="linear")
    p.add_argument("--values", type=float, nargs="+", help="explicit cold temperatures")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("thermometer", help="infer T_c from a measured dPhi_T")
    _common(p, time_default="1/(4 omega0)")
    p.add_argument("--T-h", dest="T_h", type=float, required=True)
    p.add_argument("--measured", type=float, required=True, help="dPhi_T in rad")
    p.add_argument("--bracket", type=float, nargs=2, metavar=("LOW", "HIGH"))

    p = sub.add_parser("interferometer", help="dynamic-phase budget of an accelerated interferometer")
    _common(p)
    p.add_argument("--a", type=float, default=5e16)
    p.add_argument("--arm-length", type=float, default=0.04)
    p.add_argument("--arm-delta", type=float, default=1e-7)

    p = sub.add_parser("aai", help="Aharonov-Anandan invariant of the Unruh condensate")
    p.add_argument("--omega", type=float, required=True, help="mode frequency, rad/s")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--time", type=float, required=True, help="seconds")
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    return parser


def _emit(record, args, stream):
    if args.format == "json":
        stream.write(json.dumps(record, indent=2, sort_keys=True, default=_jsonable) + "\n")
        return
    keys = list(record)
    stream.write(",".join(keys) + "\n")
    stream.write(",".join(_cell(record[k]) for k in keys) + "\n")


def _cell(v):
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, complex):
        return [v.real, v.imag]
    raise TypeError(type(v))


def _run(args, stream):
    cmd = args.command
    if cmd == "catalog":
        if args.action == "list":
            for ident in catalog_ids():
                line = catalog_lookup(ident, args.units)
                stream.write(f"{ident}\t{line.omega0:.6g}\t{line.gamma0:.6g}\n")
        else:
            if not args.id:
                raise ValueError("catalog show needs an id")
            stream.write(json.dumps(asdict(catalog_lookup(args.id, args.units)), indent=2) + "\n")
        return

    if cmd == "aai":
        pair = condensate.unruh_bogoliubov(args.omega, args.a)
        record = {
            "omega": args.omega, "a": args.a, "time": args.time,
            "U": pair.U, "V": pair.V,
            "deltaE_over_hbar": condensate.energy_uncertainty(args.omega, pair),
            "S": condensate.aai_invariant(args.omega, pair, args.time),
            "occupation": condensate.rindler_occupation(args.omega, args.a),
            "unruh_temperature": condensate.unruh_temperature(args.a),
        }
        _emit(record, args, stream)
        return

    line = catalog_lookup(args.line, args.units)
    t = parse_time(args.time, line.omega0)

    if cmd == "coeffs":
        co = coefficients(line, _environment(args))
        _emit({"line": line.id, "sigma": co.sigma, "upsilon": co.upsilon, "ratio": co.ratio,
               "sigma_over_gamma0": co.sigma / line.gamma0}, args, stream)
    elif cmd == "evolve":
        spec = evolution_spec(line, _environment(args), args.theta0)
        state = rho_closed_form(spec, t)
        cx = chi_xi(spec, t)
        sf = survival_fraction(line, t, spec) if args.theta0 < math.pi else None
        record = {"time": t, "n1": state.n1, "n2": state.n2, "n3": state.n3, "r": state.r,
                  "chi": cx.chi, "xi": cx.xi,
                  "survival_decay": math.exp(-line.gamma0 * t),
                  "survival_population": sf.population_ratio if sf else float("nan")}
        if args.integrate:
            num = rho_integrated(spec, t)
            record.update({"n1_rk4": num.n1, "n2_rk4": num.n2, "n3_rk4": num.n3})
        _emit(record, args, stream)
    elif cmd == "phase":
        spec = evolution_spec(line, _environment(args), args.theta0)
        pb = total_phase(spec, t, unwrap=args.unwrap)
        record = asdict(pb)
        record["time"] = t
        if args.samples:
            record["geometric_sampled"] = geometric_phase_generic(sample_path(spec, t, args.samples))
        _emit(record, args, stream)
    elif cmd in ("unruh-sweep", "thermal-sweep"):
        mode = "unruh" if cmd == "unruh-sweep" else "thermal"
        req = SweepRequest(
            line_id=line.id, mode=mode, grid_min=args.min, grid_max=args.max,
            points=args.points, spacing=args.spacing, theta0=args.theta0, time=args.time,
            T_h=getattr(args, "T_h", None),
            values=tuple(args.values) if args.values else None, units=args.units,
        )
        rows = (unruh_sweep if mode == "unruh" else thermal_sweep)(req, jobs=args.jobs)
        if args.format == "csv":
            write_rows_csv(rows, stream, req)
        else:
            stream.write(rows_to_json(rows, req) + "\n")
    elif cmd == "thermometer":
        res = thermometer_invert(line, args.T_h, args.measured, t, args.theta0,
                                 tuple(args.bracket) if args.bracket else None)
        _emit(asdict(res), args, stream)
    elif cmd == "interferometer":
        rep = interferometer_report(line, args.a, args.arm_length, args.arm_delta, args.theta0)
        _emit(asdict(rep), args, stream)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on bad usage
    try:
        if getattr(args, "out", None):
            with open(args.out, "w", newline="") as fh:
                _run(args, fh)
        else:
            _run(args, sys.stdout)
    except PhysicsDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except UnknownLine as exc:
        print(f"error: unknown atomic line {exc.args[0]!r}; try 'catalog list'", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
