"""Time the compiled kernels against their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--steps 20000] [--samples 100001]
"""
import argparse
import timeit

import numpy as np

from unruh_phase import _kernels_py, kernels
from unruh_phase.bloch import eigenframes
from unruh_phase.dynamics import bloch_generator
from unruh_phase.environment import EnvironmentSpec, catalog_lookup
from unruh_phase.experiments import evolution_spec
from unruh_phase.phase import _canonical_gauge, sample_path


def _inputs(steps, samples):
    line = catalog_lookup("Rb87-5P12-F1F2")
    spec = evolution_spec(line, EnvironmentSpec.accelerated(5e16))
    gen = np.ascontiguousarray(bloch_generator(spec) / spec.omega)
    y0 = np.array([1.0, 1.0, 0.0, 0.0])
    path = sample_path(spec, 1 / line.omega0, samples)
    lam, vecs = eigenframes(path.states, path.azimuth)
    v = np.ascontiguousarray(_canonical_gauge(vecs)[:, 0, :])
    w = 0.5 * (lam[:-1, 0] + lam[1:, 0])
    return (gen, y0, 1.0 / steps, steps), (v, w)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--steps", type=int, default=20_000, help="RK4 steps per call")
    parser.add_argument("--samples", type=int, default=100_001, help="path samples per call")
    args = parser.parse_args(argv)

    rk4_args, overlap_args = _inputs(args.steps, args.samples)
    impls = {"python": _kernels_py}
    if kernels.BACKEND == "cython":
        from unruh_phase import _kernels

        impls["cython"] = _kernels
    else:
        print("compiled extension not available; timing the Python fallback only")

    print(f"{'kernel':<20}{'backend':<10}{'best of ' + str(args.repeat):>14}")
    best = {}
    for name, call in (("rk4_linear", lambda m: m.rk4_linear(*rk4_args)),
                       ("overlap_phase_sum", lambda m: m.overlap_phase_sum(*overlap_args))):
        for backend, mod in impls.items():
            t = min(timeit.repeat(lambda: call(mod), number=1, repeat=args.repeat))
            best[name, backend] = t
            print(f"{name:<20}{backend:<10}{t * 1e3:>11.3f} ms")
        if len(impls) == 2:
            print(f"{'':<20}{'speedup':<10}{best[name, 'python'] / best[name, 'cython']:>12.1f}x")


if __name__ == "__main__":
    main()
