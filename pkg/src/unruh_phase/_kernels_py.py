"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Same signatures and semantics; selected automatically when the extension is
missing or when ``UNRUH_PHASE_PURE_PYTHON`` is set.
"""
import numpy as np


def rk4_linear(M, y0, h, nsteps):
    """Apply ``nsteps`` classic RK4 steps of size ``h`` to ``dy/dt = M y``.

    For a linear system one RK4 step is ``y <- P y`` with
    ``P = I + hM + (hM)^2/2 + (hM)^3/6 + (hM)^4/24``; forming ``P`` once
    leaves one matrix-vector product per step.
    """
    hm = h * np.asarray(M, dtype=float)
    n = hm.shape[0]
    p = np.eye(n)
    term = np.eye(n)
    for k in range(1, 5):
        term = term @ hm / k
        p = p + term
    rows = [list(map(float, row)) for row in p]
    y = [float(v) for v in y0]
    rng = range(n)
    for _ in range(int(nsteps)):
        y = [sum(rows[i][j] * y[j] for j in rng) for i in rng]
    return np.array(y)


def overlap_phase_sum(v, w):
    """Return ``(sum_i w[i] * arg<v_i|v_{i+1}>, min_i |<v_i|v_{i+1}>|)``."""
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=float)
    if w.shape[0] != v.shape[0] - 1:
        raise ValueError("need one weight per adjacent pair")
    z = np.einsum("ij,ij->i", v[:-1].conj(), v[1:])
    return float(np.dot(w, np.angle(z))), float(np.abs(z).min())
