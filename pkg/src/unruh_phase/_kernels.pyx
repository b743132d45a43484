# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Pure-Python twins live in ``_kernels_py``."""
import numpy as np

from libc.math cimport atan2, sqrt, INFINITY


def rk4_linear(double[:, ::1] M, double[::1] y0, double h, Py_ssize_t nsteps):
    """Apply ``nsteps`` classic RK4 steps of size ``h`` to ``dy/dt = M y``."""
    cdef Py_ssize_t n = y0.shape[0]
    cdef Py_ssize_t step, i, j
    cdef double acc
    y_arr = np.array(y0, dtype=np.float64, copy=True)
    work = np.empty((5, n), dtype=np.float64)
    cdef double[::1] y = y_arr
    cdef double[:, ::1] k = work
    # k[0..3] are the stages, k[4] the stage argument
    for step in range(nsteps):
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += M[i, j] * y[j]
            k[0, i] = acc
        for i in range(n):
            k[4, i] = y[i] + 0.5 * h * k[0, i]
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += M[i, j] * k[4, j]
            k[1, i] = acc
        for i in range(n):
            k[4, i] = y[i] + 0.5 * h * k[1, i]
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += M[i, j] * k[4, j]
            k[2, i] = acc
        for i in range(n):
            k[4, i] = y[i] + h * k[2, i]
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += M[i, j] * k[4, j]
            k[3, i] = acc
        for i in range(n):
            y[i] += h / 6.0 * (k[0, i] + 2.0 * k[1, i] + 2.0 * k[2, i] + k[3, i])
    return y_arr


def overlap_phase_sum(double complex[:, ::1] v, double[::1] w):
    """Return ``(sum_i w[i] * arg<v_i|v_{i+1}>, min_i |<v_i|v_{i+1}>|)``."""
    cdef Py_ssize_t npts = v.shape[0]
    cdef Py_ssize_t i
    cdef double re, im, mag
    cdef double total = 0.0
    cdef double smallest = INFINITY
    if w.shape[0] != npts - 1:
        raise ValueError("need one weight per adjacent pair")
    for i in range(npts - 1):
        re = (v[i, 0].real * v[i + 1, 0].real + v[i, 0].imag * v[i + 1, 0].imag
              + v[i, 1].real * v[i + 1, 1].real + v[i, 1].imag * v[i + 1, 1].imag)
        im = (v[i, 0].real * v[i + 1, 0].imag - v[i, 0].imag * v[i + 1, 0].real
              + v[i, 1].real * v[i + 1, 1].imag - v[i, 1].imag * v[i + 1, 1].real)
        mag = sqrt(re * re + im * im)
        if mag < smallest:
            smallest = mag
        total += w[i] * atan2(im, re)
    return total, smallest
