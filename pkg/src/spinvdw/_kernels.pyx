# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid evaluation kernel; same contract as spinvdw._kernels_py."""

from libc.math cimport cos, sin, log2

import numpy as np


def schmidt_entropy_grid(double[:, ::1] b, double[::1] phases,
                         double[::1] degeneracy, double[::1] taus):
    """Schmidt probabilities and base-2 entropies for every grid time."""
    cdef Py_ssize_t n_tau = taus.shape[0]
    cdef Py_ssize_t dim = b.shape[0]
    probs_arr = np.empty((n_tau, dim), dtype=np.float64)
    ent_arr = np.empty(n_tau, dtype=np.float64)
    cos_arr = np.empty(dim, dtype=np.float64)
    sin_arr = np.empty(dim, dtype=np.float64)
    cdef double[:, ::1] probs = probs_arr
    cdef double[::1] ent = ent_arr
    cdef double[::1] cs = cos_arr
    cdef double[::1] sn = sin_arr
    cdef Py_ssize_t t, m, n
    cdef double tau, angle, re, im, p, total
    for t in range(n_tau):
        tau = taus[t]
        for n in range(dim):
            angle = phases[n] * tau
            cs[n] = cos(angle)
            sn[n] = sin(angle)
        total = 0.0
        for m in range(dim):
            re = 0.0
            im = 0.0
            for n in range(dim):
                re += b[m, n] * cs[n]
                im += b[m, n] * sn[n]
            p = degeneracy[m] * (re * re + im * im)
            probs[t, m] = p
            if p > 1e-300:
                total -= p * log2(p)
        # entropy is nonnegative; rounding of p log p at p ~ 1 can leave -1e-16
        ent[t] = total if total > 0.0 else 0.0
    return probs_arr, ent_arr
