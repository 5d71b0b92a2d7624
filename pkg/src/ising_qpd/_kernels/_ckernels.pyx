# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. See ``_pykernels`` for the reference semantics."""
from libc.math cimport exp, fabs, log

import numpy as np
cimport numpy as cnp

cnp.import_array()


def metropolis_sweeps(signed char[::1] spins, const double[:, ::1] uniforms,
                      const double[:, ::1] accept, const long long[::1] qs,
                      long long thin, long long sweep0,
                      long long[::1] mag_out, long long[:, ::1] corr_out,
                      long long[::1] state_out, long long sample0):
    cdef Py_ssize_t n = spins.shape[0]
    cdef Py_ssize_t n_sweeps = uniforms.shape[0]
    cdef Py_ssize_t n_q = qs.shape[0]
    cdef bint record_states = state_out.shape[0] > 0
    cdef Py_ssize_t k, i, j, m, left, right, row
    cdef long long taken = 0, total, q
    cdef long long code
    cdef int si, h
    with nogil:
        for k in range(n_sweeps):
            for i in range(n):
                si = spins[i]
                left = i - 1 if i > 0 else n - 1
                right = i + 1 if i < n - 1 else 0
                h = spins[left] + spins[right]
                if uniforms[k, i] < accept[(si + 1) >> 1, (h + 2) >> 1]:
                    spins[i] = -si
            if thin > 0 and (sweep0 + k + 1) % thin == 0:
                row = sample0 + taken
                total = 0
                for m in range(n):
                    total += spins[m]
                mag_out[row] = total
                for j in range(n_q):
                    q = qs[j]
                    total = 0
                    for m in range(n):
                        total += spins[m] * spins[(m + q) % n]
                    corr_out[row, j] = total
                if record_states:
                    code = 0
                    for m in range(n):
                        if spins[m] < 0:
                            code |= (<long long>1) << m
                    state_out[row] = code
                taken += 1
    return taken


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline void _neumaier(double *acc, double *comp, double x) nogil:
    cdef double t = acc[0] + x
    if fabs(acc[0]) >= fabs(x):
        comp[0] += (acc[0] - t) + x
    else:
        comp[0] += (x - t) + acc[0]
    acc[0] = t


def enumerate_moments(int n, double a, double b, int q):
    """Sum over all 2^n configurations, binned by (down spins, domain walls).

    The energy depends only on those two counts, so the loop tallies exact
    integer counts per bin and the Boltzmann weights enter once per bin.
    """
    cdef unsigned long long n_conf = (<unsigned long long>1) << n
    cdef unsigned long long c, rot
    cdef unsigned long long mask = n_conf - 1
    cdef int qq = q % n
    cdef int k, d, s0, sq
    cdef long long[:, ::1] count = np.zeros((n + 1, n + 1), dtype=np.int64)
    cdef long long[:, ::1] first = np.zeros((n + 1, n + 1), dtype=np.int64)
    cdef long long[:, ::1] pair = np.zeros((n + 1, n + 1), dtype=np.int64)
    with nogil:
        for c in range(n_conf):
            rot = ((c >> 1) | (c << (n - 1))) & mask
            k = __builtin_popcountll(c)
            d = __builtin_popcountll(c ^ rot)
            s0 = 1 - 2 * <int>(c & 1)
            sq = 1 - 2 * <int>((c >> qq) & 1)
            count[k, d] += 1
            first[k, d] += s0
            pair[k, d] += s0 * sq

    cdef double top = -1e308, e, w
    cdef double z = 0.0, mag = 0.0, corr = 0.0, cz = 0.0, cm = 0.0, cc = 0.0
    for k in range(n + 1):
        for d in range(n + 1):
            if count[k, d]:
                e = a * (n - 2 * d) + b * (n - 2 * k)
                if e > top:
                    top = e
    for k in range(n + 1):
        for d in range(n + 1):
            if count[k, d]:
                w = exp(a * (n - 2 * d) + b * (n - 2 * k) - top)
                _neumaier(&z, &cz, w * count[k, d])
                _neumaier(&mag, &cm, w * first[k, d])
                _neumaier(&corr, &cc, w * pair[k, d])
    z += cz
    return top + log(z), (mag + cm) / z, (corr + cc) / z
