# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.  Semantics documented in _fallback.py."""

from libc.math cimport M_PI
from libc.stdlib cimport free, malloc

cdef extern from "complex.h":
    double complex cexp(double complex) nogil
    double complex conj(double complex) nogil
    double cabs(double complex) nogil

BACKEND_NAME = "compiled"

DEF DENOM_FLOOR = 1e-9


def measurement_block(long long n, long long d, long long s):
    # long long so absurdly large chain lengths reach the range checks
    # instead of dying in argument conversion
    if n < 1 or d < 2 or s < 1 or s >= 2 * n:
        raise ValueError("measurement_block: index out of range")
    cdef double shift = s / (2.0 * n)
    cdef double complex num = 1.0 - cexp(1j * (M_PI * s / n))
    cdef double step = 2.0 * M_PI / d
    cdef list out = [0j] * (d * d)
    cdef long long j, m
    cdef double complex den
    for j in range(d):
        for m in range(d):
            den = 1.0 - cexp(1j * (step * (m + shift - j)))
            if cabs(den) < DENOM_FLOOR:
                raise ValueError("measurement_block: vanishing denominator")
            out[j * d + m] = num / (d * den)
    return out


def amplitude_table(state, int dim_a, int dim_b, vec_a, int n_a, vec_b, int n_b):
    if len(state) != dim_a * dim_b:
        raise ValueError("amplitude_table: state length mismatch")
    if len(vec_a) != n_a * dim_a or len(vec_b) != n_b * dim_b:
        raise ValueError("amplitude_table: direction stack length mismatch")
    cdef int i, j, x, y
    cdef double complex c, acc
    cdef double complex *st = <double complex *> malloc(dim_a * dim_b * sizeof(double complex))
    cdef double complex *va = <double complex *> malloc(n_a * dim_a * sizeof(double complex))
    cdef double complex *vb = <double complex *> malloc(n_b * dim_b * sizeof(double complex))
    cdef double complex *t = <double complex *> malloc(dim_b * sizeof(double complex))
    if st == NULL or va == NULL or vb == NULL or t == NULL:
        free(st); free(va); free(vb); free(t)
        raise MemoryError()
    try:
        for i in range(dim_a * dim_b):
            st[i] = state[i]
        for i in range(n_a * dim_a):
            va[i] = conj(vec_a[i])
        for i in range(n_b * dim_b):
            vb[i] = conj(vec_b[i])
        out = [0j] * (n_a * n_b)
        for x in range(n_a):
            for j in range(dim_b):
                t[j] = 0
            for i in range(dim_a):
                c = va[x * dim_a + i]
                if c != 0:
                    for j in range(dim_b):
                        t[j] = t[j] + c * st[i * dim_b + j]
            for y in range(n_b):
                acc = 0
                for j in range(dim_b):
                    acc = acc + t[j] * vb[y * dim_b + j]
                out[x * n_b + y] = acc
        return out
    finally:
        free(st); free(va); free(vb); free(t)
