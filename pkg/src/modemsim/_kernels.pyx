# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Same surface as ``_fallback``."""
import numpy as np

cimport numpy as cnp
from libc.math cimport cos, log, sin, sqrt
from libc.stdint cimport uint8_t, uint64_t

cnp.import_array()

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t MIX2 = 0x94D049BB133111EBULL
cdef double TWO_PI = 6.283185307179586
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _word(uint64_t seed, uint64_t index) noexcept nogil:
    cdef uint64_t z = seed + (index + 1) * GAMMA
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    return z ^ (z >> 31)


def splitmix64_words(seed, start, Py_ssize_t n):
    cdef uint64_t s = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t st = <uint64_t>start
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] out = np.empty(n, dtype=np.uint64)
    cdef uint64_t[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            o[i] = _word(s, st + i)
    return out


def uniforms(seed, start, Py_ssize_t n):
    cdef uint64_t s = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t st = <uint64_t>start
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            o[i] = <double>(_word(s, st + i) >> 11) * INV_2_53
    return out


def bits(seed, start, Py_ssize_t n):
    cdef uint64_t s = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t st = <uint64_t>start
    out = np.empty(n, dtype=np.uint8)
    cdef uint8_t[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            o[i] = <uint8_t>(_word(s, st + i) >> 63)
    return out


cdef void _fill_normals(uint64_t s, uint64_t st, double[::1] o, Py_ssize_t n,
                        const double[::1] x, double sigma, bint add) noexcept nogil:
    cdef Py_ssize_t k
    cdef double u1, u2, r, theta, z0, z1
    for k in range(0, n, 2):
        u1 = (<double>(_word(s, st + k) >> 11) + 1.0) * INV_2_53
        u2 = <double>(_word(s, st + k + 1) >> 11) * INV_2_53
        r = sqrt(-2.0 * log(u1))
        theta = TWO_PI * u2
        z0 = r * cos(theta)
        z1 = r * sin(theta)
        if add:
            o[k] = x[k] + sigma * z0
            if k + 1 < n:
                o[k + 1] = x[k + 1] + sigma * z1
        else:
            o[k] = z0
            if k + 1 < n:
                o[k + 1] = z1


def normals(seed, start, Py_ssize_t n):
    cdef uint64_t s = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double[::1] dummy = np.empty(0, dtype=np.float64)
    cdef uint64_t st = <uint64_t>start
    with nogil:
        _fill_normals(s, st, o, n, dummy, 0.0, False)
    return out


def add_normals(x, double sigma, seed, start):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0]
    cdef uint64_t s = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef uint64_t st = <uint64_t>start
    with nogil:
        _fill_normals(s, st, o, n, xv, sigma, True)
    return out


def block_correlate(x, ref, Py_ssize_t block):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] rv = np.ascontiguousarray(ref, dtype=np.float64)
    cdef Py_ssize_t nblocks = xv.shape[0] // block
    out = np.empty(nblocks, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t b, j, base, rbase
    cdef bint periodic = rv.shape[0] == block
    cdef double acc
    with nogil:
        for b in range(nblocks):
            base = b * block
            rbase = 0 if periodic else base
            acc = 0.0
            for j in range(block):
                acc = acc + xv[base + j] * rv[rbase + j]
            o[b] = acc
    return out
