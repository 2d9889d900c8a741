# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled amplitude-sweep kernels; semantics defined by fcl._kernels.pyref."""
from libc.math cimport cos, sin

ctypedef double complex dcomplex


def field_sweep(dcomplex[::1] amps, int L, double half):
    cdef double c = cos(half)
    cdef dcomplex s = 1j * sin(half)
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t x, g, i0, i1, lo
    cdef dcomplex a0, a1
    for x in range(L):
        lo = (<Py_ssize_t>1) << x
        for g in range(n >> 1):
            i0 = ((g >> x) << (x + 1)) | (g & (lo - 1))
            i1 = i0 | lo
            a0 = amps[i0]
            a1 = amps[i1]
            amps[i0] = c * a0 + s * a1
            amps[i1] = c * a1 + s * a0


def cluster_sweep(dcomplex[::1] amps, int L, double half):
    cdef double c = cos(half)
    cdef dcomplex s = 1j * sin(half)
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t dim = (<Py_ssize_t>1) << L
    cdef Py_ssize_t x, xl, xr, g, i0, i1, lo, s0
    cdef double sg
    cdef dcomplex a0, a1, ss
    for x in range(L):
        xl = (x + L - 1) % L
        xr = (x + 1) % L
        lo = (<Py_ssize_t>1) << x
        for g in range(n >> 1):
            i0 = ((g >> x) << (x + 1)) | (g & (lo - 1))
            i1 = i0 | lo
            s0 = i0 & (dim - 1)
            sg = 1.0 - 2.0 * <double>(((s0 >> xl) ^ (s0 >> xr)) & 1)
            ss = s * sg
            a0 = amps[i0]
            a1 = amps[i1]
            amps[i0] = c * a0 + ss * a1
            amps[i1] = c * a1 + ss * a0


def floquet_sweep(dcomplex[::1] amps, int L, double J, double B):
    field_sweep(amps, L, B / 2.0)
    cluster_sweep(amps, L, J / 2.0)


def exchange_sweep(dcomplex[::1] amps, int L, double jw):
    cdef double c = cos(jw)
    cdef dcomplex s = 1j * sin(jw)
    cdef Py_ssize_t dim = (<Py_ssize_t>1) << L
    cdef Py_ssize_t npos = amps.shape[0] // (2 * dim)
    cdef Py_ssize_t x, p, si, base, i0, i1, lo
    cdef dcomplex a0, a1
    for x in range(L):
        lo = (<Py_ssize_t>1) << x
        for p in range(npos):
            base = p * 2 * dim
            for si in range(dim):
                i0 = base + si
                i1 = base + dim + (si ^ lo)
                a0 = amps[i0]
                a1 = amps[i1]
                amps[i0] = c * a0 + s * a1
                amps[i1] = c * a1 + s * a0


def exchange_local(dcomplex[::1] amps, int L, double jw):
    cdef double c = cos(jw)
    cdef dcomplex s = 1j * sin(jw)
    cdef Py_ssize_t dim = (<Py_ssize_t>1) << L
    cdef Py_ssize_t npos = amps.shape[0] // (2 * dim)
    cdef Py_ssize_t x, p, si, base, i0, i1, lo
    cdef dcomplex a0, a1
    for p in range(npos):
        x = p % L
        lo = (<Py_ssize_t>1) << x
        base = p * 2 * dim
        for si in range(dim):
            i0 = base + si
            i1 = base + dim + (si ^ lo)
            a0 = amps[i0]
            a1 = amps[i1]
            amps[i0] = c * a0 + s * a1
            amps[i1] = c * a1 + s * a0
