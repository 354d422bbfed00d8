"""Compiled dense kernels; same contract as ``noonsim._pykernels``.

Dense matrix-vector work above ``BLAS_CUTOFF`` goes to numpy's BLAS,
which vectorizes and threads the reductions; the loops here win only for
small operands.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

BLAS_CUTOFF = 32

ctypedef double complex cplx


def kron(a, b):
    cdef const double[:, ::1] A = np.ascontiguousarray(a, dtype=np.complex128).view(np.float64)
    cdef const double[:, ::1] B = np.ascontiguousarray(b, dtype=np.complex128).view(np.float64)
    cdef Py_ssize_t ra = A.shape[0], ca = A.shape[1] // 2
    cdef Py_ssize_t rb = B.shape[0], cb = B.shape[1] // 2
    out = np.empty((ra * rb, ca * cb), dtype=np.complex128)
    cdef double[:, ::1] O = out.view(np.float64)
    cdef Py_ssize_t i, j, k, l, row, col
    cdef double ar, ai, br, bi
    with nogil:
        for i in range(ra):
            for k in range(rb):
                row = i * rb + k
                for j in range(ca):
                    ar = A[i, 2 * j]
                    ai = A[i, 2 * j + 1]
                    col = 2 * j * cb
                    for l in range(cb):
                        br = B[k, 2 * l]
                        bi = B[k, 2 * l + 1]
                        O[row, col + 2 * l] = ar * br - ai * bi
                        O[row, col + 2 * l + 1] = ar * bi + ai * br
    return out


def matvec(m, v):
    if len(v) > BLAS_CUTOFF:
        return np.asarray(m, dtype=np.complex128) @ np.asarray(v, dtype=np.complex128)
    cdef const double[:, ::1] M = np.ascontiguousarray(m, dtype=np.complex128).view(np.float64)
    cdef const double[::1] V = np.ascontiguousarray(v, dtype=np.complex128).view(np.float64)
    cdef Py_ssize_t n = M.shape[0], c = M.shape[1] // 2, i, j
    if V.shape[0] != 2 * c:
        raise ValueError("shape mismatch")
    out = np.empty(n, dtype=np.complex128)
    cdef double[::1] O = out.view(np.float64)
    cdef double re, im, mr, mi, vr, vi
    with nogil:
        for i in range(n):
            re = 0.0
            im = 0.0
            for j in range(c):
                mr = M[i, 2 * j]
                mi = M[i, 2 * j + 1]
                vr = V[2 * j]
                vi = V[2 * j + 1]
                re = re + mr * vr - mi * vi
                im = im + mr * vi + mi * vr
            O[2 * i] = re
            O[2 * i + 1] = im
    return out


def quad_form(v, m):
    if len(v) > BLAS_CUTOFF:
        v = np.asarray(v, dtype=np.complex128)
        return complex(np.vdot(v, np.asarray(m, dtype=np.complex128) @ v))
    cdef const double[:, ::1] M = np.ascontiguousarray(m, dtype=np.complex128).view(np.float64)
    cdef const double[::1] V = np.ascontiguousarray(v, dtype=np.complex128).view(np.float64)
    cdef Py_ssize_t n = V.shape[0] // 2, i, j
    if M.shape[0] != n or M.shape[1] != 2 * n:
        raise ValueError("shape mismatch")
    cdef double re, im, mr, mi, vr, vi, tot_re = 0.0, tot_im = 0.0
    with nogil:
        for i in range(n):
            re = 0.0
            im = 0.0
            for j in range(n):
                mr = M[i, 2 * j]
                mi = M[i, 2 * j + 1]
                vr = V[2 * j]
                vi = V[2 * j + 1]
                re = re + mr * vr - mi * vi
                im = im + mr * vi + mi * vr
            # conj(v_i) * (re + i im)
            tot_re = tot_re + V[2 * i] * re + V[2 * i + 1] * im
            tot_im = tot_im + V[2 * i] * im - V[2 * i + 1] * re
    return complex(tot_re, tot_im)


def pauli_expectation(v, long long xmask, long long zmask):
    cdef const cplx[::1] V = np.ascontiguousarray(v, dtype=np.complex128)
    cdef Py_ssize_t n = V.shape[0], i
    cdef long long z
    cdef int parity
    cdef cplx total = 0, term
    with nogil:
        for i in range(n):
            z = i & zmask
            parity = 0
            while z:
                parity ^= 1
                z &= z - 1
            term = V[i ^ xmask].conjugate() * V[i]
            if parity:
                total = total - term
            else:
                total = total + term
    return complex(total)


def apply_1q(v, gate, int target, int n_qubits):
    cdef const cplx[::1] V = np.ascontiguousarray(v, dtype=np.complex128)
    cdef const cplx[:, ::1] G = np.ascontiguousarray(gate, dtype=np.complex128)
    cdef Py_ssize_t dim = V.shape[0]
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << (n_qubits - target - 1)
    cdef Py_ssize_t block = 2 * stride
    cdef Py_ssize_t base, off, i0, i1
    out = np.empty(dim, dtype=np.complex128)
    cdef cplx[::1] O = out
    cdef cplx g00 = G[0, 0], g01 = G[0, 1], g10 = G[1, 0], g11 = G[1, 1]
    cdef cplx a0, a1
    with nogil:
        base = 0
        while base < dim:
            for off in range(stride):
                i0 = base + off
                i1 = i0 + stride
                a0 = V[i0]
                a1 = V[i1]
                O[i0] = g00 * a0 + g01 * a1
                O[i1] = g10 * a0 + g11 * a1
            base += block
    return out
