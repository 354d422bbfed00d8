"""Numpy implementations of the dense kernels.

These are the reference versions of the routines in ``_ckernels.pyx`` and
are used whenever the compiled extension is missing or disabled.  Both
modules expose the same functions with the same semantics; all arrays are
``complex128``.
"""
import numpy as np


def kron(a, b):
    """Kronecker product of two 2-D arrays."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def matvec(m, v):
    return np.asarray(m, dtype=np.complex128) @ np.asarray(v, dtype=np.complex128)


def quad_form(v, m):
    """Return <v|m|v> as a complex number."""
    v = np.asarray(v, dtype=np.complex128)
    return complex(np.vdot(v, np.asarray(m, dtype=np.complex128) @ v))


def pauli_expectation(v, xmask, zmask):
    """Return <v|P|v> for the X/Z string P encoded by bit masks.

    ``P|i> = (-1)**popcount(i & zmask) |i ^ xmask>``; bit ``n-1-k`` of a
    mask selects qubit ``k`` (qubit 0 is the most significant bit).
    """
    v = np.asarray(v, dtype=np.complex128)
    idx = np.arange(v.shape[0], dtype=np.int64)
    parity = np.zeros(v.shape[0], dtype=np.int64)
    z = idx & zmask
    while np.any(z):
        parity ^= z & 1
        z >>= 1
    signs = 1 - 2 * parity
    return complex(np.vdot(v[idx ^ xmask], signs * v))


def apply_1q(v, gate, target, n_qubits):
    """Apply a 2x2 gate to qubit ``target`` of an ``n_qubits`` register."""
    v = np.asarray(v, dtype=np.complex128)
    g = np.asarray(gate, dtype=np.complex128)
    t = v.reshape((2 ** target, 2, 2 ** (n_qubits - target - 1)))
    return np.einsum("ij,ajb->aib", g, t).reshape(-1)
