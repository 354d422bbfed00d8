"""Independent reference computations used by the tests.

Nothing here calls into noonsim; each routine is written from the
definition with explicit loops so it cannot share a bug with the library.
"""
import cmath
import math

import numpy as np
from scipy.linalg import expm


def brute_expectation(v, m):
    n = len(v)
    total = 0j
    for i in range(n):
        for j in range(n):
            total += v[i].conjugate() * m[i][j] * v[j]
    return total


def brute_kron(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def bits(index, n):
    """Bits of ``index`` with particle 1 first (most significant)."""
    return [(index >> (n - 1 - k)) & 1 for k in range(n)]


def product_state(single, n):
    """Amplitudes of single^{(x)n} by direct enumeration."""
    out = np.empty(2 ** n, dtype=complex)
    for idx in range(2 ** n):
        amp = 1 + 0j
        for b in bits(idx, n):
            amp *= single[b]
        out[idx] = amp
    return out


def x_sum_matrix(n):
    """sum_k sigma_x^(k) built entrywise: flips of one bit."""
    dim = 2 ** n
    m = np.zeros((dim, dim))
    for i in range(dim):
        for k in range(n):
            m[i ^ (1 << k), i] += 1
    return m


def x_string_matrix(n):
    dim = 2 ** n
    m = np.zeros((dim, dim))
    for i in range(dim):
        m[(dim - 1) ^ i, i] = 1
    return m


def fock_beam_splitter_expm(n, theta=math.pi / 4):
    """Sector matrix of exp(i theta (a+ b + a b+)) from its generator.

    Index j is |n - j, j>.  With theta = pi/4 this maps
    a+ -> (a+ + i b+)/sqrt2, b+ -> (i a+ + b+)/sqrt2.
    """
    g = np.zeros((n + 1, n + 1), dtype=complex)
    for j in range(n + 1):
        na, nb = n - j, j
        # a+ b : moves a photon from b to a
        if nb > 0:
            g[j - 1, j] += math.sqrt((na + 1) * nb)
        # a b+ : moves a photon from a to b
        if na > 0:
            g[j + 1, j] += math.sqrt(na * (nb + 1))
    return expm(1j * theta * g)


def hadamard_circuit_p0(phi):
    """|<0| H P(phi) H |0>|^2 by explicit 2x2 multiplication."""
    s = 1 / math.sqrt(2)
    # H|0> = (s, s); P -> (s, s e^{i phi}); <0|H = (s, s)
    amp = s * s + s * s * cmath.exp(1j * phi)
    return abs(amp) ** 2


def random_state(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def random_unitary(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))
