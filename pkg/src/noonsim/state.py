"""Dense state vectors, observables and unitaries.

Two basis families are supported:

* ``qubit`` registers of ``n`` two-level systems, dimension ``2**n``.
  Particle 1 is the most significant bit, so ``|q1 q2 ... qn>`` has index
  ``int("q1q2...qn", 2)``.
* ``fock`` sectors of two optical modes with ``n`` photons in total,
  dimension ``n + 1``.  Index ``i`` is the state ``|n - i, i>``, i.e. the
  photon number of the second mode.

All objects are immutable once built and validate their defining property
(normalization, Hermiticity, unitarity) at construction time against the
single tolerance :data:`TOL`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional, Union

import numpy as np

from noonsim import _kernels
from noonsim.errors import (
    BasisMismatchError,
    NonHermitianError,
    NonUnitaryError,
    NormalizationError,
)

TOL = 1e-12
MAX_QUBITS = 14

Tag = Literal["A", "A_R", "A_N", "A_prime_N", "custom"]


@dataclass(frozen=True)
class Basis:
    kind: Literal["qubit", "fock"]
    n: int

    def __post_init__(self):
        if self.kind not in ("qubit", "fock"):
            raise ValueError(f"unknown basis family {self.kind!r}")
        if self.kind == "qubit" and not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"qubit register size must be in [1, {MAX_QUBITS}], got {self.n}")
        if self.kind == "fock" and self.n < 0:
            raise ValueError(f"photon number must be nonnegative, got {self.n}")

    @property
    def dim(self) -> int:
        return 2 ** self.n if self.kind == "qubit" else self.n + 1

    @classmethod
    def qubits(cls, n: int) -> "Basis":
        return cls("qubit", n)

    @classmethod
    def fock(cls, n: int) -> "Basis":
        return cls("fock", n)


def _frozen_array(data, shape) -> np.ndarray:
    arr = np.array(data, dtype=np.complex128)
    if arr.shape != shape:
        raise BasisMismatchError(f"expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("entries must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PureState:
    basis: Basis
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen_array(self.amplitudes, (self.basis.dim,))
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > TOL:
            raise NormalizationError(f"state norm^2 is {norm!r}, not 1")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.basis.dim

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @classmethod
    def basis_state(cls, basis: Basis, index: int) -> "PureState":
        amps = np.zeros(basis.dim, dtype=np.complex128)
        amps[index] = 1.0
        return cls(basis, amps)

    @classmethod
    def from_bits(cls, bits: str) -> "PureState":
        """Computational basis state of a qubit register, e.g. ``"010"``."""
        return cls.basis_state(Basis.qubits(len(bits)), int(bits, 2))


@dataclass(frozen=True, eq=False)
class Observable:
    basis: Basis
    matrix: np.ndarray
    tag: Optional[Tag] = "custom"

    def __post_init__(self):
        dim = self.basis.dim
        m = _frozen_array(self.matrix, (dim, dim))
        dev = np.max(np.abs(m - m.conj().T)) if dim else 0.0
        if dev > TOL:
            raise NonHermitianError(f"matrix deviates from Hermitian by {dev:.3e}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.basis.dim


@dataclass(frozen=True, eq=False)
class UnitaryOp:
    basis: Basis
    matrix: np.ndarray
    _checked: bool = field(default=True, repr=False)

    def __post_init__(self):
        dim = self.basis.dim
        m = _frozen_array(self.matrix, (dim, dim))
        if self._checked:
            dev = np.max(np.abs(m.conj().T @ m - np.eye(dim)))
            if dev > TOL:
                raise NonUnitaryError(f"U^dagger U deviates from identity by {dev:.3e}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.basis.dim

    def dagger(self) -> "UnitaryOp":
        return UnitaryOp(self.basis, self.matrix.conj().T, _checked=False)

    def __matmul__(self, other: "UnitaryOp") -> "UnitaryOp":
        _same_basis(self.basis, other.basis)
        return UnitaryOp(self.basis, self.matrix @ other.matrix)


Operand = Union[PureState, Observable, UnitaryOp]


def _same_basis(a: Basis, b: Basis) -> None:
    if a != b:
        raise BasisMismatchError(f"basis mismatch: {a} vs {b}")


def tensor(a: Operand, b: Operand) -> Operand:
    """Kronecker product of two qubit-register objects of the same kind.

    The tag of a tensor product of observables is ``"custom"``.
    """
    if type(a) is not type(b):
        raise TypeError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")
    if a.basis.kind != "qubit" or b.basis.kind != "qubit":
        raise BasisMismatchError("tensor is defined for qubit registers only")
    basis = Basis.qubits(a.basis.n + b.basis.n)
    if isinstance(a, PureState):
        v = _kernels.kron(a.amplitudes.reshape(-1, 1), b.amplitudes.reshape(-1, 1))
        return PureState(basis, v.reshape(-1))
    m = _kernels.kron(a.matrix, b.matrix)
    if isinstance(a, Observable):
        return Observable(basis, m, tag="custom")
    return UnitaryOp(basis, m)


def tensor_power(a: Operand, n: int) -> Operand:
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    out = a
    for _ in range(n - 1):
        out = tensor(out, a)
    return out


def expectation(s: PureState, o: Observable) -> float:
    """Return the real expectation value <s|o|s>.

    Raises NonHermitianError if the imaginary residue reaches TOL.
    """
    _same_basis(s.basis, o.basis)
    val = _kernels.quad_form(s.amplitudes, o.matrix)
    if abs(val.imag) >= TOL:
        raise NonHermitianError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def variance(s: PureState, o: Observable) -> float:
    _same_basis(s.basis, o.basis)
    ov = _kernels.matvec(o.matrix, s.amplitudes)
    mean = complex(np.vdot(s.amplitudes, ov))
    if abs(mean.imag) >= TOL:
        raise NonHermitianError(f"expectation has imaginary part {mean.imag:.3e}")
    second = float(np.vdot(ov, ov).real)
    var = second - mean.real ** 2
    if var < 0.0:
        # roundoff only; anything larger is a bug
        if var < -TOL * max(1.0, second):
            raise ArithmeticError(f"negative variance {var!r}")
        var = 0.0
    return var


def apply(u: UnitaryOp, s: PureState) -> PureState:
    _same_basis(u.basis, s.basis)
    return PureState(s.basis, _kernels.matvec(u.matrix, s.amplitudes))


def apply_local(gate: np.ndarray, target: int, s: PureState) -> PureState:
    """Apply a 2x2 unitary to particle ``target`` (0-based) of a qubit register."""
    if s.basis.kind != "qubit":
        raise BasisMismatchError("local gates act on qubit registers")
    if not 0 <= target < s.basis.n:
        raise IndexError(f"qubit {target} out of range for {s.basis.n} qubits")
    return PureState(s.basis, _kernels.apply_1q(s.amplitudes, gate, target, s.basis.n))


# single-particle matrices
I2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
for _m in (I2, SIGMA_X, SIGMA_Z, HADAMARD):
    _m.setflags(write=False)


def phase_gate(phi: float) -> np.ndarray:
    """|1> -> e^{i phi}|1>, |0> unchanged."""
    return np.array([[1, 0], [0, np.exp(1j * phi)]], dtype=np.complex128)


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)
