"""Probe states, the named observables and their closed-form signals.

Separable probe: N copies of (|0> + e^{i phi}|1>)/sqrt(2), read out with
the collective observable A_R = sum_k sigma_x^(k).

NOON probe: (|0...0> + e^{i N phi}|1...1>)/sqrt(2), read out with the
parity-like observable A_N = prod_k sigma_x^(k).

Note that A_R squared is *not* the identity for N > 1; variances are
always computed as <A^2> - <A>^2, which for the separable probe still
gives N sin^2(phi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from noonsim.errors import ExactSizeExceededError
from noonsim.state import (
    SIGMA_X,
    SIGMA_Z,
    Basis,
    Observable,
    PureState,
    tensor_power,
)

MAX_EXACT_N = 12

Protocol = Literal["separable", "noon"]
PROTOCOLS = ("separable", "noon")


def check_protocol(protocol: str) -> None:
    if protocol not in PROTOCOLS:
        raise ValueError(f"unknown protocol {protocol!r}; expected one of {PROTOCOLS}")


@dataclass(frozen=True)
class ProbeSpec:
    protocol: Protocol
    n_particles: int
    phase: float

    def __post_init__(self):
        check_protocol(self.protocol)
        if self.n_particles < 1:
            raise ValueError("n_particles must be >= 1")
        if not math.isfinite(self.phase):
            raise ValueError("phase must be finite")

    def state(self) -> PureState:
        if self.protocol == "separable":
            return make_separable_probe(self.n_particles, self.phase)
        return make_noon_probe(self.n_particles, self.phase)


def _check_exact(n: int) -> None:
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    if n > MAX_EXACT_N:
        raise ExactSizeExceededError(
            f"N={n} exceeds the dense limit N<={MAX_EXACT_N}; use analytic_signal() instead"
        )


def single_particle_state(phi: float) -> PureState:
    return PureState(Basis.qubits(1), np.array([1.0, np.exp(1j * phi)]) / np.sqrt(2))


def make_separable_probe(n: int, phi: float) -> PureState:
    _check_exact(n)
    return tensor_power(single_particle_state(phi), n)


def make_noon_probe(n: int, phi: float) -> PureState:
    _check_exact(n)
    basis = Basis.qubits(n)
    amps = np.zeros(basis.dim, dtype=np.complex128)
    amps[0] = 1 / np.sqrt(2)
    amps[-1] = np.exp(1j * n * phi) / np.sqrt(2)
    return PureState(basis, amps)


def _embed(op: np.ndarray, k: int, n: int) -> np.ndarray:
    # op on particle k (0-based), identity elsewhere
    left = np.eye(2 ** k, dtype=np.complex128)
    right = np.eye(2 ** (n - k - 1), dtype=np.complex128)
    return np.kron(np.kron(left, op), right)


def make_observable(tag: str, n: int) -> Observable:
    """Build one of the named observables A, A_R, A_N, A_prime_N on N particles."""
    _check_exact(n)
    basis = Basis.qubits(n)
    if tag == "A":
        if n != 1:
            raise ValueError("tag 'A' is the single-particle observable; use N=1")
        return Observable(basis, SIGMA_X, tag="A")
    if tag == "A_R":
        m = sum(_embed(SIGMA_X, k, n) for k in range(n))
        return Observable(basis, m, tag="A_R")
    if tag == "A_N":
        m = tensor_power(Observable(Basis.qubits(1), SIGMA_X), n).matrix
        return Observable(basis, m, tag="A_N")
    if tag == "A_prime_N":
        m = tensor_power(Observable(Basis.qubits(1), SIGMA_Z), n).matrix
        return Observable(basis, m, tag="A_prime_N")
    raise ValueError(f"unknown observable tag {tag!r}")


@dataclass(frozen=True)
class AnalyticSignal:
    """Closed-form mean, variance and slope of a protocol's readout."""

    protocol: Protocol
    n: int
    mean_fn: Callable[[float], float]
    variance_fn: Callable[[float], float]
    derivative_fn: Callable[[float], float]


def analytic_signal(protocol: str, n: int) -> AnalyticSignal:
    check_protocol(protocol)
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    if protocol == "separable":
        return AnalyticSignal(
            protocol,
            n,
            mean_fn=lambda phi: n * math.cos(phi),
            variance_fn=lambda phi: n * math.sin(phi) ** 2,
            derivative_fn=lambda phi: -n * math.sin(phi),
        )
    return AnalyticSignal(
        protocol,
        n,
        mean_fn=lambda phi: math.cos(n * phi),
        variance_fn=lambda phi: math.sin(n * phi) ** 2,
        derivative_fn=lambda phi: -n * math.sin(n * phi),
    )


def readout_observable(protocol: str, n: int) -> Observable:
    check_protocol(protocol)
    return make_observable("A_R" if protocol == "separable" else "A_N", n)


__all__ = [
    "MAX_EXACT_N",
    "PROTOCOLS",
    "ProbeSpec",
    "AnalyticSignal",
    "make_separable_probe",
    "make_noon_probe",
    "make_observable",
    "analytic_signal",
    "readout_observable",
    "single_particle_state",
]
