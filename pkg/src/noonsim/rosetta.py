"""Mach-Zehnder, Ramsey and Hadamard-circuit phase measurement.

All three representations send a single probe through
"transform, phase shift, transform back" and read out a two-outcome
detector.  They agree exactly once each convention is mapped onto the
Hadamard circuit:

==============  ==================  =====================================
representation  convention          mapping onto the Hadamard readout
==============  ==================  =====================================
hadamard        hadamard_exact      identity
ramsey          ry_pulse            swap detector outcomes (p0 <-> p1)
mach_zehnder    bs_symmetric        identity
mach_zehnder    bs_i_convention     swap detector outcomes (p0 <-> p1)
==============  ==================  =====================================

``p0`` of the mapped readout is ``cos^2(phi / 2)`` in every case.  For the
Mach-Zehnder, ``p0`` is the probability of finding the photon in the first
output mode, i.e. the Fock state ``|1, 0>``.

Beam splitter conventions act on creation operators:

* ``bs_i_convention``: a+ -> (a+ + i b+)/sqrt2, b+ -> (i a+ + b+)/sqrt2
* ``bs_symmetric``:    a+ -> (a+ + b+)/sqrt2,   b+ -> (a+ - b+)/sqrt2
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from noonsim import _kernels
from noonsim.errors import ConventionError, ExactSizeExceededError
from noonsim.metrology import make_noon_probe, make_observable
from noonsim.state import (
    HADAMARD,
    SIGMA_Z,
    TOL,
    Basis,
    Observable,
    PureState,
    UnitaryOp,
    apply,
    phase_gate,
    ry,
    tensor_power,
)

MAX_FOCK_N = 30
MAX_EQ8_N = 8
MAX_FOCK_CROSSCHECK_N = 4

REPRESENTATIONS = ("mach_zehnder", "ramsey", "hadamard")
CONVENTIONS = ("hadamard_exact", "ry_pulse", "bs_symmetric", "bs_i_convention")
BS_CONVENTIONS = ("bs_symmetric", "bs_i_convention")

# representation -> {convention: swap outcomes?}
COMPATIBILITY = {
    "hadamard": {"hadamard_exact": False},
    "ramsey": {"ry_pulse": True},
    "mach_zehnder": {"bs_symmetric": False, "bs_i_convention": True},
}
DEFAULT_CONVENTION = {
    "hadamard": "hadamard_exact",
    "ramsey": "ry_pulse",
    "mach_zehnder": "bs_i_convention",
}

# creation-operator maps: a+ -> ca[0] a+ + ca[1] b+, b+ -> cb[0] a+ + cb[1] b+
_MODE_MAPS = {
    "bs_i_convention": ((1, 1j), (1j, 1)),
    "bs_symmetric": ((1, 1), (1, -1)),
}


@dataclass(frozen=True)
class CircuitSpec:
    representation: str
    phi: float
    convention: str = ""

    def __post_init__(self):
        if self.representation not in REPRESENTATIONS:
            raise ConventionError(f"unknown representation {self.representation!r}")
        if not self.convention:
            object.__setattr__(self, "convention", DEFAULT_CONVENTION[self.representation])
        if self.convention not in CONVENTIONS:
            raise ConventionError(f"unknown convention {self.convention!r}")
        if self.convention not in COMPATIBILITY[self.representation]:
            raise ConventionError(
                f"convention {self.convention!r} is not defined for {self.representation!r}"
            )


@dataclass(frozen=True)
class DetectionStats:
    p0: float
    p1: float

    def __post_init__(self):
        for p in (self.p0, self.p1):
            if not -TOL <= p <= 1 + TOL:
                raise ValueError(f"probability {p!r} outside [0, 1]")
        if abs(self.p0 + self.p1 - 1) > TOL:
            raise ValueError(f"probabilities sum to {self.p0 + self.p1!r}")

    def swapped(self) -> "DetectionStats":
        return DetectionStats(self.p1, self.p0)

    @property
    def signal(self) -> float:
        """p0 - p1, the expectation of the +-1 readout."""
        return self.p0 - self.p1


def beam_splitter(n: int, convention: str = "bs_i_convention") -> UnitaryOp:
    """Restriction of a 50/50 beam splitter to the n-photon two-mode sector.

    Column ``j`` is the image of ``|n - j, j>``, obtained by expanding
    ``(a+')^(n-j) (b+')^j |0,0> / sqrt((n-j)! j!)`` in the output modes.
    """
    if convention not in _MODE_MAPS:
        raise ConventionError(f"unknown beam splitter convention {convention!r}")
    if not 0 <= n <= MAX_FOCK_N:
        raise ExactSizeExceededError(f"photon number must be in [0, {MAX_FOCK_N}], got {n}")
    (a0, a1), (b0, b1) = _MODE_MAPS[convention]
    fact = [math.factorial(k) for k in range(n + 1)]
    u = np.zeros((n + 1, n + 1), dtype=np.complex128)
    for j in range(n + 1):
        na, nb = n - j, j
        # (a0 a+ + a1 b+)^na (b0 a+ + b1 b+)^nb
        for k in range(na + 1):
            ca = math.comb(na, k) * a0 ** (na - k) * a1 ** k
            for l in range(nb + 1):
                coeff = ca * math.comb(nb, l) * b0 ** (nb - l) * b1 ** l
                q = k + l  # photons in mode b
                u[q, j] += coeff * math.sqrt(fact[n - q] * fact[q] / (fact[na] * fact[nb]))
    u /= 2 ** (n / 2)
    return UnitaryOp(Basis.fock(n), u)


def phase_shifter(n: int, phi: float) -> UnitaryOp:
    """Phase ``phi`` per photon in the second mode: |n-j, j> -> e^{i j phi}|n-j, j>."""
    return UnitaryOp(Basis.fock(n), np.diag(np.exp(1j * phi * np.arange(n + 1))))


def fock_state(n_a: int, n_b: int) -> PureState:
    return PureState.basis_state(Basis.fock(n_a + n_b), n_b)


def fock_noon_state(n: int, phi: float = 0.0) -> PureState:
    """(|n,0> + e^{i n phi}|0,n>)/sqrt2 in the Fock picture."""
    amps = np.zeros(n + 1, dtype=np.complex128)
    amps[0] = 1 / np.sqrt(2)
    amps[n] = np.exp(1j * n * phi) / np.sqrt(2)
    return PureState(Basis.fock(n), amps)


def _two_outcome(state: PureState) -> DetectionStats:
    probs = state.probabilities()
    p0 = float(probs[0])
    return DetectionStats(p0, 1.0 - p0)


def run_representation(spec: CircuitSpec, mapped: bool = True) -> DetectionStats:
    """Single-probe interferometer readout.

    With ``mapped=True`` the convention mapping from the module table is
    applied, so all representations return the Hadamard-circuit statistics.
    """
    if spec.representation == "hadamard":
        s = PureState.from_bits("0")
        t = UnitaryOp(Basis.qubits(1), HADAMARD)
        p = UnitaryOp(Basis.qubits(1), phase_gate(spec.phi))
        out = apply(t, apply(p, apply(t, s)))
    elif spec.representation == "ramsey":
        s = PureState.from_bits("0")
        t = UnitaryOp(Basis.qubits(1), ry(math.pi / 2))
        p = UnitaryOp(Basis.qubits(1), phase_gate(spec.phi))
        out = apply(t, apply(p, apply(t, s)))
    else:
        bs = beam_splitter(1, spec.convention)
        out = apply(bs, apply(phase_shifter(1, spec.phi), apply(bs, fock_state(1, 0))))
    stats = _two_outcome(out)
    if mapped and COMPATIBILITY[spec.representation][spec.convention]:
        stats = stats.swapped()
    return stats


def equivalence_sweep(phis) -> np.ndarray:
    """Rows of (phi, p0_mz, p0_ramsey_mapped, p0_hadamard, max_dev).

    The Mach-Zehnder column uses the default ``bs_i_convention``; the
    deviation also covers ``bs_symmetric``.
    """
    rows = []
    for phi in phis:
        phi = float(phi)
        mz = run_representation(CircuitSpec("mach_zehnder", phi)).p0
        mz_sym = run_representation(CircuitSpec("mach_zehnder", phi, "bs_symmetric")).p0
        ram = run_representation(CircuitSpec("ramsey", phi)).p0
        had = run_representation(CircuitSpec("hadamard", phi)).p0
        vals = (mz, mz_sym, ram, had)
        rows.append((phi, mz, ram, had, max(vals) - min(vals)))
    return np.array(rows, dtype=float).reshape(-1, 5)


def hadamard_layer(n: int) -> np.ndarray:
    return tensor_power(UnitaryOp(Basis.qubits(1), HADAMARD), n).matrix


def verify_eq8(n: int) -> float:
    """Max entrywise deviation of (H^{(x)n}) Z^{(x)n} (H^{(x)n}) from X^{(x)n}."""
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    if n > MAX_EQ8_N:
        raise ExactSizeExceededError(f"dense check limited to N<={MAX_EQ8_N}, got {n}")
    h = hadamard_layer(n)
    z = tensor_power(Observable(Basis.qubits(1), SIGMA_Z), n).matrix
    conj = h @ z @ h
    return float(np.max(np.abs(conj - make_observable("A_N", n).matrix)))


def noon_interferometer_signal(n: int, phi: float) -> float:
    """<A_N> on the NOON probe after phase accumulation (equals cos N phi).

    A_N is evaluated as the X-string on all particles without building the
    dense matrix.
    """
    state = make_noon_probe(n, phi)
    val = _kernels.pauli_expectation(state.amplitudes, (1 << n) - 1, 0)
    if abs(val.imag) >= TOL:
        raise ArithmeticError(f"imaginary expectation residue {val.imag:.3e}")
    return float(val.real)


def noon_signal_via_hadamard(n: int, phi: float) -> float:
    """<A'_N> measured after a Hadamard on every particle of the NOON probe.

    This is the readout of the identity A_N = (H..H) A'_N (H..H): rotate
    each particle with a local Hadamard, then take the Z-parity.
    """
    state = make_noon_probe(n, phi)
    v = state.amplitudes
    for k in range(n):
        v = _kernels.apply_1q(v, HADAMARD, k, n)
    val = _kernels.pauli_expectation(v, 0, (1 << n) - 1)
    return float(val.real)


def fock_parity_signal(n: int, phi: float, convention: str = "bs_symmetric") -> float:
    """Photon-counting readout of a Fock-picture NOON interferometer.

    The NOON state accumulates the phase, passes a second beam splitter,
    and the parity (-1)^{n_b} of the photon count in the second output
    mode is recorded.  Restricted to N <= 4.  The result is
    ``cos(N phi)`` for ``bs_symmetric`` and ``cos(N (phi + pi/2))`` for
    ``bs_i_convention`` (each reflection contributes a quarter-wave
    phase); see :func:`fock_parity_expected`.
    """
    if not 1 <= n <= MAX_FOCK_CROSSCHECK_N:
        raise ExactSizeExceededError(f"Fock cross-check limited to N<={MAX_FOCK_CROSSCHECK_N}")
    out = apply(beam_splitter(n, convention), fock_noon_state(n, phi))
    parity = (-1.0) ** np.arange(n + 1)
    return float(np.dot(parity, out.probabilities()))


def fock_parity_expected(n: int, phi: float, convention: str = "bs_symmetric") -> float:
    offset = {"bs_symmetric": 0.0, "bs_i_convention": math.pi / 2}[convention]
    return math.cos(n * (phi + offset))


@dataclass(frozen=True, eq=False)
class RosettaSweep:
    """Equivalence-sweep table plus optional operator-identity deviations."""

    rows: np.ndarray
    eq8_deviations: dict

    COLUMNS = ("phi", "p0_mz", "p0_ramsey_mapped", "p0_hadamard", "max_dev")

    @property
    def max_deviation(self) -> float:
        return float(self.rows[:, 4].max()) if len(self.rows) else 0.0
