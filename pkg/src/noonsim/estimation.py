"""Phase sensitivity by error propagation, Monte Carlo readout and scaling fits.

The phase uncertainty of a readout A is ``dphi = std(A) / |d<A>/dphi|``.
For the separable probe this is 1/sqrt(N) at every phase, for the NOON
probe 1/N.

Monte Carlo mapping
-------------------
A *batch* is one repetition of the experiment from which a single phase
estimate is formed:

* separable: ``outcomes_per_batch`` repetitions of N independent
  single-particle sigma_x measurements, so ``N * outcomes_per_batch``
  outcomes of +-1 with ``P(+1) = (1 + cos phi) / 2``;
* noon: ``outcomes_per_batch`` measurements of A_N, outcomes +-1 with
  ``P(+1) = (1 + cos N phi) / 2``.

The estimate inverts the mean outcome on the principal branch,
``arccos(clip(mean, -1, 1))`` divided by 1 (separable) or N (noon).  The
phase is therefore only identified modulo the fringe symmetry: values
outside ``[0, pi]`` (separable) or ``[0, pi/N]`` (noon) are folded back
into that interval.

Random numbers come from numpy's PCG64 bit generator.  Batches are split
into fixed chunks of :data:`CHUNK_BATCHES`; chunk ``k`` draws from
``PCG64(SeedSequence(seed, spawn_key=(k,)))``.  Results depend only on the
seed and the parameters, not on the number of worker threads.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from noonsim.errors import DegeneratePhaseError, InsufficientDataError
from noonsim.metrology import analytic_signal, check_protocol

DERIVATIVE_STEP = 1e-5
STATIONARY_GUARD = 1e-6
CHUNK_BATCHES = 1024
SEED_MAX = 2 ** 64

Mode = Literal["closed_form", "numeric_derivative"]
FIT_MODES = ("closed_form", "numeric_derivative", "montecarlo")


@dataclass(frozen=True)
class SensitivityReport:
    protocol: str
    n: int
    phi: float
    mean: float
    std_dev: float
    derivative: float
    delta_phi: float


def _signal_phase(protocol: str, n: int, phi: float) -> float:
    return phi if protocol == "separable" else n * phi


def sensitivity(protocol: str, n: int, phi: float, mode: str = "closed_form",
                h: float = DERIVATIVE_STEP) -> SensitivityReport:
    """Phase uncertainty of one protocol evaluation.

    ``closed_form`` returns the analytic limit 1/sqrt(N) or 1/N for any
    phase (the sin factors cancel).  ``numeric_derivative`` differentiates
    the analytic mean by central differences with step ``h`` and refuses
    phases within 1e-6 of a stationary point of the mean.
    """
    check_protocol(protocol)
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    sig = analytic_signal(protocol, n)
    mean = sig.mean_fn(phi)
    std = math.sqrt(sig.variance_fn(phi))
    if mode == "closed_form":
        derivative = sig.derivative_fn(phi)
        delta = 1 / math.sqrt(n) if protocol == "separable" else 1 / n
    elif mode == "numeric_derivative":
        if abs(math.sin(_signal_phase(protocol, n, phi))) < STATIONARY_GUARD:
            raise DegeneratePhaseError(
                f"phi={phi!r} is a stationary point of the {protocol} signal for N={n}"
            )
        derivative = (sig.mean_fn(phi + h) - sig.mean_fn(phi - h)) / (2 * h)
        delta = std / abs(derivative)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return SensitivityReport(protocol, n, phi, mean, std, derivative, delta)


@dataclass(frozen=True, eq=False)
class MeasurementRecord:
    seed: int
    protocol: str
    n: int
    phi_true: float
    batches: int
    outcomes_per_batch: int
    phi_hats: np.ndarray = field(repr=False)
    empirical_std: float

    @property
    def mean_phi_hat(self) -> float:
        return float(np.mean(self.phi_hats))

    def identical(self, other: "MeasurementRecord") -> bool:
        """Bit-level equality of every field."""
        return (
            (self.seed, self.protocol, self.n, self.batches, self.outcomes_per_batch)
            == (other.seed, other.protocol, other.n, other.batches, other.outcomes_per_batch)
            and np.float64(self.phi_true).tobytes() == np.float64(other.phi_true).tobytes()
            and np.float64(self.empirical_std).tobytes() == np.float64(other.empirical_std).tobytes()
            and self.phi_hats.dtype == other.phi_hats.dtype
            and self.phi_hats.tobytes() == other.phi_hats.tobytes()
        )


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def sample_measurements(protocol: str, n: int, phi_true: float, batches: int,
                        outcomes_per_batch: int, seed: int,
                        workers: int = 1) -> MeasurementRecord:
    """Simulate ``batches`` phase estimates from +-1 detection events."""
    check_protocol(protocol)
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    if batches < 2:
        raise InsufficientDataError(f"need at least 2 batches for a spread, got {batches}")
    if outcomes_per_batch < 1:
        raise ValueError("outcomes_per_batch must be >= 1")
    seed = int(seed)
    if not 0 <= seed < SEED_MAX:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")

    p_plus = min(1.0, max(0.0, (1 + math.cos(_signal_phase(protocol, n, phi_true))) / 2))
    draws = n * outcomes_per_batch if protocol == "separable" else outcomes_per_batch
    scale = 1 if protocol == "separable" else n

    def run_chunk(k: int) -> np.ndarray:
        size = min(CHUNK_BATCHES, batches - k * CHUNK_BATCHES)
        plus = _chunk_rng(seed, k).binomial(draws, p_plus, size=size)
        mean = (2 * plus - draws) / draws
        return np.arccos(np.clip(mean, -1.0, 1.0)) / scale

    n_chunks = -(-batches // CHUNK_BATCHES)
    if workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_chunk, range(n_chunks)))
    else:
        parts = [run_chunk(k) for k in range(n_chunks)]
    phi_hats = np.concatenate(parts)
    phi_hats.setflags(write=False)
    return MeasurementRecord(
        seed=seed,
        protocol=protocol,
        n=n,
        phi_true=float(phi_true),
        batches=batches,
        outcomes_per_batch=outcomes_per_batch,
        phi_hats=phi_hats,
        empirical_std=float(np.std(phi_hats, ddof=1)),
    )


@dataclass(frozen=True)
class ScalingFit:
    protocol: str
    mode: str
    n_values: tuple
    delta_phis: tuple
    slope: float
    intercept: float
    r_squared: float


def loglog_fit(n_values: Sequence[int], delta_phis: Sequence[float]):
    """Least-squares line through (log10 N, log10 dphi): (slope, intercept, r^2)."""
    x = np.log10(np.asarray(n_values, dtype=float))
    y = np.log10(np.asarray(delta_phis, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - float(np.sum(resid ** 2)) / ss_tot
    return float(slope), float(intercept), min(1.0, max(0.0, r2))


def derive_seed(seed: int, n: int) -> int:
    """Independent per-N seed for scaling sweeps."""
    state = np.random.SeedSequence((int(seed), int(n))).generate_state(2, np.uint32)
    return int(state[0]) | (int(state[1]) << 32)


def fit_scaling(protocol: str, n_values: Sequence[int], phi: float = math.pi / 2,
                mode: str = "closed_form", *, batches: int = 2000,
                outcomes_per_batch: int = 1000, seed: int = 0,
                workers: int = 1) -> ScalingFit:
    """Fit the power law dphi ~ N**slope.

    ``phi`` fixes the operating point on the fringe: the true phase is
    ``phi`` for the separable probe and ``phi / N`` for the NOON probe, so
    every N is probed at the same point of its cosine signal.  In
    ``montecarlo`` mode dphi is the empirical spread of
    :func:`sample_measurements` with a per-N seed from :func:`derive_seed`.
    """
    check_protocol(protocol)
    ns = [int(v) for v in n_values]
    if len(ns) < 3:
        raise InsufficientDataError(f"need at least 3 particle numbers, got {len(ns)}")
    if ns[0] < 1 or any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("n_values must be strictly increasing positive integers")
    deltas = []
    for n in ns:
        phi_n = phi if protocol == "separable" else phi / n
        if mode == "montecarlo":
            rec = sample_measurements(protocol, n, phi_n, batches, outcomes_per_batch,
                                      derive_seed(seed, n), workers=workers)
            deltas.append(rec.empirical_std)
        elif mode in ("closed_form", "numeric_derivative"):
            deltas.append(sensitivity(protocol, n, phi_n, mode).delta_phi)
        else:
            raise ValueError(f"unknown mode {mode!r}; expected one of {FIT_MODES}")
    slope, intercept, r2 = loglog_fit(ns, deltas)
    return ScalingFit(protocol, mode, tuple(ns), tuple(deltas), slope, intercept, r2)
