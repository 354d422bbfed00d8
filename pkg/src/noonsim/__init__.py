"""Simulations of entanglement-enhanced phase estimation.

Separable and NOON probe states, error-propagation sensitivity and Monte
Carlo readout, the Mach-Zehnder / Ramsey / Hadamard equivalence, and
N-photon interference lithography.
"""
__version__ = "0.1.0"

from noonsim._kernels import BACKEND
from noonsim.errors import NoonsimError
from noonsim.estimation import (
    MeasurementRecord,
    ScalingFit,
    SensitivityReport,
    fit_scaling,
    sample_measurements,
    sensitivity,
)
from noonsim.lithography import (
    ExposurePattern,
    SubstrateGrid,
    compare_classical,
    expose,
    measure_fringes,
)
from noonsim.metrology import (
    ProbeSpec,
    analytic_signal,
    make_noon_probe,
    make_observable,
    make_separable_probe,
)
from noonsim.rosetta import (
    CircuitSpec,
    DetectionStats,
    beam_splitter,
    noon_interferometer_signal,
    phase_shifter,
    run_representation,
    verify_eq8,
)
from noonsim.state import (
    Basis,
    Observable,
    PureState,
    UnitaryOp,
    apply,
    expectation,
    tensor,
    variance,
)
