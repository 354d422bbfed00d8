"""Kernel backend selection.

The compiled Cython kernels are used when importable.  Setting the
environment variable ``NOONSIM_PURE_PYTHON=1`` before import forces the
numpy fallback.
"""
import os

from noonsim import _pykernels

if os.environ.get("NOONSIM_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from noonsim import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

kron = _impl.kron
matvec = _impl.matvec
quad_form = _impl.quad_form
pauli_expectation = _impl.pauli_expectation
apply_1q = _impl.apply_1q

__all__ = ["BACKEND", "kron", "matvec", "quad_form", "pauli_expectation", "apply_1q"]
