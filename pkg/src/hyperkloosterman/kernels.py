"""Kernel backend chosen at import.

The compiled extension is preferred; the numpy module is the fallback and
can be forced with ``HYPERK_PURE=1``. ``BACKEND`` names the active one.
"""

import os

from . import _kernels_py

try:
    if os.environ.get("HYPERK_PURE", "") not in ("", "0"):
        raise ImportError("pure backend requested")
    from . import _kernels as _active
    BACKEND = "cython"
except ImportError:
    _active = _kernels_py
    BACKEND = "python"

pq_histogram = _active.pq_histogram
unit_product_q_histogram = _active.unit_product_q_histogram
k_naive_sum = _active.k_naive_sum
# an FFT per column beats any hand-written loop, so both backends share it
spectral_grid = _kernels_py.spectral_grid
gauss_direct = _active.gauss_direct


def available_backends() -> dict:
    """Map of backend name to kernel module, for parity tests and benchmarks."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out["cython"] = _kernels
    return out
