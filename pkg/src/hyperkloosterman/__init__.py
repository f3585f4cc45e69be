"""Twisted hyper-Kloosterman sums modulo a prime.

Exact and floating evaluation of K(m, s, chi; p), the second and fourth
power means over m and chi, and the congruence counts that feed them, each
cross-checked against brute-force enumeration.
"""

from .core import Character, PrimeContext, build_context, char_eval, char_orthogonality_check
from .counts import Family, count_brute, count_closed
from .errors import HyperKError
from .expsums import gauss_sum, gauss_table, jacobi_sum, mixed_moment_sigma
from .hyperk import KParams, deligne_check, k_grid, k_naive, k_spectral, sato_tate_moment
from .kernels import BACKEND
from .moments import (
    closed_form_reference,
    fourth_moment_exact,
    second_moment,
    theorem_check,
    theorem_report,
)
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Character",
    "Family",
    "HyperKError",
    "KParams",
    "PrimeContext",
    "build_context",
    "char_eval",
    "char_orthogonality_check",
    "closed_form_reference",
    "count_brute",
    "count_closed",
    "deligne_check",
    "fourth_moment_exact",
    "gauss_sum",
    "gauss_table",
    "jacobi_sum",
    "k_grid",
    "k_naive",
    "k_spectral",
    "mixed_moment_sigma",
    "run_suite",
    "sato_tate_moment",
    "second_moment",
    "theorem_check",
    "theorem_report",
]
