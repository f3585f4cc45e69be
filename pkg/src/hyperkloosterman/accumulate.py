"""Compensated complex summation with a running error bound."""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

UNIT_ROUNDOFF = 2.0**-53


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


class ComplexAccumulator:
    """Neumaier summation applied to the real and imaginary parts.

    ``bound`` is an a-priori bound on the rounding error committed by the
    accumulation itself (not on errors already present in the addends):

        |computed - exact| <= (2u + 4 n u**2) * sum(|x_i|)   per component

    with ``u = 2**-53`` and ``n`` the number of addends. The two component
    bounds are combined with ``hypot``.
    """

    __slots__ = ("_re", "_im", "_cre", "_cim", "_abs_re", "_abs_im", "n")

    def __init__(self, value: complex = 0j):
        self._re = 0.0
        self._im = 0.0
        self._cre = 0.0
        self._cim = 0.0
        self._abs_re = 0.0
        self._abs_im = 0.0
        self.n = 0
        if value:
            self.add(value)

    def add(self, z: complex) -> None:
        re, im = z.real, z.imag
        self._re, e = _two_sum(self._re, re)
        self._cre += e
        self._im, e = _two_sum(self._im, im)
        self._cim += e
        self._abs_re += abs(re)
        self._abs_im += abs(im)
        self.n += 1

    def extend(self, values: Iterable[complex]) -> "ComplexAccumulator":
        for z in values:
            self.add(complex(z))
        return self

    def __iadd__(self, z: complex) -> "ComplexAccumulator":
        self.add(z)
        return self

    @property
    def sum(self) -> complex:
        return complex(self._re + self._cre, self._im + self._cim)

    @property
    def compensation(self) -> complex:
        return complex(self._cre, self._cim)

    @property
    def bound(self) -> float:
        u = UNIT_ROUNDOFF
        c = 2 * u + 4 * self.n * u * u
        return math.hypot(c * self._abs_re, c * self._abs_im)

    def __repr__(self) -> str:
        return f"ComplexAccumulator(sum={self.sum!r}, bound={self.bound:.3g})"


def csum(values: Iterable[complex]) -> complex:
    """Compensated sum of complex values."""
    return ComplexAccumulator().extend(values).sum


def fsum_complex(values: np.ndarray) -> complex:
    """Correctly rounded sum of a complex array (``math.fsum`` per part)."""
    values = np.asarray(values, dtype=complex)
    return complex(math.fsum(values.real.tolist()), math.fsum(values.imag.tolist()))
