"""The s-dimensional hyper-Kloosterman sum twisted by a character.

    K(m, s, chi; p) = sum_{x_1..x_s in [1, p-1]} chi(x_1...x_s)
                          * e((x_1 + ... + x_s + m * inv(x_1...x_s)) / p)

Two evaluators are provided. :func:`k_naive` enumerates all ``(p-1)**s``
tuples. :func:`k_spectral` expands over multiplicative characters:

    K(m, s, chi) = (-1)**(s+1) / (p-1) * sum_psi conj(psi)(m) G(psi) G(chi psi)**s

which costs O(p) per value once the Gauss table is known.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .accumulate import fsum_complex
from .core import Character, PrimeContext, _check
from .errors import TooLarge, ZeroM
from .expsums import GaussTable

NAIVE_LIMIT = 10**8
DELIGNE_SLACK = 1e-9


@dataclass(frozen=True)
class KParams:
    m: int
    s: int
    chi: Character

    def __post_init__(self):
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")
        if not 0 <= self.m < self.chi.p:
            raise ValueError(f"m must lie in [0, {self.chi.p - 1}], got {self.m}")


@dataclass(frozen=True, eq=False)
class KGrid:
    """``values[m-1, k] = K(m, s, chi_k; p)`` for ``1 <= m < p``."""

    p: int
    s: int
    values: np.ndarray

    def __getitem__(self, key: tuple[int, int]) -> complex:
        m, k = key
        return complex(self.values[m - 1, k])


def k_naive(ctx: PrimeContext, q: KParams) -> complex:
    """Direct s-fold enumeration; refuses more than ``10**8`` tuples."""
    _check(ctx, q.chi)
    if (ctx.p - 1) ** q.s > NAIVE_LIMIT:
        raise TooLarge(f"(p-1)**s = {(ctx.p - 1) ** q.s} tuples exceeds {NAIVE_LIMIT}")
    return kernels.k_naive_sum(
        ctx.p, q.s, q.m, q.chi.k, ctx.addchar, ctx.roots, ctx.dlog, ctx.inv
    )


def k_zero(table: GaussTable, s: int, chi: Character) -> complex:
    """``K(0, s, chi) = (-G(chi))**s``: the sum factors coordinatewise."""
    return (-table[chi]) ** s


def _spectral_columns(ctx: PrimeContext, table: GaussTable, s: int, ks) -> np.ndarray:
    """Rows indexed by ``m - 1``, columns by the character indices ``ks``."""
    ks = np.ascontiguousarray(ks, dtype=np.int64)
    by_log = kernels.spectral_grid(
        np.ascontiguousarray(table.values), s, ctx.roots, ks
    )  # row b holds m = g**b
    return by_log[ctx.dlog[1:]]


def k_spectral(ctx: PrimeContext, table: GaussTable, q: KParams) -> complex:
    """Character expansion of K; needs ``m`` invertible (raises ZeroM)."""
    _check(ctx, q.chi)
    if table.p != ctx.p:
        raise ValueError("Gauss table and context disagree on p")
    if q.m % ctx.p == 0:
        raise ZeroM("spectral evaluation needs gcd(m, p) = 1; use k_zero or k_naive")
    n = ctx.p - 1
    b = int(ctx.dlog[q.m])
    j = np.arange(n)
    G = np.asarray(table.values)
    terms = ctx.roots[(-j * b) % n] * G * G[(j + q.chi.k) % n] ** q.s
    return (-1) ** (q.s + 1) * fsum_complex(terms) / n


def k_grid(ctx: PrimeContext, table: GaussTable, s: int) -> KGrid:
    """All ``(p-1)**2`` values for ``m`` in ``[1, p-1]`` and every character."""
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    values = _spectral_columns(ctx, table, s, np.arange(ctx.p - 1))
    values.setflags(write=False)
    return KGrid(ctx.p, s, values)


def k_column(ctx: PrimeContext, table: GaussTable, s: int, chi: Character) -> np.ndarray:
    """``K(m, s, chi)`` for ``m = 1..p-1`` as a vector."""
    _check(ctx, chi)
    return _spectral_columns(ctx, table, s, [chi.k])[:, 0]


@dataclass(frozen=True)
class DeligneReport:
    p: int
    s: int
    max_ratio: float

    @property
    def passed(self) -> bool:
        return self.max_ratio <= 1 + DELIGNE_SLACK


def deligne_bound(p: int, s: int) -> float:
    return (s + 1) * p ** (s / 2)


def deligne_check(grid: KGrid) -> DeligneReport:
    """Largest ``|K| / ((s+1) p**(s/2))`` over the grid."""
    ratio = float(np.abs(grid.values).max()) / deligne_bound(grid.p, grid.s)
    return DeligneReport(grid.p, grid.s, ratio)


@dataclass(frozen=True)
class SatoTateMoment:
    p: int
    s: int
    ell: int
    empirical: float
    # None for s >= 2, where no limiting law is asserted
    predicted: float | None

    @property
    def ratio(self) -> float | None:
        return None if self.predicted is None else self.empirical / self.predicted


def catalan(ell: int) -> int:
    return math.comb(2 * ell, ell) // (ell + 1)


def sato_tate_moment(
    ctx: PrimeContext, table: GaussTable, ell: int, s: int = 1
) -> SatoTateMoment:
    """Mean of ``|K(m, s, chi_0)|**(2 ell)`` over ``m = 1..p-1``.

    For ``s = 1`` the prediction is ``p**ell * Catalan(ell)``, the
    ``2 ell``-th moment of ``2 sqrt(p) cos(theta)`` under the Sato-Tate
    measure. For larger ``s`` only the empirical value is reported.
    """
    if not 1 <= ell <= 6:
        raise ValueError("ell must lie in [1, 6]")
    col = k_column(ctx, table, s, ctx.principal)
    empirical = math.fsum((np.abs(col) ** (2 * ell)).tolist()) / (ctx.p - 1)
    predicted = float(ctx.p**ell * catalan(ell)) if s == 1 else None
    return SatoTateMoment(ctx.p, s, ell, empirical, predicted)
