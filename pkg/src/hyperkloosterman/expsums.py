"""Gauss sums, Jacobi sums and the mixed moment of normalised Gauss sums.

Gauss sums carry a leading minus sign throughout:

    G(chi) = -sum_{x=1}^{p-1} chi(x) e(x/p)

so ``G(chi_0) = 1`` and ``|G(chi)|**2 = p`` for non-principal ``chi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import kernels
from .accumulate import ComplexAccumulator, fsum_complex
from .core import Character, PrimeContext, _check

Method = Literal["direct", "fast"]


@dataclass(frozen=True, eq=False)
class GaussTable:
    """``values[k] = G(chi_k)`` for ``0 <= k < p - 1``."""

    p: int
    values: np.ndarray
    method: str = "direct"

    def __getitem__(self, chi: Character | int) -> complex:
        k = chi.k if isinstance(chi, Character) else chi
        return complex(self.values[k % (self.p - 1)])

    def __len__(self) -> int:
        return len(self.values)


def gauss_sum(ctx: PrimeContext, chi: Character) -> complex:
    """Single Gauss sum by compensated summation."""
    _check(ctx, chi)
    vals = ctx.char_values(chi)
    acc = ComplexAccumulator()
    acc.extend(-(vals[1:] * ctx.addchar[1:]))
    return acc.sum


def gauss_table(ctx: PrimeContext, method: Method = "direct") -> GaussTable:
    """All ``p - 1`` Gauss sums.

    ``direct`` is the quadratic double loop over (k, a) in discrete-log
    coordinates. ``fast`` takes the length-``p-1`` DFT of ``a -> e(g**a/p)``
    with numpy's FFT, which handles every length exactly.
    """
    if method == "direct":
        values = kernels.gauss_direct(ctx.p, ctx.powg, ctx.addchar, ctx.roots)
    elif method == "fast":
        n = ctx.p - 1
        seq = ctx.addchar[ctx.powg]
        # sum_a w**(k a) seq[a] is n * ifft(seq)[k]
        values = -n * np.fft.ifft(seq)
    else:
        raise ValueError(f"unknown method {method!r}")
    values = np.ascontiguousarray(values, dtype=np.complex128)
    values.setflags(write=False)
    return GaussTable(ctx.p, values, method)


def jacobi_sum(
    ctx: PrimeContext,
    chi: Character,
    psi: Character,
    method: Literal["direct", "gauss"] = "direct",
    table: GaussTable | None = None,
) -> complex:
    """``J(chi, psi) = sum_{x=2}^{p-1} chi(x) psi(1 - x)``.

    The ``gauss`` method uses the Gauss-sum factorisation when all three
    characters are non-principal. With the minus sign built into ``G`` this
    reads ``J = -G(chi) G(psi) / G(chi psi)`` (the unsigned sums give the
    familiar ratio without the sign). Degenerate pairs take the values forced
    by the defining sum::

        J(chi_0, chi_0) = p - 2
        J(chi, chi_0) = J(chi_0, chi) = -1            chi != chi_0
        J(chi, conj chi) = -chi(-1)                    chi != chi_0
    """
    _check(ctx, chi)
    _check(ctx, psi)
    p = ctx.p
    if method == "direct":
        a = ctx.char_values(chi)
        b = ctx.char_values(psi)
        xs = np.arange(2, p)
        acc = ComplexAccumulator()
        acc.extend(a[xs] * b[(1 - xs) % p])
        return acc.sum
    if method != "gauss":
        raise ValueError(f"unknown method {method!r}")
    if chi.is_principal and psi.is_principal:
        return complex(p - 2)
    if chi.is_principal or psi.is_principal:
        return -1 + 0j
    prod = chi * psi
    if prod.is_principal:
        return complex(-chi.at_minus_one())
    if table is None:
        table = gauss_table(ctx, "fast")
    return -table[chi] * table[psi] / table[prod]


@dataclass(frozen=True)
class MixedMomentSpec:
    """The fixed rank-3 instance of the normalised Gauss-sum moment.

    Row ``i`` of ``rows`` gives the exponents of ``(chi_1, chi_2, chi_3)`` in
    the ``i``-th Gauss sum; ``twists[i]`` is evaluated by those characters and
    ``c`` are the powers applied to each normalised component.
    """

    rows: tuple[tuple[int, ...], ...] = ((1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, -1))
    twists: tuple[tuple[int, ...], ...] = ((1, 1, -1), (1, 1, 1), (1, 1, 1), (1, 1, 1))
    signs: tuple[int, ...] = (1, 1, -1, -1)
    # chi_3 must also be non-principal (it was factored out as G(chi_3)G(conj chi_3))
    nonprincipal: tuple[int, ...] = field(default=(2,))

    @property
    def rank(self) -> int:
        return len(self.rows[0])

    def exponents(self, s: int) -> tuple[int, ...]:
        return tuple(sg * s for sg in self.signs)

    def rows_nonproportional(self) -> bool:
        rows = [np.array(r) for r in self.rows]
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                if np.linalg.matrix_rank(np.vstack([rows[i], rows[j]])) < 2:
                    return False
        return True

    @property
    def a(self) -> int:
        """Sum over rows of the smallest nonzero absolute exponent."""
        return sum(min(abs(v) for v in r if v) for r in self.rows)


MIXED_MOMENT = MixedMomentSpec()


def mixed_moment_sigma(
    ctx: PrimeContext,
    s: int,
    table: GaussTable | None = None,
    spec: MixedMomentSpec = MIXED_MOMENT,
) -> complex:
    """Average of the unimodular products over admissible character triples.

    A triple ``(chi_1, chi_2, chi_3)`` is admissible when every character
    ``chi**row`` is non-principal and so are the characters listed in
    ``spec.nonprincipal``. Each component is ``p**-0.5 chi(t_i) G(chi**a_i)``
    raised to ``c_i``.
    """
    if s < 1:
        raise ValueError("s must be positive")
    if table is None:
        table = gauss_table(ctx, "fast")
    n = ctx.p - 1
    unit = np.asarray(table.values) / np.sqrt(ctx.p)
    k = np.indices((n,) * spec.rank).reshape(spec.rank, -1)
    ok = np.ones(k.shape[1], dtype=bool)
    for j in spec.nonprincipal:
        ok &= k[j] != 0
    total = np.ones(k.shape[1], dtype=complex)
    minus_one = n // 2  # dlog of -1
    for row, tw, c in zip(spec.rows, spec.twists, spec.exponents(s)):
        idx = (np.asarray(row)[:, None] * k).sum(axis=0) % n
        ok &= idx != 0
        # chi(t) with t_l in {1, -1}: only the -1 entries contribute
        tw_log = np.zeros(k.shape[1], dtype=np.int64)
        for kk, t in zip(k, tw):
            if t == -1:
                tw_log += kk * minus_one
        total *= (ctx.roots[tw_log % n] * unit[idx]) ** c
    count = int(ok.sum())
    if count == 0:
        return 0j
    return fsum_complex(total[ok]) / count
