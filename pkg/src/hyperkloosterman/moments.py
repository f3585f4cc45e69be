"""Second and fourth power means of K(m, s, chi; p).

The fourth moment is assembled exactly. With

    Gamma = p**(s+1) - (p**s + ... + p)
    Q1 = Gamma - p**s          (second moment, non-principal chi)
    Q0 = Gamma - 1             (second moment, principal chi)

the orthogonality expansion over a second character gives

    (p-1) * M4 = (p-2) Q1**2 + Q0**2 + p**(s+1) (p-1) ((p-1) C1 - C2)

where C1 and C2 are the congruence counts from :mod:`counts`. The only
ingredient without a closed form is M(s) inside C1, computed by histogram.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from .core import Character, PrimeContext, check_prime
from .counts import B_stated, D_closed, Family, T_closed, count_brute, count_C1, count_closed
from .errors import NonIntegral, TooLarge, Unsupported
from .expsums import GaussTable, gauss_table
from .hyperk import k_column, k_grid

THEOREM_RATIO_LIMIT = 10.0
SECOND_DIRECT_MAX_P = 200
SECOND_DIRECT_MAX_S = 4
FOURTH_DIRECT_MAX_P = 500


def gamma_total(p: int, s: int) -> int:
    """``sum_{m=0}^{p-1} |K(m, s, chi)|**2``, the same for every chi."""
    check_prime(p)
    return p ** (s + 1) - sum(p**i for i in range(1, s + 1))


@dataclass(frozen=True)
class SecondMomentValue:
    p: int
    s: int
    principal: bool
    value: int


def second_moment_closed(p: int, s: int, principal: bool) -> int:
    g = gamma_total(p, s)
    return g - 1 if principal else g - p**s


def second_moment_stated(p: int, s: int, principal: bool) -> int:
    """The printed values; the principal case omits the ``-1``."""
    g = gamma_total(p, s)
    return g if principal else g - p**s


def second_moment(
    ctx: PrimeContext,
    s: int,
    chi: Character,
    method: Literal["closed", "direct"] = "closed",
    table: GaussTable | None = None,
) -> SecondMomentValue | float:
    """``sum_{m=1}^{p-1} |K(m, s, chi)|**2``.

    ``closed`` returns an exact :class:`SecondMomentValue`; ``direct`` sums
    the spectral values in floating point (p <= 200, s <= 4).
    """
    if method == "closed":
        return SecondMomentValue(ctx.p, s, chi.is_principal, second_moment_closed(ctx.p, s, chi.is_principal))
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")
    if ctx.p > SECOND_DIRECT_MAX_P or s > SECOND_DIRECT_MAX_S:
        raise TooLarge(f"direct second moment limited to p <= {SECOND_DIRECT_MAX_P}, s <= {SECOND_DIRECT_MAX_S}")
    if table is None:
        table = gauss_table(ctx, "direct")
    col = k_column(ctx, table, s, chi)
    return math.fsum((np.abs(col) ** 2).tolist())


def _assemble(p: int, s: int, q1: int, q0: int, c1: int | Fraction, c2: int) -> Fraction:
    num = (p - 2) * q1 * q1 + q0 * q0 + p ** (s + 1) * (p - 1) * ((p - 1) * c1 - c2)
    return Fraction(num, p - 1)


def fourth_moment_exact(p: int, s: int) -> int:
    """``sum_{m=1}^{p-1} sum_chi |K(m, s, chi)|**4`` as an exact integer."""
    check_prime(p)
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    g = gamma_total(p, s)
    c1 = count_C1(p, s)
    c2 = count_closed(Family.C2, p, s)
    m4 = _assemble(p, s, g - p**s, g - 1, c1, c2)
    if m4.denominator != 1:
        raise NonIntegral(f"fourth moment assembly at p={p}, s={s} left remainder")
    return m4.numerator


def fourth_moment_uncorrected(p: int, s: int) -> Fraction:
    """The same assembly fed with the printed (uncorrected) second moment and B.

    Kept to show the corrections matter; the result need not be integral.
    """
    check_prime(p)
    c1 = T_closed(p, s) - B_stated(p, s) ** 2 - count_brute(Family.M, p, s) - D_closed(p, s)
    c2 = count_closed(Family.C2, p, s)
    return _assemble(p, s, second_moment_stated(p, s, False), second_moment_stated(p, s, True), c1, c2)


def fourth_moment_direct(ctx: PrimeContext, table: GaussTable, s: int) -> float:
    """Float fourth moment from the full spectral grid (p <= 500)."""
    if ctx.p > FOURTH_DIRECT_MAX_P:
        raise TooLarge(f"direct fourth moment limited to p <= {FOURTH_DIRECT_MAX_P}")
    grid = k_grid(ctx, table, s)
    return math.fsum((np.abs(grid.values) ** 4).ravel().tolist())


@dataclass(frozen=True)
class ReferenceInterval:
    """Main term with the order of the known error term."""

    main: int
    scale: int

    def constant(self, value: int) -> float:
        """Measured implicit constant ``|value - main| / scale``."""
        return abs(value - self.main) / self.scale


def closed_form_reference(p: int, s: int) -> int | ReferenceInterval:
    """Known fourth moments: exact for s = 1, 2; ``2p**8 + O(p**7)`` for s = 3."""
    check_prime(p)
    if s == 1:
        return 2 * p**4 - 8 * p**3 + 10 * p**2 - 3 * p - 1
    if s == 2:
        return (p - 1) * (2 * p**5 - 7 * p**4 + 2 * p**3 + 8 * p**2 + 4 * p + 1)
    if s == 3:
        return ReferenceInterval(2 * p**8, p**7)
    raise Unsupported(f"no reference value for s = {s}")


@dataclass(frozen=True)
class MomentReport:
    p: int
    s: int
    m4: int
    main: int
    error: int
    ratio: float
    method: str = "exact"

    @classmethod
    def from_value(cls, p: int, s: int, m4: int, method: str = "exact") -> "MomentReport":
        main = 2 * p ** (2 * s + 2)
        err = m4 - main
        return cls(p, s, m4, main, err, abs(err) / p ** (2 * s + 1.5), method)


def moment_report(p: int, s: int) -> MomentReport:
    return MomentReport.from_value(p, s, fourth_moment_exact(p, s))


def _report_job(args: tuple[int, int]) -> MomentReport:
    return moment_report(*args)


def default_workers() -> int:
    env = os.environ.get("HYPERK_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def theorem_report(s: int, primes: Sequence[int], workers: int | None = None) -> list[MomentReport]:
    """One exact report per prime, in the order given.

    Primes are independent, so they run in a process pool when
    ``workers > 1``; the output order never depends on the worker count.
    """
    primes = list(primes)
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(primes) <= 1:
        return [moment_report(p, s) for p in primes]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_report_job, [(p, s) for p in primes]))


@dataclass(frozen=True)
class TheoremCheck:
    ratio_ok: bool
    slope: float
    max_ratio: float

    @property
    def passed(self) -> bool:
        return self.ratio_ok and self.slope <= 0


def theorem_check(reports: Sequence[MomentReport], limit: float = THEOREM_RATIO_LIMIT) -> TheoremCheck:
    """Ratio bounded by ``limit`` for p >= 11 and a non-positive
    least-squares slope of ratio against p over the upper half of primes."""
    big = [r for r in reports if r.p >= 11]
    ratio_ok = all(r.ratio <= limit for r in big)
    top = list(reports)[len(reports) // 2 :]
    if len(top) >= 2:
        slope = float(np.polyfit([r.p for r in top], [r.ratio for r in top], 1)[0])
    else:
        slope = 0.0
    return TheoremCheck(ratio_ok, slope, max((r.ratio for r in reports), default=0.0))
