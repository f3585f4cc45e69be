"""Exact solution counts for the product/shifted-product congruence systems.

For a tuple ``X = (x_1..x_s)`` of units write ``P(X) = prod x_i`` and
``Q(X) = prod (x_i - 1)``, both mod p. Every family below is a statement
about how tuples distribute over the signature ``(P, Q)``:

====== ===============================================================
A      #{X in [2,p-1]^s : P = 1}
A_u    #{X in [2,p-1]^s : P = u},  u != 0, 1
N      #{X in [1,p-1]^s : Q = u}
S      #{(x_1..x_{s+1}, Y) : prod x = P(Y), Q(x_1..x_s) = Q(Y)}
T      #{(X, Y) : P(X) = P(Y), Q(X) = Q(Y)}
Rprime #{(X, x_{s+1}, Y) : x_{s+1} != 1, P(X) x_{s+1} = P(Y), Q(X) = Q(Y) = 0}
B      #{X : P = 1, Q = 0}
D      sum_{u=2}^{p-1} #{X : P = u, Q = 0}**2
C1     #{(X, Y) : P(X) = P(Y) != 1, Q(X) = Q(Y) != 0}
C2     #{(X, Y) in [2,p-1]^{2s} : P(X) = P(Y) != 1}
M      #{(X, Y) : P(X) = P(Y) = 1, Q(X) = Q(Y) != 0}
====== ===============================================================

Closed forms are evaluated with exact rationals and must come out integral.
The brute-force oracles never enumerate pairs: they histogram one side by
signature and sum squared class sizes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .core import build_context, check_prime
from .errors import BadU, NoClosedForm, NonIntegral, TooLarge

ENUM_LIMIT = 10**8
M_RATIO_LIMIT = 5.0


class Family(str, enum.Enum):
    A = "A"
    A_u = "A_u"
    N = "N"
    S = "S"
    T = "T"
    Rprime = "Rprime"
    B = "B"
    D = "D"
    C1 = "C1"
    C2 = "C2"
    M = "M"


WITH_U = {Family.A_u, Family.N}
CLOSED = [f for f in Family if f not in (Family.C1, Family.M)]


def _exact(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NonIntegral(f"{what} evaluated to non-integer {x}")
    return x.numerator


def _check_u(family: Family, p: int, u: int | None) -> None:
    if family in WITH_U:
        if u is None or not 0 <= u < p:
            raise BadU(f"{family.value} needs u in [0, {p - 1}], got {u}")
        if family is Family.A_u and u in (0, 1):
            raise BadU("A_u needs u != 0, 1")
    elif u is not None:
        raise BadU(f"{family.value} takes no u")


# closed forms ----------------------------------------------------------------


def A_closed(p: int, s: int) -> int:
    """Tuples in ``[2,p-1]^s`` with product 1; ``A(0) = 1``."""
    return _exact(Fraction((p - 2) ** s + (-1) ** s * (p - 2), p - 1), "A")


def A_u_closed(p: int, s: int) -> int:
    return _exact(Fraction((p - 2) ** s - (-1) ** s, p - 1), "A_u")


def N_closed(p: int, s: int, u: int) -> int:
    # x_i - 1 = -w_i with w_i != 1 maps Q = u onto prod w = (-1)**s u,
    # so the exceptional class is u = (-1)**s, not u = p - 1
    if u % p == 0:
        return (p - 1) ** s - (p - 2) ** s
    if u % p == (-1) ** s % p:
        return A_closed(p, s)
    return A_u_closed(p, s)


def S_closed(p: int, s: int) -> int:
    a = (p - 1) ** s - (p - 2) ** s
    tail = Fraction((p - 2) ** (2 * s - 2) * (3 - 2 * p) + p - 2, p - 1)
    return _exact(a * a + (p - 1) * (p - 2) ** (2 * s - 2) + tail, "S")


def f_term(p: int, s: int) -> Fraction:
    """Correction term in the closed form of T; always an integer."""
    return Fraction(p * (p - 2) ** 2 * ((p - 2) ** (2 * s - 2) - p ** (s - 1)), (p - 1) ** 2) - Fraction(
        (p * p - 4) * (p ** (s - 1) - 1), (p - 1) ** 2
    )


def T_closed(p: int, s: int) -> int:
    head = (p - 1) ** (2 * s - 1) - 2 * (p - 2) * ((p - 1) ** (s - 1) * (p - 2) ** (s - 1) - p ** (s - 1))
    return _exact(head + f_term(p, s), "T")


def Rprime_closed(p: int, s: int) -> int:
    a = (p - 1) ** s - (p - 2) ** s
    return _exact(Fraction(p - 2, p - 1) * (a * a - 1), "Rprime")


def B_stated(p: int, s: int) -> Fraction:
    """B exactly as printed, without the all-ones tuple."""
    return Fraction((p - 1) ** s - (p - 2) ** s - 1, p - 1) - Fraction(p - 2, p - 1) * ((-1) ** s + 1)


def B_closed(p: int, s: int) -> int:
    # the all-ones tuple has P = 1 and Q = 0 but is missing from the printed form
    return _exact(B_stated(p, s) + 1, "B")


def D_closed(p: int, s: int) -> int:
    per_u = Fraction((p - 1) ** s - (p - 2) ** s + (-1) ** s, p - 1)
    return _exact((p - 2) * per_u * per_u, "D")


def C2_closed(p: int, s: int) -> int:
    a = Fraction((p - 2) ** s - (-1) ** s, p - 1)
    return _exact((p - 2) * a * a, "C2")


def count_closed(
    family: Family | str, p: int, s: int, u: int | None = None, *, corrected: bool = True
) -> int | Fraction:
    """Closed-form count.

    ``corrected=False`` returns the printed form of B (possibly a Fraction);
    every other family has a single form. C1 and M raise NoClosedForm.
    """
    family = Family(family)
    check_prime(p)
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    _check_u(family, p, u)
    if family is Family.A:
        return A_closed(p, s)
    if family is Family.A_u:
        return A_u_closed(p, s)
    if family is Family.N:
        return N_closed(p, s, u)
    if family is Family.S:
        return S_closed(p, s)
    if family is Family.T:
        return T_closed(p, s)
    if family is Family.Rprime:
        return Rprime_closed(p, s)
    if family is Family.B:
        return B_closed(p, s) if corrected else B_stated(p, s)
    if family is Family.D:
        return D_closed(p, s)
    if family is Family.C2:
        return C2_closed(p, s)
    raise NoClosedForm(f"{family.value} has no closed form; use count_brute")


# oracles ---------------------------------------------------------------------


def _sumsq(a) -> int:
    return sum(int(v) * int(v) for v in np.asarray(a).ravel() if v)


def enumeration_size(family: Family | str, p: int, s: int) -> int:
    family = Family(family)
    if family is Family.M:
        return (p - 2) ** (s - 1)
    if family in (Family.A, Family.A_u, Family.C2):
        return (p - 2) ** s
    return (p - 1) ** s


def _guard(size: int) -> None:
    if size > ENUM_LIMIT:
        raise TooLarge(f"enumeration of {size} tuples exceeds {ENUM_LIMIT}")


@lru_cache(maxsize=64)
def signature_histogram(p: int, s: int, lo: int) -> np.ndarray:
    """``H[P, Q]`` over all tuples in ``[lo, p-1]^s`` (read-only, cached)."""
    _guard((p - lo) ** s)
    h = kernels.pq_histogram(p, s, lo)
    h.setflags(write=False)
    return h


@lru_cache(maxsize=64)
def _m_histogram(p: int, s: int) -> np.ndarray:
    _guard((p - 2) ** max(s - 1, 0))
    h = kernels.unit_product_q_histogram(p, s, build_context(p).inv)
    h.setflags(write=False)
    return h


def count_brute(family: Family | str, p: int, s: int, u: int | None = None) -> int:
    """Count by enumeration (authoritative where it disagrees with a closed form)."""
    family = Family(family)
    check_prime(p)
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    _check_u(family, p, u)
    _guard(enumeration_size(family, p, s))
    if family is Family.M:
        return _sumsq(_m_histogram(p, s))
    if family in (Family.A, Family.A_u, Family.C2):
        by_product = signature_histogram(p, s, 2).sum(axis=1)
        if family is Family.A:
            return int(by_product[1])
        if family is Family.A_u:
            return int(by_product[u])
        return _sumsq(by_product[2:])
    H = signature_histogram(p, s, 1)
    if family is Family.N:
        return int(H[:, u].sum())
    if family is Family.S:
        # x_{s+1} is fixed by the product condition, so only Q must match
        return _sumsq(H.sum(axis=0))
    if family is Family.T:
        return _sumsq(H)
    if family is Family.Rprime:
        q0 = H[:, 0]
        return int(q0.sum()) ** 2 - _sumsq(q0)
    if family is Family.B:
        return int(H[1, 0])
    if family is Family.D:
        return _sumsq(H[2:, 0])
    if family is Family.C1:
        keep = np.ones(p, dtype=bool)
        keep[1] = False
        return _sumsq(H[keep][:, 1:])
    raise AssertionError(family)  # pragma: no cover


def count_C1(p: int, s: int) -> int:
    """C1 = T - B**2 - M - D with closed T, B, D and the histogram for M.

    Pairs with equal signatures split by whether the shared product is 1
    and whether the shared shifted product is 0; C1 is the remaining block.
    """
    check_prime(p)
    _guard((p - 2) ** (s - 1))
    return T_closed(p, s) - B_closed(p, s) ** 2 - count_brute(Family.M, p, s) - D_closed(p, s)


# recurrence and asymptotics ---------------------------------------------------


@dataclass
class RecurrenceReport:
    p: int
    s_max: int
    violations: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_recurrence(p: int, s_max: int) -> RecurrenceReport:
    """Check ``T(s+1) = (p-1)**(2s) + p (T(s) + R'(s)) - 2 S(s)`` for
    ``1 <= s < s_max`` and integrality of ``f(p, s)`` for ``s <= s_max``."""
    check_prime(p)
    rep = RecurrenceReport(p, s_max)
    for s in range(1, s_max + 1):
        if f_term(p, s).denominator != 1:
            rep.violations.append((p, s, "f(p,s) not integral"))
    for s in range(1, s_max):
        lhs = T_closed(p, s + 1)
        rhs = (p - 1) ** (2 * s) + p * (T_closed(p, s) + Rprime_closed(p, s)) - 2 * S_closed(p, s)
        if lhs != rhs:
            rep.violations.append((p, s, f"T recurrence: {lhs} != {rhs}"))
    return rep


@dataclass(frozen=True)
class MRow:
    p: int
    s: int
    M: int
    main: Fraction
    error: Fraction
    ratio: float


@dataclass
class MAsymptoticReport:
    s: int
    rows: list[MRow]
    limit: float = M_RATIO_LIMIT

    @property
    def passed(self) -> bool:
        return all(r.ratio <= self.limit for r in self.rows if r.p >= 11)


def m_main_term(p: int, s: int) -> Fraction:
    return Fraction((p - 2) ** (2 * s), (p - 1) ** 3)


def m_asymptotic_report(s: int, primes) -> MAsymptoticReport:
    """Compare M(s) with ``(p-2)**(2s) / (p-1)**3`` in units of ``p**(s-1/2)``."""
    rows = []
    for p in primes:
        M = count_brute(Family.M, p, s)
        main = m_main_term(p, s)
        err = M - main
        rows.append(MRow(p, s, M, main, err, abs(float(err)) / p ** (s - 0.5)))
    return MAsymptoticReport(s, rows)
