"""Prime field context and the multiplicative characters mod p.

Characters are parametrised by discrete logarithms: with ``g`` the smallest
primitive root,

    chi_k(g**a) = exp(2*pi*i*k*a / (p-1)),    chi_k(0) = 0.

so products and conjugates are index arithmetic mod ``p - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import NonPrime, TooSmall

ORTHOGONALITY_TOL = 1e-9


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Primes ``q`` with ``lo <= q <= hi`` and ``q > 3``, ascending."""
    return [q for q in range(max(lo, 5), hi + 1) if is_prime(q)]


def smallest_primitive_root(p: int) -> int:
    n = p - 1
    qs = prime_factors(n)
    for g in range(2, p):
        if all(pow(g, n // q, p) != 1 for q in qs):
            return g
    raise NonPrime(f"{p} has no primitive root")  # pragma: no cover


def check_prime(p: int) -> None:
    """Raise NonPrime for composites and TooSmall for 2 and 3."""
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if p <= 3:
        raise TooSmall(f"p must exceed 3, got {p}")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PrimeContext:
    """Tables for a fixed prime ``p > 3``.

    Attributes
    ----------
    p, g
        The modulus and its smallest primitive root.
    dlog
        ``dlog[x] = a`` with ``g**a == x (mod p)`` for ``1 <= x < p``;
        ``dlog[0]`` is unused and set to 0.
    inv
        ``inv[x] * x == 1 (mod p)``; ``inv[0] = 0``.
    addchar
        ``addchar[x] = e(x/p) = exp(2*pi*i*x/p)``.
    powg
        ``powg[a] = g**a mod p`` for ``0 <= a < p - 1``.
    roots
        ``roots[j] = exp(2*pi*i*j/(p-1))``, the values taken by characters.

    All arrays are read-only. Use :func:`build_context` to construct.
    """

    p: int
    g: int
    dlog: np.ndarray
    inv: np.ndarray
    addchar: np.ndarray
    powg: np.ndarray
    roots: np.ndarray

    @property
    def order(self) -> int:
        """Order of the unit group, ``p - 1``."""
        return self.p - 1

    def char(self, k: int) -> "Character":
        return Character(self.p, k % (self.p - 1))

    def characters(self) -> Iterator["Character"]:
        for k in range(self.p - 1):
            yield Character(self.p, k)

    @property
    def principal(self) -> "Character":
        return Character(self.p, 0)

    def char_values(self, chi: "Character") -> np.ndarray:
        """Vector ``v[x] = chi(x)`` for ``0 <= x < p``."""
        _check(self, chi)
        n = self.p - 1
        v = self.roots[(chi.k * self.dlog) % n].copy()
        v[0] = 0.0
        return v


@dataclass(frozen=True, order=True)
class Character:
    """Multiplicative character ``chi_k`` mod ``p``."""

    p: int
    k: int

    def __post_init__(self):
        if not 0 <= self.k < self.p - 1:
            raise ValueError(f"character index {self.k} outside [0, {self.p - 2}]")

    @property
    def is_principal(self) -> bool:
        return self.k == 0

    def __mul__(self, other: "Character") -> "Character":
        if other.p != self.p:
            raise ValueError("characters of different moduli")
        return Character(self.p, (self.k + other.k) % (self.p - 1))

    def __pow__(self, e: int) -> "Character":
        return Character(self.p, (self.k * e) % (self.p - 1))

    def conj(self) -> "Character":
        return Character(self.p, (-self.k) % (self.p - 1))

    def at_minus_one(self) -> int:
        """``chi(-1)``; -1 is ``g**((p-1)/2)`` so this is ``(-1)**k``."""
        return -1 if self.k % 2 else 1


@lru_cache(maxsize=32)
def build_context(p: int) -> PrimeContext:
    """Populate all tables for the prime ``p``.

    Raises :class:`NonPrime` for composite ``p`` and :class:`TooSmall` for
    ``p <= 3``. Contexts are cached, so repeated calls are cheap.
    """
    p = int(p)
    check_prime(p)
    n = p - 1
    g = smallest_primitive_root(p)
    powg = np.empty(n, dtype=np.int64)
    dlog = np.zeros(p, dtype=np.int64)
    x = 1
    for a in range(n):
        powg[a] = x
        dlog[x] = a
        x = x * g % p
    inv = np.zeros(p, dtype=np.int64)
    # inverse of g**a is g**(n-a)
    inv[powg] = powg[(-np.arange(n)) % n]
    addchar = np.exp(2j * np.pi * np.arange(p) / p)
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    return PrimeContext(
        p=p,
        g=g,
        dlog=_frozen(dlog),
        inv=_frozen(inv),
        addchar=_frozen(addchar),
        powg=_frozen(powg),
        roots=_frozen(roots),
    )


def _check(ctx: PrimeContext, chi: Character) -> None:
    if chi.p != ctx.p:
        raise ValueError(f"character mod {chi.p} used with context mod {ctx.p}")


def char_eval(ctx: PrimeContext, chi: Character, x: int) -> complex:
    """``chi(x)`` with the convention ``chi(0) = 0`` for every character."""
    _check(ctx, chi)
    x %= ctx.p
    if x == 0:
        return 0j
    return complex(ctx.roots[(chi.k * int(ctx.dlog[x])) % (ctx.p - 1)])


def char_orthogonality_check(ctx: PrimeContext, tol: float = ORTHOGONALITY_TOL) -> bool:
    """Both orthogonality relations, evaluated from the context's own tables.

    Row relation: the sum of chi_k(x) over units vanishes for k != 0.
    Column relation: the sum over k of chi_k(x) is ``p - 1`` at ``x = 1``
    and zero elsewhere. Values are recomputed from ``dlog`` and ``roots``,
    so a corrupted table entry makes the check fail.
    """
    p, n = ctx.p, ctx.p - 1
    units = np.arange(1, p)
    table = ctx.roots[np.outer(np.arange(n), ctx.dlog[units]) % n]  # [k, x-1]
    rows = table.sum(axis=1)
    expected_rows = np.zeros(n, dtype=complex)
    expected_rows[0] = n
    cols = table.sum(axis=0)
    expected_cols = np.where(units == 1, n, 0).astype(complex)
    scale = tol * n
    if not np.all(np.abs(rows - expected_rows) <= scale):
        return False
    if not np.all(np.abs(cols - expected_cols) <= scale):
        return False
    # the exponent table must also be a bijection onto [0, n)
    return sorted(int(a) for a in ctx.dlog[units]) == list(range(n))
