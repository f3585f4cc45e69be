"""numpy implementations of the hot kernels.

Same signatures and results as the compiled ``_kernels`` module; used when
the extension is not built or ``HYPERK_PURE=1`` is set.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

# tuples per vectorised block
_BLOCK = 1 << 20


def _tuple_blocks(p: int, s: int, lo: int):
    """Yield ``(P, Q, S)`` arrays over blocks of tuples in ``[lo, p-1]**s``.

    ``P`` is the product, ``Q`` the product of ``x_i - 1`` and ``S`` the sum,
    all reduced mod ``p``. ``s = 0`` yields the single empty tuple.
    """
    xs = np.arange(lo, p, dtype=np.int64)
    width = len(xs)
    inner = 0
    size = 1
    while inner < s and size * width <= _BLOCK:
        size *= width
        inner += 1
    P = np.ones(1, dtype=np.int64)
    Q = np.ones(1, dtype=np.int64)
    S = np.zeros(1, dtype=np.int64)
    for _ in range(inner):
        P = (P[:, None] * xs[None, :] % p).ravel()
        Q = (Q[:, None] * (xs - 1)[None, :] % p).ravel()
        S = ((S[:, None] + xs[None, :]) % p).ravel()
    if inner == s:
        yield P, Q, S
        return
    for head in itertools.product(range(lo, p), repeat=s - inner):
        hp, hq, hs = 1, 1, 0
        for x in head:
            hp = hp * x % p
            hq = hq * (x - 1) % p
            hs = (hs + x) % p
        yield P * hp % p, Q * hq % p, (S + hs) % p


def pq_histogram(p: int, s: int, lo: int) -> np.ndarray:
    """Counts ``H[P, Q]`` over all tuples in ``[lo, p-1]**s``."""
    h = np.zeros(p * p, dtype=np.int64)
    for P, Q, _ in _tuple_blocks(p, s, lo):
        h += np.bincount(P * p + Q, minlength=p * p)
    return h.reshape(p, p)


def unit_product_q_histogram(p: int, s: int, inv: np.ndarray) -> np.ndarray:
    """Histogram over ``Q`` of tuples with product 1 and no coordinate 1.

    Enumerates ``x_1..x_{s-1}`` in ``[2, p-1]``; the last coordinate is the
    inverse of their product and must itself differ from 1.
    """
    h = np.zeros(p, dtype=np.int64)
    for P, Q, _ in _tuple_blocks(p, s - 1, 2):
        keep = P != 1
        last = inv[P[keep]]
        h += np.bincount(Q[keep] * (last - 1) % p, minlength=p)
    return h


def k_naive_sum(p, s, m, k, addchar, roots, dlog, inv) -> complex:
    n = p - 1
    re = []
    im = []
    for P, _, S in _tuple_blocks(p, s, 1):
        terms = roots[(k * dlog[P]) % n] * addchar[(S + m * inv[P]) % p]
        re.append(terms.real.tolist())
        im.append(terms.imag.tolist())
    return complex(
        math.fsum(itertools.chain.from_iterable(re)),
        math.fsum(itertools.chain.from_iterable(im)),
    )


def spectral_grid(G: np.ndarray, s: int, roots: np.ndarray, ks: np.ndarray) -> np.ndarray:
    """``out[b, c] = (-1)**(s+1)/n * sum_j roots[-j*b] G[j] G[j+ks[c]]**s``.

    The sum over ``j`` is a forward DFT of each column, so one FFT per
    character replaces the quadratic loop. ``roots`` is accepted for
    signature compatibility only.
    """
    n = len(G)
    j = np.arange(n)
    H = G[:, None] * G[(j[:, None] + np.asarray(ks)[None, :]) % n] ** s
    sign = -1.0 if s % 2 == 0 else 1.0
    return (sign / n) * np.fft.fft(H, axis=0)


def gauss_direct(p: int, powg: np.ndarray, addchar: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """``G[k] = -sum_a roots[k*a] * e(g**a / p)``, quadratic cost."""
    n = p - 1
    a = np.arange(n)
    seq = addchar[powg]
    out = np.empty(n, dtype=complex)
    for k in range(n):
        terms = roots[(k * a) % n] * seq
        out[k] = -complex(math.fsum(terms.real.tolist()), math.fsum(terms.imag.tolist()))
    return out
