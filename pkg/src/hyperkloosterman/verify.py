"""Invariant suite and stated-versus-oracle adjudication.

:func:`run_suite` evaluates every cross-check at bounded ``(p, s)`` and
collects printed closed forms that disagree with enumeration into an
:class:`ErrataReport`. Errata are findings about the printed statements;
they do not fail the suite, because the corrected forms are the ones used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import build_context, char_orthogonality_check, primes_in_range
from .counts import (
    CLOSED,
    ENUM_LIMIT,
    Family,
    count_brute,
    count_C1,
    count_closed,
    enumeration_size,
    verify_recurrence,
)
from .expsums import gauss_table, jacobi_sum
from .hyperk import KParams, deligne_check, k_grid, k_naive
from .moments import (
    closed_form_reference,
    fourth_moment_direct,
    fourth_moment_exact,
    second_moment_closed,
    second_moment_stated,
)

SPECTRAL_TOL = 1e-8
JACOBI_TOL = 1e-9
FOURTH_REL_TOL = 1e-9
# total naive tuples per (p, s) grid comparison
NAIVE_BUDGET = 5 * 10**6


@dataclass
class Witness:
    p: int
    s: int
    stated: str
    oracle: str


@dataclass
class Finding:
    formula: str
    statement: str
    witnesses: list[Witness] = field(default_factory=list)


@dataclass
class ErrataReport:
    findings: list[Finding] = field(default_factory=list)

    def add(self, formula: str, statement: str, p: int, s: int, stated, oracle) -> None:
        for f in self.findings:
            if f.formula == formula:
                break
        else:
            f = Finding(formula, statement)
            self.findings.append(f)
        f.witnesses.append(Witness(p, s, str(stated), str(oracle)))

    def __len__(self) -> int:
        return len(self.findings)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    checks: list[Check]
    errata: ErrataReport

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _u_values(family: Family, p: int):
    if family is Family.A_u:
        return range(2, p)
    if family is Family.N:
        return range(p)
    return [None]


def run_suite(p_max: int = 13, s_max: int = 4) -> SuiteResult:
    primes = primes_in_range(5, p_max)
    checks: list[Check] = []
    errata = ErrataReport()

    def check(name: str, ok: bool, detail: str = "") -> None:
        checks.append(Check(name, bool(ok), detail))

    for p in primes:
        ctx = build_context(p)
        check(f"orthogonality p={p}", char_orthogonality_check(ctx))

        # counting families
        bad = []
        for s in range(1, s_max + 1):
            for fam in CLOSED:
                if enumeration_size(fam, p, s) > ENUM_LIMIT:
                    continue
                for u in _u_values(fam, p):
                    c, o = count_closed(fam, p, s, u), count_brute(fam, p, s, u)
                    if c != o:
                        bad.append(f"{fam.value}(p={p},s={s},u={u}): {c} != {o}")
            if enumeration_size(Family.C1, p, s) <= ENUM_LIMIT:
                c, o = count_C1(p, s), count_brute(Family.C1, p, s)
                if c != o:
                    bad.append(f"C1(p={p},s={s}): {c} != {o}")
            stated = count_closed(Family.B, p, s, corrected=False)
            oracle = count_brute(Family.B, p, s)
            if stated != oracle:
                errata.add(
                    "count_B",
                    "#{P(X)=1, Q(X)=0} = ((p-1)^s-(p-2)^s-1)/(p-1) - (p-2)((-1)^s+1)/(p-1)",
                    p, s, stated, oracle,
                )
        check(f"count closed forms match oracles p={p}", not bad, "; ".join(bad[:5]))
        rec = verify_recurrence(p, max(s_max, 2))
        check(f"T recurrence and f(p,s) integrality p={p}", rec.passed, str(rec.violations[:3]))

        # Gauss and Jacobi layer
        table = gauss_table(ctx, "direct")
        fast = gauss_table(ctx, "fast")
        G = np.asarray(table.values)
        n = p - 1
        ks = np.arange(1, n)
        ok = np.allclose(np.abs(G[ks]) ** 2, p, rtol=0, atol=1e-9 * p)
        pair = G[ks] * G[(-ks) % n]
        ok &= np.allclose(pair, p * np.where(ks % 2, -1.0, 1.0), rtol=0, atol=1e-9 * p)
        ok &= np.max(np.abs(G - np.asarray(fast.values))) < 1e-8
        check(f"Gauss sums |G|^2=p, G(chi)G(conj chi)=p chi(-1) p={p}", ok)
        worst = 0.0
        for a in ctx.characters():
            for b in ctx.characters():
                d = abs(jacobi_sum(ctx, a, b, "direct") - jacobi_sum(ctx, a, b, "gauss", table))
                worst = max(worst, d)
        check(f"Jacobi direct vs Gauss-sum route p={p}", worst <= JACOBI_TOL, f"max diff {worst:.3g}")

        # K evaluation, bounds and moments
        for s in range(1, s_max + 1):
            grid = k_grid(ctx, table, s)
            dl = deligne_check(grid)
            check(f"Deligne bound p={p} s={s}", dl.passed, f"max ratio {dl.max_ratio:.6f}")
            if n ** s * n * n <= NAIVE_BUDGET:
                worst = 0.0
                for m in range(1, p):
                    for k in range(n):
                        a = k_naive(ctx, KParams(m, s, ctx.char(k)))
                        b = grid[m, k]
                        worst = max(worst, abs(a - b) / max(abs(a), 1.0))
                check(f"spectral = naive p={p} s={s}", worst <= SPECTRAL_TOL, f"max rel {worst:.3g}")
            mismatched = []
            for k in range(n):
                direct = math.fsum((np.abs(grid.values[:, k]) ** 2).tolist())
                oracle = round(direct)
                principal = k == 0
                if abs(direct - oracle) >= 1e-3 or oracle != second_moment_closed(p, s, principal):
                    mismatched.append(k)
                stated = second_moment_stated(p, s, principal)
                # one representative non-principal character suffices for the errata
                if stated != oracle and (principal or k == 1):
                    if principal:
                        name, what = "second_moment_principal", "p^{s+1}-p^s-...-p"
                    else:
                        name, what = "second_moment_nonprincipal", "p^{s+1}-2p^s-p^{s-1}-...-p"
                    errata.add(name, f"sum_m |K(m,s,chi)|^2 = {what}", p, s, stated, oracle)
            check(f"second moment closed forms p={p} s={s}", not mismatched, f"characters {mismatched}")
            if enumeration_size(Family.M, p, s) <= ENUM_LIMIT:
                exact = fourth_moment_exact(p, s)
                direct = fourth_moment_direct(ctx, table, s)
                rel = abs(direct - exact) / exact
                check(f"fourth moment exact vs grid p={p} s={s}", rel <= FOURTH_REL_TOL, f"rel {rel:.3g}")
                if s in (1, 2):
                    ref = closed_form_reference(p, s)
                    check(f"fourth moment = known polynomial p={p} s={s}", exact == ref, f"{exact} vs {ref}")
    return SuiteResult(checks, errata)
