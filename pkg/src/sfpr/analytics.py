"""Analytic constants and main terms, with certified truncations.

zeta(s) comes from the alternating series accelerated by van Wijngaarden
averaging, which converges for every s > 0 and passes through s = 2/3
without special handling. Truncated character series carry an explicit
tail certificate from Abel summation against the Polya-Vinogradov bound
|sum_{n<=t} chi2(n)| <= sqrt(p) log p; tests assert the certificate, not
just the value.

The leading constant

    C_p = 2 sum over quadratic non-residues n of n^{-3/2}

admits a closed route C_p = zeta(3/2)(1 - p^{-3/2}) - L(3/2, chi2). The
direct route sums non-residues up to N literally and completes the tail
smoothly: 2 sum_{n>N, nonres} = [R(N) - p^{-3/2} R(N//p)] - R_L(N) with
R the zeta(3/2) tail (computed) and R_L the character tail (certified).
Both routes are evaluated independently and compared.

Writing n = k^2 m with m square-free (p never divides a non-residue, so
p | k is excluded) gives

    sum_{nonres n} n^{-3/2} = zeta(3)(1 - p^{-3}) sum_{sf nonres m} m^{-3/2},

hence the square-free-non-residue constant 2(1-1/p) sum_{sf nonres} m^{-3/2}
collapses exactly to C_p / (zeta(3)(1 + 1/p + 1/p^2)), the same constant
that multiplies sqrt(x) in the square-full count. A literal truncation of
the square-free sum would need ~10^18 terms for nine digits; the collapse
is exact, so the closed route is used and tests bracket it with coarse
partial sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from . import arith
from .characters import PrimeContext, quadratic
from .charsums import sum_char_squarefull
from .counting import (
    count_prime_powerful_pr,
    count_squarefree_pr,
    count_squarefull_pr,
)

__all__ = [
    "zeta",
    "SeriesValue",
    "L_quadratic",
    "CpReport",
    "compute_Cp",
    "cp_lower_ratio",
    "cp_ratio_sweep",
    "SweepResult",
    "shapiro_c",
    "li",
    "MainTermBreakdown",
    "squarefull_pr_main_term",
    "squarefull_charsum_main_term",
    "prime_powerful_main_term",
    "squarefree_pr_main_term",
    "main_term_by_target",
    "corollary_constants",
    "ConstantsReport",
    "constants_report",
]

_ETA_TERMS = 64
_CHUNK = 1 << 23


@lru_cache(maxsize=256)
def zeta(s: float) -> float:
    """Riemann zeta for s > 0, s != 1, to ~1e-13 absolute."""
    if s == 1:
        raise ValueError("pole at s = 1")
    if s <= 0:
        raise ValueError("need s > 0")
    row = []
    total = 0.0
    sign = 1.0
    for k in range(1, _ETA_TERMS + 1):
        total += sign * k**-s
        row.append(total)
        sign = -sign
    while len(row) > 1:
        row = [(row[i] + row[i + 1]) / 2.0 for i in range(len(row) - 1)]
    return row[0] / (1.0 - 2.0 ** (1.0 - s))


@dataclass(frozen=True)
class SeriesValue:
    value: float
    tail_bound: float
    terms: int


def _pv_bound(p: int) -> float:
    return math.sqrt(p) * math.log(p)


def _char_power_sum(ctx: PrimeContext, n_max: int) -> float:
    """sum_{n<=n_max} chi2(n) n^{-3/2}, chunked."""
    signs = ctx.qr_signs().astype(np.float64)
    total = 0.0
    lo = 1
    while lo <= n_max:
        hi = min(n_max, lo + _CHUNK - 1)
        n = np.arange(lo, hi + 1, dtype=np.float64)
        idx = np.arange(lo, hi + 1, dtype=np.int64) % ctx.p
        total += float(np.dot(signs[idx], n**-1.5))
        lo = hi + 1
    return total


def _power_sum(n_max: int) -> float:
    """sum_{n<=n_max} n^{-3/2}, chunked."""
    total = 0.0
    lo = 1
    while lo <= n_max:
        hi = min(n_max, lo + _CHUNK - 1)
        n = np.arange(lo, hi + 1, dtype=np.float64)
        total += float(np.sum(n**-1.5))
        lo = hi + 1
    return total


def L_quadratic(ctx: PrimeContext, tol: float = 1e-9) -> SeriesValue:
    """L(3/2, chi2) truncated where the Abel tail certificate drops
    below tol."""
    m = _pv_bound(ctx.p)
    n0 = max(8, math.ceil((2.0 * m / tol) ** (2.0 / 3.0)))
    value = _char_power_sum(ctx, n0)
    cert = 2.0 * m * (n0 + 1) ** -1.5
    return SeriesValue(value, cert, n0)


@dataclass(frozen=True)
class CpReport:
    p: int
    direct: float
    closed: float
    residual: float
    direct_tail_bound: float
    closed_tail_bound: float
    terms_direct: int
    terms_closed: int

    @property
    def value(self) -> float:
        return self.closed


def _cp_direct(ctx: PrimeContext, tol: float) -> tuple[float, float, int]:
    p = ctx.p
    m = _pv_bound(p)
    n0 = max(8, math.ceil((2.0 * m / tol) ** (2.0 / 3.0)))
    signs = ctx.qr_signs()
    z32 = zeta(1.5)
    head = 0.0
    lo = 1
    while lo <= n0:
        hi = min(n0, lo + _CHUNK - 1)
        n = np.arange(lo, hi + 1, dtype=np.float64)
        nonres = signs[np.arange(lo, hi + 1, dtype=np.int64) % p] < 0
        head += float(np.sum(n[nonres] ** -1.5))
        lo = hi + 1
    tail_smooth = (z32 - _power_sum(n0)) - p**-1.5 * (z32 - _power_sum(n0 // p))
    cert = 2.0 * m * (n0 + 1) ** -1.5
    return 2.0 * head + tail_smooth, cert, n0


def compute_Cp(ctx: PrimeContext, tol: float = 1e-8) -> CpReport:
    """Both routes to C_p; raises if they disagree beyond their combined
    certificates plus tol."""
    direct, direct_cert, n_direct = _cp_direct(ctx, tol / 2.0)
    lval = ctx.cache.get("l_quadratic")
    if lval is None or lval.tail_bound > tol / 8.0:
        lval = L_quadratic(ctx, tol / 8.0)
        ctx.cache["l_quadratic"] = lval
    closed = zeta(1.5) * (1.0 - ctx.p**-1.5) - lval.value
    residual = abs(direct - closed)
    if residual > tol + direct_cert + lval.tail_bound:
        raise ArithmeticError(f"C_p routes disagree by {residual} at p={ctx.p}")
    return CpReport(
        ctx.p, direct, closed, residual, direct_cert, lval.tail_bound, n_direct, lval.terms
    )


def _cp_closed_cached(ctx: PrimeContext, tol: float = 1e-9) -> float:
    cached = ctx.cache.get("cp_closed")
    if cached is not None:
        return cached
    lval = L_quadratic(ctx, tol)
    ctx.cache["l_quadratic"] = lval
    value = zeta(1.5) * (1.0 - ctx.p**-1.5) - lval.value
    ctx.cache["cp_closed"] = value
    return value


CP_LOWER_EXPONENT = 1.0 / (8.0 * math.sqrt(math.e))


def cp_lower_ratio(ctx: PrimeContext, cp: float | None = None) -> float:
    """C_p / p^{-1/(8 sqrt e)}, the lower-bound margin with implied
    constant 1."""
    if cp is None:
        cp = _cp_closed_cached(ctx)
    return cp * ctx.p**CP_LOWER_EXPONENT


@dataclass(frozen=True)
class SweepResult:
    limit: int
    primes_checked: int
    min_ratio: float
    argmin_p: int
    below_one: tuple[tuple[int, float], ...]  # every (p, ratio) with ratio <= 1


def cp_ratio_sweep(
    limit: int,
    coarse_tol: float = 3e-4,
    refine_tol: float = 1e-7,
    refine_count: int = 200,
    progress=None,
) -> SweepResult:
    """cp_lower_ratio over all odd primes <= limit.

    Two phases: a coarse pass with a shared precomputed weight vector, then
    a refinement of every candidate whose coarse ratio could plausibly be
    the minimum or sit at 1. The coarse error on the ratio is bounded by
    coarse_tol * limit^0.076; the refinement window is checked against that
    margin, so the reported minimum and the below-one list are exact up to
    refine_tol.
    """
    from .characters import build_context

    primes = [int(q) for q in arith.sieve_primes(limit)[1:]]
    m_top = _pv_bound(limit)
    n_top = max(8, math.ceil((2.0 * m_top / coarse_tol) ** (2.0 / 3.0)))
    weights = np.arange(0, n_top + 1, dtype=np.float64)
    weights[0] = 1.0
    weights **= -1.5
    z32 = zeta(1.5)
    coarse: list[tuple[float, int]] = []
    for i, p in enumerate(primes):
        m = _pv_bound(p)
        n0 = max(8, math.ceil((2.0 * m / coarse_tol) ** (2.0 / 3.0)))
        signs = np.zeros(p, dtype=np.float64)
        k = np.arange(1, p, dtype=np.int64)
        signs[(k * k) % p] = 2.0
        signs -= 1.0
        signs[0] = 0.0
        idx = np.arange(1, n0 + 1, dtype=np.int64) % p
        lval = float(np.dot(signs[idx], weights[1 : n0 + 1]))
        cp = z32 * (1.0 - p**-1.5) - lval
        coarse.append((cp * p**CP_LOWER_EXPONENT, p))
        if progress and (i + 1) % 1024 == 0:
            progress(i + 1, len(primes))
    coarse.sort()
    margin = 2.0 * coarse_tol * limit**CP_LOWER_EXPONENT
    cutoff = min(refine_count, len(coarse)) - 1
    threshold = max(coarse[cutoff][0], 1.0 + margin)
    refined: list[tuple[float, int]] = []
    unrefined_floor = math.inf
    for ratio, p in coarse:
        if ratio <= threshold:
            ctx = build_context(p)
            refined.append((cp_lower_ratio(ctx, _cp_closed_cached(ctx, refine_tol)), p))
        else:
            unrefined_floor = min(unrefined_floor, ratio - margin)
    refined.sort()
    if refined[0][0] >= unrefined_floor:
        raise ArithmeticError("refinement window too small for requested sweep")
    below = tuple((p, r) for r, p in sorted(refined, key=lambda t: t[1]) if r <= 1.0)
    min_ratio, argmin_p = refined[0]
    return SweepResult(limit, len(primes), min_ratio, argmin_p, below)


def shapiro_c(ctx: PrimeContext) -> float:
    """2(1-1/p) sum over square-free non-residues of n^{-3/2}, via the
    exact collapse to C_p / (zeta(3)(1+1/p+1/p^2))."""
    p = ctx.p
    return _cp_closed_cached(ctx) / (zeta(3.0) * (1.0 + 1.0 / p + 1.0 / p**2))


def li(x: float) -> float:
    """Logarithmic integral from 2. Absolute accuracy 1e-9 plus a
    machine-precision relative floor (the value reaches 1e6 by x = 1e8)."""
    if x < 2:
        raise ValueError("need x >= 2")
    if x == 2:
        return 0.0
    total = 0.0
    err_total = 0.0
    lo = 2.0
    while lo < x:
        hi = min(x, lo * 10.0)
        val, err = integrate.quad(
            lambda t: 1.0 / math.log(t), lo, hi, epsabs=1e-12, epsrel=1e-13, limit=200
        )
        total += val
        err_total += err
        lo = hi
    if err_total > 1e-9 + 1e-12 * abs(total):
        raise ArithmeticError(f"quadrature error estimate {err_total} too large at x={x}")
    return total


# -- main terms --------------------------------------------------------------


@dataclass(frozen=True)
class MainTermBreakdown:
    p: int
    x: int
    target: str
    leading_term: float
    secondary_term: float
    prefactor: float
    predicted: float
    exact: int
    relative_error: float
    residual: float
    residual_scaled: float


def _breakdown(ctx, x, target, leading, secondary, prefactor, exact, envelope):
    predicted = prefactor * (leading + secondary)
    residual = exact - predicted
    rel = residual / predicted if predicted != 0 else math.nan
    return MainTermBreakdown(
        p=ctx.p,
        x=x,
        target=target,
        leading_term=leading,
        secondary_term=secondary,
        prefactor=prefactor,
        predicted=predicted,
        exact=exact,
        relative_error=rel,
        residual=residual,
        residual_scaled=residual / envelope,
    )


def _pr_density(ctx: PrimeContext) -> float:
    return arith.euler_phi(ctx.p - 1) / (ctx.p - 1)


def squarefull_pr_main_term(ctx: PrimeContext, x: int) -> MainTermBreakdown:
    """Predicted vs exact count of square-full primitive roots <= x.

    Error envelope (implied constant 1):
    x^{1/3} log x p^{1/9} (log p)^{1/6} 2^{omega(p-1)}.
    """
    if x < 1:
        raise ValueError("need x >= 1")
    p = ctx.p
    cp = _cp_closed_cached(ctx)
    leading = cp * math.sqrt(x) / (zeta(3.0) * (1.0 + 1.0 / p + 1.0 / p**2))
    exact = count_squarefull_pr(ctx, x, method="brute").brute_count
    env = (
        x ** (1.0 / 3.0)
        * math.log(x)
        * p ** (1.0 / 9.0)
        * math.log(p) ** (1.0 / 6.0)
        * 2.0 ** len(ctx.p1_primes)
    )
    return _breakdown(ctx, x, "thm1", leading, 0.0, _pr_density(ctx), exact, env)


def squarefull_charsum_main_term(
    ctx: PrimeContext, x: int, case: str = "principal"
) -> MainTermBreakdown:
    """Predicted vs exact square-full character sum, principal or
    quadratic character.

    Envelopes: principal x^{1/6+0.01}; quadratic
    x^{1/4} (log x)^{1/2} p^{3/32}.
    """
    if x < 1:
        raise ValueError("need x >= 1")
    p = ctx.p
    denom = zeta(3.0) * (1.0 + 1.0 / p + 1.0 / p**2)
    if case == "principal":
        from .characters import principal

        leading = zeta(1.5) * (1.0 - p**-1.5) / denom * math.sqrt(x)
        secondary = (
            zeta(2.0 / 3.0) / zeta(2.0) * (1.0 - p ** (-2.0 / 3.0)) / (1.0 + 1.0 / p) * x ** (1.0 / 3.0)
        )
        chi = principal(ctx)
        env = x ** (1.0 / 6.0 + 0.01)
    elif case == "quadratic":
        lval = ctx.cache.get("l_quadratic")
        if lval is None:
            lval = L_quadratic(ctx, 1e-9)
            ctx.cache["l_quadratic"] = lval
        leading = lval.value / denom * math.sqrt(x)
        secondary = 0.0
        chi = quadratic(ctx)
        env = x**0.25 * math.sqrt(math.log(x)) * p ** (3.0 / 32.0)
    else:
        raise ValueError(f"unknown case {case!r}")
    raw = sum_char_squarefull(ctx, chi, x, route="direct").value
    exact = round(raw.real)
    if abs(raw.real - exact) > 1e-6 or abs(raw.imag) > 1e-9:
        raise ArithmeticError(f"non-integral character sum {raw}")
    return _breakdown(ctx, x, "lemma22", leading, secondary, 1.0, exact, env)


def prime_powerful_main_term(ctx: PrimeContext, x: int) -> MainTermBreakdown:
    """Predicted vs exact count of primitive roots of the shape q^2 r^3.

    Leading term 2 sum over prime non-residues r <= x^{1/3} of
    li(sqrt(x)/r^{3/2}); arguments below 2 contribute 0. Envelope
    2^{omega(p-1)} x^{1/3} log^2(px).
    """
    if x < 8:
        raise ValueError("need x >= 8")
    signs = ctx.qr_signs()
    leading = 0.0
    rx = math.sqrt(x)
    for r in arith.sieve_primes(arith.icbrt(x)):
        r = int(r)
        if signs[r % ctx.p] >= 0:
            continue
        arg = rx / r**1.5
        if arg >= 2.0:
            leading += li(arg)
    leading *= 2.0
    exact = count_prime_powerful_pr(ctx, x, method="brute").brute_count
    env = 2.0 ** len(ctx.p1_primes) * x ** (1.0 / 3.0) * math.log(ctx.p * x) ** 2
    return _breakdown(ctx, x, "thm31", leading, 0.0, _pr_density(ctx), exact, env)


def squarefree_pr_main_term(ctx: PrimeContext, x: int) -> MainTermBreakdown:
    """Predicted vs exact count of square-free primitive roots <= x.

    Predicted = p phi(p-1)/(p^2-1) * (6/pi^2) * x; envelope sqrt(x).
    """
    if x < 1:
        raise ValueError("need x >= 1")
    p = ctx.p
    leading = p * arith.euler_phi(p - 1) / (p**2 - 1) * (6.0 / math.pi**2) * x
    exact = count_squarefree_pr(ctx, x, method="brute").brute_count
    return _breakdown(ctx, x, "prop42", leading, 0.0, 1.0, exact, math.sqrt(x))


_MAIN_TERMS = {
    "thm1": squarefull_pr_main_term,
    "thm31": prime_powerful_main_term,
    "prop42": squarefree_pr_main_term,
}


def main_term_by_target(
    ctx: PrimeContext, x: int, target: str, case: str = "principal"
) -> MainTermBreakdown:
    if target == "lemma22":
        return squarefull_charsum_main_term(ctx, x, case)
    try:
        fn = _MAIN_TERMS[target]
    except KeyError:
        raise ValueError(f"unknown target {target!r}") from None
    return fn(ctx, x)


# -- constants reports -------------------------------------------------------


def corollary_constants() -> dict[str, float]:
    """The two exponents that govern the least square-full primitive
    root bound."""
    return {
        "least_squarefull_exponent": 2.0 / 3.0 + 3.0 / (4.0 * math.sqrt(math.e)),
        "cp_lower_exponent": CP_LOWER_EXPONENT,
    }


@dataclass(frozen=True)
class ConstantsReport:
    p: int
    C_p: float
    shapiro_c: float
    L_three_halves_quadratic: float
    zeta3: float
    zeta_two_thirds: float
    cp_lower_ratio: float
    cp_identity_residual: float
    cp_direct_tail_bound: float
    l_tail_bound: float


def constants_report(ctx: PrimeContext, tol: float = 1e-8) -> ConstantsReport:
    rep = compute_Cp(ctx, tol)
    lval = ctx.cache["l_quadratic"]
    ctx.cache["cp_closed"] = rep.closed
    return ConstantsReport(
        p=ctx.p,
        C_p=rep.closed,
        shapiro_c=shapiro_c(ctx),
        L_three_halves_quadratic=lval.value,
        zeta3=zeta(3.0),
        zeta_two_thirds=zeta(2.0 / 3.0),
        cp_lower_ratio=cp_lower_ratio(ctx, rep.closed),
        cp_identity_residual=rep.residual,
        cp_direct_tail_bound=rep.direct_tail_bound,
        l_tail_bound=rep.closed_tail_bound,
    )
