"""Counting and locating primitive roots inside restricted sets.

The exact decomposition over character order classes,

    N(x) = (phi(p-1)/(p-1)) * sum_{d | p-1} (mu(d)/phi(d))
                             * sum_{chi of order d} S_chi(x),

with S_chi the character sum over the target set, turns each count into a
finite character-sum evaluation. The d = 1 term is the density main term, the
d = 2 term enters with a minus sign, and only square-free d survive. Both the
charsum route and a brute route are kept so every count is an executable
identity.

Scans over prime ranges shard into contiguous blocks of 4096 primes; workers
pull blocks, the parent flushes results in block order, so output is
deterministic for any worker count.
"""

from __future__ import annotations

import math
import multiprocessing
import time
from dataclasses import dataclass

import numpy as np

from . import arith, squarefull
from .characters import Character, PrimeContext, build_context, characters_of_order
from .charsums import (
    SumResult,
    sum_char_prime_powerful,
    sum_char_squarefree,
    sum_char_squarefull,
)

__all__ = [
    "CountReport",
    "ScanRecord",
    "HypothesisReport",
    "pr_indicator_charsum",
    "count_squarefull_pr",
    "count_prime_powerful_pr",
    "count_squarefree_pr",
    "least_squarefull_pr",
    "least_squarefree_pr",
    "scan_range",
    "hypothesis_scan",
    "BLOCK_SIZE",
]

BLOCK_SIZE = 4096
SEARCH_CEILING = 1 << 32


def pr_decomposition(ctx: PrimeContext) -> list[tuple[float, Character]]:
    """Flattened (mu(d)/phi(d), chi) pairs over square-free d | p-1, in a
    fixed deterministic order."""
    cached = ctx.cache.get("pr_decomposition")
    if cached is not None:
        return cached
    pairs = []
    for d in arith.divisors(ctx.p - 1):
        mu = arith.mobius(d)
        if mu == 0:
            continue
        coef = mu / arith.euler_phi(d)
        for chi in characters_of_order(ctx, d):
            pairs.append((coef, chi))
    ctx.cache["pr_decomposition"] = pairs
    return pairs


def pr_indicator_charsum(ctx: PrimeContext, m: int) -> float:
    """Character-sum indicator: 1.0 when m is a primitive root, else 0.0,
    up to float error."""
    if m % ctx.p == 0:
        return 0.0
    total = 0j
    for coef, chi in pr_decomposition(ctx):
        total += coef * chi(m)
    value = total * arith.euler_phi(ctx.p - 1) / (ctx.p - 1)
    return value.real


@dataclass(frozen=True)
class CountReport:
    p: int
    x: int
    target: str
    method: str
    brute_count: int | None
    charsum_value: float | None
    residual: float | None
    characters_used: int
    elapsed_brute: float | None
    elapsed_charsum: float | None


def _charsum_count(ctx: PrimeContext, x: int, family_sum) -> tuple[float, int]:
    pairs = pr_decomposition(ctx)
    total = 0j
    for coef, chi in pairs:
        total += coef * family_sum(ctx, chi, x).value
    total *= arith.euler_phi(ctx.p - 1) / (ctx.p - 1)
    if abs(total.imag) > 1e-6 * max(1, len(pairs)):
        raise ArithmeticError(f"imaginary drift {total.imag} in charsum count")
    return total.real, len(pairs)


def _brute_squarefull(ctx: PrimeContext, x: int) -> int:
    p = ctx.p
    if ctx.has_index_table:
        table = ctx.is_pr_table()
        bmax = arith.icbrt(x)
        sf = squarefull.squarefree_table(bmax)
        total = 0
        for b in range(1, bmax + 1):
            if not sf[b]:
                continue
            cube = b * b * b
            amax = math.isqrt(x // cube)
            a = np.arange(1, amax + 1, dtype=np.int64)
            res = (a * a % p) * (cube % p) % p
            total += int(np.count_nonzero(table[res]))
        return total
    return sum(1 for m in squarefull.enumerate_squarefull(x) if arith.is_primitive_root(m, ctx))


def _brute_prime_powerful(ctx: PrimeContext, x: int) -> int:
    vals = squarefull.enumerate_prime_powerful(x)
    if ctx.has_index_table:
        table = ctx.is_pr_table()
        if not vals:
            return 0
        res = np.array(vals, dtype=np.int64) % ctx.p
        return int(np.count_nonzero(table[res]))
    return sum(1 for m in vals if arith.is_primitive_root(m, ctx))


def _brute_squarefree(ctx: PrimeContext, x: int) -> int:
    members = np.flatnonzero(squarefull.squarefree_table(x))
    if ctx.has_index_table:
        table = ctx.is_pr_table()
        return int(np.count_nonzero(table[members % ctx.p]))
    return sum(1 for m in members if arith.is_primitive_root(int(m), ctx))


_FAMILIES = {
    "squarefull": (_brute_squarefull, sum_char_squarefull),
    "S": (_brute_prime_powerful, sum_char_prime_powerful),
    "squarefree": (_brute_squarefree, sum_char_squarefree),
}


def _count(ctx: PrimeContext, x: int, target: str, method: str) -> CountReport:
    if x < 1:
        raise ValueError("need x >= 1")
    if method not in ("brute", "charsum", "both"):
        raise ValueError(f"unknown method {method!r}")
    try:
        brute_fn, sum_fn = _FAMILIES[target]
    except KeyError:
        raise ValueError(f"unknown target {target!r}") from None
    brute = charsum = residual = None
    tb = tc = None
    chars = 0
    if method in ("brute", "both"):
        t0 = time.perf_counter()
        brute = brute_fn(ctx, x)
        tb = time.perf_counter() - t0
    if method in ("charsum", "both"):
        t0 = time.perf_counter()
        charsum, chars = _charsum_count(ctx, x, sum_fn)
        tc = time.perf_counter() - t0
    if brute is not None and charsum is not None:
        residual = abs(charsum - brute)
    return CountReport(ctx.p, x, target, method, brute, charsum, residual, chars, tb, tc)


def count_squarefull_pr(ctx: PrimeContext, x: int, method: str = "both") -> CountReport:
    """Square-full primitive roots <= x."""
    return _count(ctx, x, "squarefull", method)


def count_prime_powerful_pr(ctx: PrimeContext, x: int, method: str = "both") -> CountReport:
    """Primitive roots <= x of the shape q^2 r^3, q and r prime."""
    return _count(ctx, x, "S", method)


def count_squarefree_pr(ctx: PrimeContext, x: int, method: str = "both") -> CountReport:
    """Square-free primitive roots <= x."""
    return _count(ctx, x, "squarefree", method)


def count_by_target(ctx: PrimeContext, x: int, target: str, method: str = "both") -> CountReport:
    return _count(ctx, x, target, method)


# -- least elements ---------------------------------------------------------


def least_squarefull_pr(ctx: PrimeContext, ceiling: int = SEARCH_CEILING) -> int:
    """g_sf(p): first square-full primitive root along the ascending stream.
    1 is skipped (its order is 1)."""
    stream = squarefull.squarefull_stream()
    next(stream)
    for m in stream:
        if m > ceiling:
            raise ArithmeticError(f"no square-full primitive root below {ceiling}")
        if arith.is_primitive_root(m, ctx):
            return m
    raise AssertionError("unreachable")


def least_squarefree_pr(ctx: PrimeContext) -> int:
    m = 1
    while True:
        m += 1
        if arith.mobius(m) == 0:
            continue
        if arith.is_primitive_root(m, ctx):
            return m


# -- deterministic sharded scans --------------------------------------------


@dataclass(frozen=True)
class ScanRecord:
    p: int
    g_squarefull: int
    g_squarefree: int
    g_least_pr: int
    omega_p_minus_1: int

    @property
    def ratio(self) -> float:
        return self.g_squarefull / self.p

    def csv_row(self) -> str:
        return (
            f"{self.p},{self.g_squarefull},{self.g_squarefree},"
            f"{self.g_least_pr},{self.ratio:.6f},{self.omega_p_minus_1}"
        )


CSV_HEADER = "p,g_squarefull,g_squarefree,g_least_pr,ratio,omega"


def scan_record(p: int) -> ScanRecord:
    ctx = build_context(p)
    return ScanRecord(
        p=p,
        g_squarefull=least_squarefull_pr(ctx),
        g_squarefree=least_squarefree_pr(ctx),
        g_least_pr=ctx.generator,
        omega_p_minus_1=len(ctx.p1_primes),
    )


def _prime_blocks(lo: int, hi: int, block_size: int) -> list[list[int]]:
    ps = arith.sieve_primes(hi) if hi >= 2 else np.array([], dtype=np.int64)
    ps = [int(p) for p in ps[ps >= lo]]
    return [ps[i : i + block_size] for i in range(0, len(ps), block_size)]


def _scan_block(block: list[int]) -> list[ScanRecord]:
    return [scan_record(p) for p in block]


def _hypothesis_block(block: list[int]) -> list[tuple[int, int]]:
    out = []
    for p in block:
        ctx = build_context(p)
        g = least_squarefull_pr(ctx)
        if g >= p:
            out.append((p, g))
    return out


def _run_blocks(worker, blocks, jobs: int, progress=None):
    """Ordered map over blocks; pool only when it pays."""
    results = []
    if jobs <= 1 or len(blocks) <= 1:
        for i, b in enumerate(blocks):
            results.append(worker(b))
            if progress:
                progress(i + 1, len(blocks))
        return results
    with multiprocessing.get_context("fork").Pool(jobs) as pool:
        for i, res in enumerate(pool.imap(worker, blocks)):
            results.append(res)
            if progress:
                progress(i + 1, len(blocks))
    return results


def scan_range(
    lo: int, hi: int, jobs: int = 1, block_size: int = BLOCK_SIZE, progress=None
) -> list[ScanRecord]:
    """ScanRecord for every prime in [lo, hi], ascending, worker-count
    independent."""
    if lo < 3 or hi < lo:
        raise ValueError("need 3 <= lo <= hi")
    blocks = _prime_blocks(lo, hi, block_size)
    out: list[ScanRecord] = []
    for chunk in _run_blocks(_scan_block, blocks, jobs, progress):
        out.extend(chunk)
    return out


@dataclass(frozen=True)
class HypothesisReport:
    limit: int
    exceptional: tuple[tuple[int, int], ...]  # (p, g_squarefull) with g >= p
    largest: int | None


def hypothesis_scan(
    limit: int, jobs: int = 1, block_size: int = BLOCK_SIZE, progress=None
) -> HypothesisReport:
    """All primes p <= limit with g_sf(p) >= p."""
    if limit < 3:
        raise ValueError("need limit >= 3")
    blocks = _prime_blocks(3, limit, block_size)
    exceptional: list[tuple[int, int]] = []
    for chunk in _run_blocks(_hypothesis_block, blocks, jobs, progress):
        exceptional.extend(chunk)
    largest = exceptional[-1][0] if exceptional else None
    return HypothesisReport(limit, tuple(exceptional), largest)
