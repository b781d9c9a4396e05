"""Empirical density of the class-T integers among those = 2 (mod 4).

Classification at scale runs on odd half-values u = t / 2 with a blockwise
sieve: small primes are divided out with exponent-parity tracking for the
primes congruent to 2 mod 3, and whatever survives is either 1 or a single
large prime, whose residue mod 3 decides the class.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import IO, Iterable, Sequence

import numpy as np
import sympy

MAX_CHECKPOINT = 10**8
DEFAULT_BLOCK = 1 << 19  # odd u values per sieve block

CSV_HEADER = "n,t_count,g_exact_num,g_exact_den,g_decimal"


@dataclass(frozen=True)
class DensityRow:
    n: int
    t_count: int
    g: Fraction

    @property
    def g_decimal(self) -> str:
        return f"{float(self.g):.4f}"


def _sieve_block(u_lo: int, u_hi: int, primes: np.ndarray) -> np.ndarray:
    """Boolean T-membership for t = 2u over odd u in [u_lo, u_hi)."""
    us = np.arange(u_lo, u_hi, 2, dtype=np.int64)
    res = us.copy()
    is_t = np.zeros(len(us), dtype=bool)
    for p in primes:
        p = int(p)
        inv2 = (p + 1) // 2
        i0 = ((-u_lo % p) * inv2) % p
        idx = np.arange(i0, len(us), p)
        track = p % 3 == 2
        if track:
            parity = np.zeros(len(us), dtype=bool)
        sub = idx
        while len(sub):
            res[sub] //= p
            if track:
                parity[sub] ^= True
            sub = sub[res[sub] % p == 0]
        # T needs *some* prime = 2 (mod 3) at odd exponent, so odd-exponent
        # parity is accumulated per prime and OR-ed, never XOR-ed across primes
        if track:
            is_t |= parity
    # survivor > 1 is a single prime with exponent 1
    is_t |= (res > 1) & (res % 3 == 2)
    return is_t


def density_table(
    checkpoints: Sequence[int],
    workers: int = 1,
    block: int = DEFAULT_BLOCK,
) -> list[DensityRow]:
    """One row per checkpoint n: |T_n| and g(n) = |T_n| / |(S u T)_n|."""
    if not checkpoints:
        return []
    cps = list(checkpoints)
    if cps != sorted(cps) or len(set(cps)) != len(cps):
        raise ValueError("checkpoints must be strictly ascending")
    if cps[0] < 2:
        raise ValueError("checkpoints must be >= 2")
    if cps[-1] > MAX_CHECKPOINT:
        raise ValueError(f"checkpoint {cps[-1]} exceeds limit {MAX_CHECKPOINT}")

    umax = cps[-1] // 2
    primes = np.array(list(sympy.primerange(3, isqrt(umax) + 1)), dtype=np.int64)
    blocks = [
        (lo, min(lo + 2 * block, umax + 1)) for lo in range(1, umax + 1, 2 * block)
    ]

    if workers <= 1:
        results = (_sieve_block(lo, hi, primes) for lo, hi in blocks)
    else:
        pool = ThreadPoolExecutor(max_workers=workers)
        results = pool.map(lambda b: _sieve_block(*b, primes), blocks)

    rows: list[DensityRow] = []
    cp_idx = 0
    t_total = 0
    for (lo, hi), is_t in zip(blocks, results):
        while cp_idx < len(cps) and cps[cp_idx] // 2 < hi:
            u_limit = cps[cp_idx] // 2
            k = (u_limit - lo) // 2 + 1 if u_limit >= lo else 0
            count = t_total + int(is_t[:k].sum())
            n = cps[cp_idx]
            denom = (n + 2) // 4
            rows.append(DensityRow(n=n, t_count=count, g=Fraction(count, denom)))
            cp_idx += 1
        t_total += int(is_t.sum())
    if workers > 1:
        pool.shutdown()
    return rows


def write_density_csv(rows: Iterable[DensityRow], out: IO[str]) -> None:
    out.write(CSV_HEADER + "\n")
    for row in rows:
        g = row.g
        out.write(
            f"{row.n},{row.t_count},{g.numerator},{g.denominator},{row.g_decimal}\n"
        )
