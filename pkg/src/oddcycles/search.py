"""Cycle-finding engines over V(t).

Three engines with a common outcome type:

* brute_force        -- enumerate multisets of odd size n in index order,
                        with component-wise partial-sum pruning;
* meet_in_middle     -- hash-join of floor(n/2)-sums against ceil(n/2)-sums,
                        vectorized; exhaustion-capable at sizes where brute
                        force is hopeless;
* modified_five_cycle -- 5-cycle search seeded by a closing pair of vectors
                        that agree in two coordinates and differ in sign in
                        the third, so the remaining three vectors must sum
                        to a doubled, one-coordinate-zeroed vector.

Every cycle an engine returns is re-verified internally before it escapes.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb, isqrt
from typing import Optional, Sequence

import numpy as np

from .arith import STClass, classify
from .vectors import LatticeVector, VectorSet, magnitude_sq, vector_set

DEFAULT_N_MAX = 13
DEFAULT_MEMORY_BUDGET = 30_000_000  # partial sums held at once, per engine call


class SearchMemoryError(MemoryError):
    """Partial-sum lists for meet-in-the-middle would exceed the budget."""


@dataclass(frozen=True)
class OddCycle:
    """An odd-size multiset of squared-magnitude-t vectors summing to zero."""

    t: int
    vectors: tuple[LatticeVector, ...]

    @staticmethod
    def from_vectors(t: int, vecs: Sequence[LatticeVector]) -> "OddCycle":
        return OddCycle(t=t, vectors=tuple(sorted(tuple(v) for v in vecs)))

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class CycleDiagnostics:
    valid: bool
    reason: Optional[str] = None


def verify_cycle(c: OddCycle) -> CycleDiagnostics:
    """Check odd length, uniform squared magnitude t, and zero sum."""
    n = len(c.vectors)
    if n == 0 or n % 2 == 0:
        return CycleDiagnostics(False, f"length {n} is not odd")
    dims = {len(v) for v in c.vectors}
    if len(dims) != 1:
        return CycleDiagnostics(False, "mixed vector dimensions")
    for i, v in enumerate(c.vectors):
        if magnitude_sq(v) != c.t:
            return CycleDiagnostics(
                False, f"vector {i} has squared magnitude {magnitude_sq(v)} != {c.t}"
            )
    m = dims.pop()
    total = tuple(sum(v[j] for v in c.vectors) for j in range(m))
    if any(total):
        return CycleDiagnostics(False, f"sum is {total}, not zero")
    return CycleDiagnostics(True)


@dataclass(frozen=True)
class SearchOutcome:
    t: int
    length_tried: int
    found: Optional[OddCycle]
    exhausted: bool
    nodes_examined: int
    elapsed: float
    budget_exceeded: bool = False

    def __post_init__(self) -> None:
        if self.found is not None:
            diag = verify_cycle(self.found)
            assert diag.valid, f"engine produced an invalid cycle: {diag.reason}"


def _check_length(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"cycle length must be odd and >= 3, got {n}")


# ---------------------------------------------------------------------------
# brute force
# ---------------------------------------------------------------------------


def _brute_range(
    vs: VectorSet,
    n: int,
    i1_lo: int,
    i1_hi: int,
    node_budget: Optional[int],
    prune: bool = True,
) -> tuple[Optional[tuple[LatticeVector, ...]], bool, int]:
    """Search multisets whose first (smallest) index lies in [i1_lo, i1_hi).

    Returns (cycle vectors or None, exhausted, nodes examined).
    """
    vecs = vs.vectors
    nv = len(vecs)
    cmax = isqrt(vs.t)
    nodes = 0
    stack: list[LatticeVector] = []

    def rec(start: int, depth: int, sx: int, sy: int, sz: int) -> Optional[bool]:
        # None = found (stack holds the cycle); False = budget blown
        nonlocal nodes
        remaining = n - depth
        if remaining == 0:
            return None if sx == 0 and sy == 0 and sz == 0 else True
        if prune:
            bound = remaining * cmax
            if abs(sx) > bound or abs(sy) > bound or abs(sz) > bound:
                return True
        lo = i1_lo if depth == 0 else start
        hi = i1_hi if depth == 0 else nv
        for i in range(lo, hi):
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                return False
            v = vecs[i]
            stack.append(v)
            res = rec(i, depth + 1, sx + v[0], sy + v[1], sz + v[2])
            if res is None:
                return None
            stack.pop()
            if res is False:
                return False
        return True

    res = rec(0, 0, 0, 0, 0)
    if res is None:
        return tuple(stack), False, nodes
    return None, res, nodes


def brute_force(
    vs: VectorSet,
    n: int,
    workers: int = 1,
    node_budget: Optional[int] = None,
    prune: bool = True,
) -> SearchOutcome:
    """Exhaustive multiset enumeration in non-decreasing index order."""
    _check_length(n)
    start = time.perf_counter()
    nv = len(vs.vectors)
    if nv == 0:
        return SearchOutcome(vs.t, n, None, True, 0, time.perf_counter() - start)

    if workers <= 1:
        found, exhausted, nodes = _brute_range(vs, n, 0, nv, node_budget, prune)
    else:
        per = max(1, nv // workers)
        ranges = [(lo, min(lo + per, nv)) for lo in range(0, nv, per)]
        share = None if node_budget is None else max(1, node_budget // len(ranges))
        found, exhausted, nodes = None, True, 0
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [
                pool.submit(_brute_range, vs, n, lo, hi, share) for lo, hi in ranges
            ]
            for fut in futs:
                f, ex, nd = fut.result()
                nodes += nd
                exhausted = exhausted and ex
                if f is not None and found is None:
                    found = f
        if found is not None:
            exhausted = False

    elapsed = time.perf_counter() - start
    if found is not None:
        cycle = OddCycle.from_vectors(vs.t, found)
        return SearchOutcome(vs.t, n, cycle, False, nodes, elapsed)
    budget_hit = not exhausted
    return SearchOutcome(vs.t, n, None, exhausted, nodes, elapsed, budget_hit)


# ---------------------------------------------------------------------------
# meet in the middle
# ---------------------------------------------------------------------------


def _pack(sums: np.ndarray, base: int, offset: int) -> np.ndarray:
    return (
        (sums[:, 0] + offset) * base + (sums[:, 1] + offset)
    ) * base + (sums[:, 2] + offset)


def _half_sums(
    arr: np.ndarray, h: int, seed_lo: int, seed_hi: int
) -> np.ndarray:
    """Sums of all h-multisets over arr whose smallest index is in [seed_lo, seed_hi).

    Built level by level; the running minimum-next-index constraint keeps
    every multiset enumerated exactly once.
    """
    nv = len(arr)
    sums = arr[seed_lo:seed_hi].astype(np.int64)
    last = np.arange(seed_lo, seed_hi, dtype=np.int64)
    for _ in range(h - 1):
        counts = nv - last
        total = int(counts.sum())
        rows = np.repeat(np.arange(len(last)), counts)
        starts = np.cumsum(counts) - counts
        within = np.arange(total, dtype=np.int64) - np.repeat(starts, counts)
        ks = last[rows] + within
        sums = sums[rows] + arr[ks]
        last = ks
    return sums


def _find_multiset(
    vecs: Sequence[LatticeVector], h: int, target: tuple[int, int, int], cmax: int
) -> Optional[list[LatticeVector]]:
    """One h-multiset of vecs summing to target, or None."""

    def rec(start: int, left: int, tx: int, ty: int, tz: int) -> Optional[list]:
        if left == 0:
            return [] if tx == 0 and ty == 0 and tz == 0 else None
        bound = left * cmax
        if abs(tx) > bound or abs(ty) > bound or abs(tz) > bound:
            return None
        for i in range(start, len(vecs)):
            v = vecs[i]
            sub = rec(i, left - 1, tx - v[0], ty - v[1], tz - v[2])
            if sub is not None:
                return [v] + sub
        return None

    return rec(0, h, *target)


def _seed_chunks(nv: int, h: int, chunk_target: int) -> list[tuple[int, int]]:
    """Group seed indices so each chunk yields at most ~chunk_target sums."""
    chunks: list[tuple[int, int]] = []
    lo = 0
    acc = 0
    for i in range(nv):
        # multisets of size h with smallest index exactly i
        cnt = comb((nv - i) + h - 2, h - 1)
        if acc and acc + cnt > chunk_target:
            chunks.append((lo, i))
            lo = i
            acc = 0
        acc += cnt
    if lo < nv:
        chunks.append((lo, nv))
    return chunks


def meet_in_middle(
    vs: VectorSet,
    n: int,
    workers: int = 1,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> SearchOutcome:
    """Hash-join of half-length partial sums; same contract as brute_force."""
    _check_length(n)
    start = time.perf_counter()
    nv = len(vs.vectors)
    if nv == 0:
        return SearchOutcome(vs.t, n, None, True, 0, time.perf_counter() - start)

    h1, h2 = n // 2, n - n // 2
    size1 = comb(nv + h1 - 1, h1)
    if size1 > memory_budget:
        raise SearchMemoryError(
            f"{size1} half-sums of size {h1} exceed budget {memory_budget}"
        )
    arr = np.array(vs.vectors, dtype=np.int64)
    cmax = int(np.abs(arr).max())
    offset = h2 * cmax
    base = 2 * offset + 1
    if base**3 > 2**62:
        raise ValueError(f"t={vs.t} too large for packed-key search")

    sums1 = _half_sums(arr, h1, 0, nv)
    keys1 = np.sort(_pack(sums1, base, offset))
    nodes = len(keys1)
    del sums1

    chunk_target = min(4_000_000, max(memory_budget - size1, 500_000))
    chunks = _seed_chunks(nv, h2, chunk_target)

    def probe(lo: int, hi: int):
        sums2 = _half_sums(arr, h2, lo, hi)
        keys2 = _pack(-sums2, base, offset)
        idx = np.searchsorted(keys1, keys2)
        idx[idx == len(keys1)] = 0
        hit = keys1[idx] == keys2
        if hit.any():
            j = int(np.argmax(hit))
            return tuple(int(x) for x in sums2[j]), len(sums2)
        return None, len(sums2)

    match: Optional[tuple[int, int, int]] = None
    if workers <= 1:
        for lo, hi in chunks:
            m, cnt = probe(lo, hi)
            nodes += cnt
            if m is not None:
                match = m
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for m, cnt in pool.map(lambda c: probe(*c), chunks):
                nodes += cnt
                if m is not None and match is None:
                    match = m

    elapsed = time.perf_counter() - start
    if match is None:
        return SearchOutcome(vs.t, n, None, True, nodes, elapsed)

    half2 = _find_multiset(vs.vectors, h2, match, cmax)
    neg = (-match[0], -match[1], -match[2])
    half1 = _find_multiset(vs.vectors, h1, neg, cmax)
    assert half1 is not None and half2 is not None, "join matched but rebuild failed"
    cycle = OddCycle.from_vectors(vs.t, half1 + half2)
    return SearchOutcome(vs.t, n, cycle, False, nodes, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# modified 5-cycle search
# ---------------------------------------------------------------------------


def _closing_pair(
    t: int, s: tuple[int, int, int]
) -> Optional[tuple[LatticeVector, LatticeVector]]:
    """Two magnitude-sqrt(t) vectors u1, u2 with u1 + u2 = -s.

    s must be a doubled vector with one coordinate zeroed; u1 and u2 are
    -s/2 with the zero coordinate filled in as +/-c.
    """
    for axis in range(3):
        if s[axis] != 0:
            continue
        if any(s[j] % 2 for j in range(3)):
            continue
        half = [-s[j] // 2 for j in range(3)]
        rem = t - sum(x * x for x in half)
        if rem < 0:
            continue
        c = isqrt(rem)
        if c * c != rem:
            continue
        u1 = list(half)
        u2 = list(half)
        u1[axis] = c
        u2[axis] = -c
        if magnitude_sq(tuple(u1)) == t:
            return tuple(u1), tuple(u2)
    return None


def modified_five_cycle(
    t: int,
    workers: int = 1,
    chunk_target: int = 300_000,
) -> SearchOutcome:
    """5-cycle search over cycles closed by a sign-flip vector pair.

    Exhaustion here means no 5-cycle *of that special form* exists; it is
    not a proof that no 5-cycle exists at all.
    """
    if t % 4 != 2:
        raise ValueError(f"modified_five_cycle requires t = 2 (mod 4), got {t}")
    start = time.perf_counter()
    vs = vector_set(t)
    nv = len(vs.vectors)
    if nv == 0:
        return SearchOutcome(t, 5, None, True, 0, time.perf_counter() - start)

    arr = np.array(vs.vectors, dtype=np.int64)
    cmax = int(np.abs(arr).max())
    offset = 3 * cmax
    base = 2 * offset + 1
    if base**3 > 2**62:
        raise ValueError(f"t={t} too large for packed-key search")

    # Targets: every 2*v with one coordinate zeroed (the closing pair's sum,
    # negated; the target set is closed under negation).
    targets: set[tuple[int, int, int]] = set()
    for v in vs.vectors:
        for axis in range(3):
            d = [2 * x for x in v]
            d[axis] = 0
            if any(d):
                targets.add(tuple(d))
    tarr = np.array(sorted(targets), dtype=np.int64)

    # All 2-multiset sums, sorted by packed key for the join.
    sums2 = _half_sums(arr, 2, 0, nv)
    keys2 = np.sort(_pack(sums2, base, offset))
    nodes = len(keys2)
    del sums2

    # Probe (target - v_k) against the pair sums, in chunks of targets.
    n_t = len(tarr)
    per = max(1, chunk_target // nv)
    chunk_bounds = [(lo, min(lo + per, n_t)) for lo in range(0, n_t, per)]

    def probe(lo: int, hi: int):
        # need[i, k] = tarr[i] - arr[k]; a hit means v_j + v_l = tarr[i] - v_k
        need = tarr[lo:hi, None, :] - arr[None, :, :]
        flat = need.reshape(-1, 3)
        keys = _pack(flat, base, offset)
        idx = np.searchsorted(keys2, keys)
        idx[idx == len(keys2)] = 0
        hit = keys2[idx] == keys
        if hit.any():
            j = int(np.argmax(hit))
            ti, k = divmod(j, nv)
            return tuple(int(x) for x in tarr[lo + ti]), int(k), len(keys)
        return None, None, len(keys)

    match = None
    k_idx = None
    if workers <= 1:
        for lo, hi in chunk_bounds:
            m, k, cnt = probe(lo, hi)
            nodes += cnt
            if m is not None:
                match, k_idx = m, k
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for m, k, cnt in pool.map(lambda c: probe(*c), chunk_bounds):
                nodes += cnt
                if m is not None and match is None:
                    match, k_idx = m, k

    elapsed = time.perf_counter() - start
    if match is None:
        return SearchOutcome(t, 5, None, True, nodes, elapsed)

    v_k = vs.vectors[k_idx]
    rest = (match[0] - v_k[0], match[1] - v_k[1], match[2] - v_k[2])
    pair = _find_multiset(vs.vectors, 2, rest, cmax)
    closing = _closing_pair(t, match)
    assert pair is not None and closing is not None, "join matched but rebuild failed"
    cycle = OddCycle.from_vectors(t, pair + [v_k, closing[0], closing[1]])
    return SearchOutcome(t, 5, cycle, False, nodes, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# minimum odd cycle ladder
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinOddCycle:
    t: int
    n: Optional[int]
    certificate: Optional[OddCycle]
    unresolved: bool = False
    outcomes: tuple[SearchOutcome, ...] = field(default=())


def min_odd_cycle(
    t: int,
    n_max: int = DEFAULT_N_MAX,
    workers: int = 1,
    use_modified: bool = True,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> MinOddCycle:
    """Minimum odd cycle length for t in class T, with certificate.

    T membership puts the floor at 5, so a 5-cycle found by the modified
    engine settles the value without any exhaustion.  Otherwise odd lengths
    are exhausted in increasing order until a cycle appears or n_max is
    passed (unresolved).
    """
    if classify(t) is not STClass.T:
        raise ValueError(f"min_odd_cycle requires t in class T, got {t}")
    outcomes: list[SearchOutcome] = []
    if use_modified:
        out = modified_five_cycle(t, workers=workers)
        outcomes.append(out)
        if out.found is not None:
            return MinOddCycle(t, 5, out.found, outcomes=tuple(outcomes))
    vs = vector_set(t)
    for n in range(5, n_max + 1, 2):
        out = meet_in_middle(vs, n, workers=workers, memory_budget=memory_budget)
        outcomes.append(out)
        if out.found is not None:
            return MinOddCycle(t, n, out.found, outcomes=tuple(outcomes))
        assert out.exhausted
    return MinOddCycle(t, None, None, unresolved=True, outcomes=tuple(outcomes))
