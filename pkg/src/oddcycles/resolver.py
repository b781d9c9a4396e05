"""Top-level dispatcher for the minimum odd cycle length C(m, r).

Closed-form cases are answered directly; dimension 3 with a class-T
reduced magnitude falls through to the search engines.  Every nonzero
answer carries a machine-checkable certificate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .arith import STClass, classify, count_reps, reduce_mod4
from .search import DEFAULT_N_MAX, OddCycle, min_odd_cycle
from .constructions import k4_triangle, triangle_cycle


class Reason(enum.Enum):
    ODD_R = "OddR"
    DIM1 = "Dim1"
    DIM2 = "Dim2"
    K4_CONSTRUCTION = "K4Construction"
    TRIANGLE = "Triangle"
    SEARCHED = "Searched"
    UNRESOLVED = "Unresolved"


NONEXISTENT_REASONS = {Reason.ODD_R, Reason.DIM1, Reason.DIM2}


@dataclass(frozen=True)
class CmResult:
    m: int
    r: int
    value: Optional[int]  # 0 = no odd cycle exists; None only when unresolved
    reason: Reason
    certificate: Optional[OddCycle]
    reduced_r: int
    nodes_examined: int = 0


def compute_C(
    m: int,
    r: int,
    n_max: int = DEFAULT_N_MAX,
    workers: int = 1,
) -> CmResult:
    """Resolve the minimum odd cycle length for magnitude-sq r in Z^m."""
    if m < 1 or r < 1:
        raise ValueError(f"m and r must be positive, got ({m}, {r})")

    if r % 2 == 1:
        # Coordinate-sum parity bipartitions Z^m for odd r: no odd closed walk.
        return CmResult(m, r, 0, Reason.ODD_R, None, r)
    if m == 1:
        # A magnitude-sqrt(r) step in Z^1 is +/-k with k^2 = r; an odd count
        # of them sums to an odd multiple of k, never zero.
        return CmResult(m, r, 0, Reason.DIM1, None, r)
    if m == 2:
        return CmResult(m, r, 0, Reason.DIM2, None, r)
    if m >= 4:
        cert = k4_triangle(m, r)
        return CmResult(m, r, 3, Reason.K4_CONSTRUCTION, cert, r)

    core, _ = reduce_mod4(r)
    if core % 2 == 1:
        return CmResult(m, r, 0, Reason.ODD_R, None, core)
    if classify(core) is STClass.S:
        return CmResult(m, r, 3, Reason.TRIANGLE, triangle_cycle(core), core)
    res = min_odd_cycle(core, n_max=n_max, workers=workers)
    nodes = sum(out.nodes_examined for out in res.outcomes)
    if res.unresolved:
        return CmResult(m, r, None, Reason.UNRESOLVED, None, core, nodes)
    return CmResult(m, r, res.n, Reason.SEARCHED, res.certificate, core, nodes)


def unique_rep_crosscheck(t: int, res: CmResult) -> Optional[str]:
    """Consistency probe: a 5-cycle at t > 10^6 forces P(t) >= 2.

    A violation cannot come from correct code, so a returned warning means
    an implementation bug somewhere upstream.
    """
    if t <= 10**6 or res.value != 5:
        return None
    reps = count_reps(t)
    if reps >= 2:
        return None
    return (
        f"t={t} resolved to 5 with P(t)={reps}; a 5-cycle above 10^6 "
        f"requires at least two three-square representations"
    )
