"""Closed-form cycle builders.

Equilateral-triangle 3-cycles for class S, the K4 point set that settles
every even r in dimension >= 4, two 5-cycle template families driven by
binary quadratic forms, and the distance-doubling map on Z^2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import ceil, isqrt
from typing import Callable, Optional

from .arith import (
    STClass,
    Triple,
    classify,
    enumerate_triples,
    four_square_decomposition,
)
from .search import OddCycle, verify_cycle
from .vectors import LatticeVector, magnitude_sq


class ConstructionError(RuntimeError):
    """A closed-form builder failed where theory says it cannot."""


@dataclass(frozen=True)
class QuadraticForm:
    """F(x, y) = a x^2 + b x y + c y^2."""

    a: int
    b: int
    c: int

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    @property
    def is_positive_definite(self) -> bool:
        return self.a > 0 and 4 * self.a * self.c - self.b * self.b > 0


class ParamId(enum.Enum):
    TRIANGLE = "triangle"
    PARAM1 = "param1"
    PARAM2 = "param2"


FORMS: dict[ParamId, QuadraticForm] = {
    ParamId.TRIANGLE: QuadraticForm(2, 2, 2),
    ParamId.PARAM1: QuadraticForm(6, 2, 6),
    ParamId.PARAM2: QuadraticForm(98, 154, 110),
}

# Vector templates as functions of (x, y); repeated rows are genuine repeats.
_TEMPLATES: dict[ParamId, tuple[Callable[[int, int], LatticeVector], ...]] = {
    ParamId.TRIANGLE: (
        lambda x, y: (-x, -y, x + y),
        lambda x, y: (-y, x + y, -x),
        lambda x, y: (x + y, -x, -y),
    ),
    ParamId.PARAM1: (
        lambda x, y: (-2 * x - y, -x - y, -x + 2 * y),
        lambda x, y: (-2 * x - y, -x - y, -x + 2 * y),
        lambda x, y: (x + y, 2 * x + y, x - 2 * y),
        lambda x, y: (x + 2 * y, -x - y, 2 * x - y),
        lambda x, y: (2 * x - y, x + 2 * y, -x - y),
    ),
    ParamId.PARAM2: (
        lambda x, y: (7 * x + 10 * y, 7 * x + y, 3 * y),
        lambda x, y: (7 * x + 10 * y, 7 * x + y, 3 * y),
        lambda x, y: (-7 * x - 6 * y, 7 * y, 7 * x + 5 * y),
        lambda x, y: (-3 * x - 9 * y, -5 * x - 2 * y, -8 * x - 5 * y),
        lambda x, y: (-4 * x - 5 * y, -9 * x - 7 * y, x - 6 * y),
    ),
}


def _check_templates() -> None:
    """Exactness guard over the transcribed templates at sample points."""
    samples = [(1, 0), (0, 1), (1, 1), (-1, 2), (2, -1), (3, 2), (-2, -3), (5, 1), (1, 5)]
    for pid, rows in _TEMPLATES.items():
        form = FORMS[pid]
        for x, y in samples:
            vecs = [row(x, y) for row in rows]
            want = form(x, y)
            assert all(magnitude_sq(v) == want for v in vecs), (pid, x, y)
            assert all(sum(col) == 0 for col in zip(*vecs)), (pid, x, y)


_check_templates()


def form_represents(f: QuadraticForm, t: int) -> Optional[tuple[int, int]]:
    """Least (x, |y|) with x >= 0 and F(x, y) = t (positive y first), else None.

    The smaller eigenvalue of the form matrix bounds |x|, |y| by
    sqrt(t / lambda_min), so the scan region is complete.
    """
    if not f.is_positive_definite:
        raise ValueError(f"form {f} is not positive definite")
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    # lambda_min = (a + c - sqrt((a-c)^2 + b^2)) / 2, computed conservatively
    disc = (f.a - f.c) ** 2 + f.b * f.b
    lam_twice = f.a + f.c - isqrt(disc) - 1  # lower bound on 2*lambda_min
    if lam_twice <= 0:
        lam_twice = 1
    bound = ceil(isqrt(2 * t // lam_twice)) + 2
    for x in range(0, bound + 1):
        for ay in range(0, bound + 1):
            for y in ((ay, -ay) if ay else (0,)):
                if f(x, y) == t:
                    return (x, y)
    return None


def triangle_cycle(s: int) -> OddCycle:
    """Verified 3-cycle (equilateral triangle edge vectors) for s in class S."""
    if classify(s) is not STClass.S:
        raise ValueError(f"triangle_cycle requires s in class S, got {s}")
    rep = form_represents(FORMS[ParamId.TRIANGLE], s)
    if rep is None:
        raise ConstructionError(
            f"no (a, b) with 2a^2+2ab+2b^2 = {s}; contradicts the S characterization"
        )
    cycle = param_cycle(ParamId.TRIANGLE, *rep)
    return cycle


def triangle_witness_via_triples(s: int) -> Optional[Triple]:
    """Independent S witness: a triple a^2+b^2+c^2 = s with a+b = c up to signs."""
    for tr in enumerate_triples(s):
        for x, y, z in ((tr.a, tr.b, tr.c), (tr.a, tr.c, tr.b), (tr.b, tr.c, tr.a)):
            if x + y == z or abs(x - y) == z:
                return tr
    return None


def param_cycle(p: ParamId, x: int, y: int) -> OddCycle:
    """Instantiate a template family at (x, y); verified before return."""
    if x == 0 and y == 0:
        raise ValueError("(0, 0) would produce zero vectors")
    vecs = [row(x, y) for row in _TEMPLATES[p]]
    cycle = OddCycle.from_vectors(FORMS[p](x, y), vecs)
    diag = verify_cycle(cycle)
    if not diag.valid:
        raise ConstructionError(f"template {p} failed at ({x}, {y}): {diag.reason}")
    return cycle


def k4_points(m: int, r: int) -> tuple[tuple[int, ...], ...]:
    """Four points of Z^m (m >= 4) with all six pairwise squared distances r."""
    if m < 4:
        raise ValueError(f"m must be >= 4, got {m}")
    if r < 2 or r % 2 != 0:
        raise ValueError(f"r must be even and positive, got {r}")
    x1, x2, x3, x4 = four_square_decomposition(r // 2)
    pad = (0,) * (m - 4)
    p1 = (0, 0, 0, 0) + pad
    p2 = (x1 - x2, x1 + x2, x3 - x4, x3 + x4) + pad
    p3 = (x1 - x3, x2 + x4, x1 + x3, -x2 + x4) + pad
    p4 = (x1 + x4, x2 + x3, -x2 + x3, -x1 + x4) + pad
    points = (p1, p2, p3, p4)
    for i in range(4):
        for j in range(i + 1, 4):
            d = magnitude_sq(tuple(a - b for a, b in zip(points[i], points[j])))
            if d != r:
                raise ConstructionError(
                    f"K4 points for (m={m}, r={r}) have distance^2 {d} between "
                    f"P{i + 1} and P{j + 1}"
                )
    return points


def k4_triangle(m: int, r: int) -> OddCycle:
    """3-cycle certificate extracted from the K4 point set."""
    p1, p2, p3, _ = k4_points(m, r)
    v1 = tuple(a - b for a, b in zip(p2, p1))
    v2 = tuple(a - b for a, b in zip(p3, p2))
    v3 = tuple(a - b for a, b in zip(p1, p3))
    return OddCycle.from_vectors(r, [v1, v2, v3])


def z2_doubling_map(p: tuple[int, int]) -> tuple[int, int]:
    """(a, b) -> (a + b, a - b); doubles every squared distance in Z^2."""
    a, b = p
    return (a + b, a - b)
