"""Magnitude-sqrt(t) lattice vector sets in Z^3.

Vectors are plain tuples of ints.  The full set V(t) is produced by
permuting and sign-flipping each canonical triple of t, deduplicated and
sorted so that sequential searches are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import comb

from .arith import Triple, enumerate_triples

LatticeVector = tuple[int, ...]


def magnitude_sq(v: LatticeVector) -> int:
    return sum(x * x for x in v)


def expand_triple(tr: Triple) -> list[LatticeVector]:
    """All distinct vectors from permutations and sign changes of (a, b, c).

    48 when 0 < a < b < c; fewer when entries repeat or are zero.
    """
    seen: set[LatticeVector] = set()
    for perm in permutations(tr):
        for signs in product((1, -1), repeat=3):
            seen.add((signs[0] * perm[0], signs[1] * perm[1], signs[2] * perm[2]))
    return sorted(seen)


@dataclass(frozen=True)
class VectorSet:
    """Deduplicated, lexicographically sorted vectors of squared magnitude t."""

    t: int
    vectors: tuple[LatticeVector, ...]

    def __len__(self) -> int:
        return len(self.vectors)


def vector_set(t: int) -> VectorSet:
    """Build V(t): every Z^3 vector with squared magnitude exactly t."""
    seen: set[LatticeVector] = set()
    for tr in enumerate_triples(t):
        seen.update(expand_triple(tr))
    return VectorSet(t=t, vectors=tuple(sorted(seen)))


def search_space_size(n_vectors: int, cycle_len: int) -> int:
    """Number of multisets of size cycle_len over n_vectors items (exact)."""
    if n_vectors < 1 or cycle_len < 1:
        raise ValueError("both arguments must be positive")
    return comb(n_vectors + cycle_len - 1, cycle_len)
