"""Binomials, colex ranking of w-subsets, and the Johnson graph J(n, w).

Vertices are w-subsets of {1..n} (1-based elements) stored as sorted
tuples.  Every vertex has a 0-based colexicographic rank; all
vertex-indexed vectors in this package are ordered by that rank.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

ENV_CAP = "JEL_MAX_VERTICES"


class CapExceeded(ValueError):
    """Raised when a computation would exceed a desk-scale vertex cap."""


class RegimeError(ValueError):
    """Raised when parameters fall outside the regime an operation covers."""


def vertex_cap(default: int) -> int:
    """Return the cap on C(n, w), overridable through JEL_MAX_VERTICES."""
    raw = os.environ.get(ENV_CAP)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


def check_cap(n: int, w: int, default: int, what: str = "computation") -> int:
    size = binomial(n, w)
    cap = vertex_cap(default)
    if size > cap:
        raise CapExceeded(
            f"{what} on J({n},{w}) needs {size} vertices; cap is {cap} "
            f"(set {ENV_CAP} to raise it)"
        )
    return size


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class JohnsonParams:
    n: int
    w: int

    def __post_init__(self):
        if not (1 <= self.w <= self.n - 1):
            raise ValueError(f"need 1 <= w <= n-1, got n={self.n}, w={self.w}")

    @property
    def num_vertices(self) -> int:
        return binomial(self.n, self.w)

    @property
    def degree(self) -> int:
        return self.w * (self.n - self.w)

    def require_half(self) -> None:
        """Check n >= 2w, the regime most results are stated for."""
        if self.n < 2 * self.w:
            raise RegimeError(f"need n >= 2w, got n={self.n}, w={self.w}")


@dataclass(frozen=True)
class WSubset:
    """A vertex of J(n, w): sorted 1-based elements plus the ground size."""

    n: int
    elements: tuple

    def __post_init__(self):
        els = tuple(int(e) for e in self.elements)
        if any(b <= a for a, b in zip(els, els[1:])):
            raise ValueError(f"elements must be strictly increasing: {els}")
        if els and (els[0] < 1 or els[-1] > self.n):
            raise ValueError(f"elements must lie in 1..{self.n}: {els}")
        object.__setattr__(self, "elements", els)

    @classmethod
    def of(cls, n: int, elements) -> "WSubset":
        return cls(n, tuple(sorted(elements)))

    @property
    def w(self) -> int:
        return len(self.elements)

    @property
    def params(self) -> JohnsonParams:
        return JohnsonParams(self.n, self.w)

    @property
    def rank(self) -> int:
        return rank_of(self.elements)

    def __contains__(self, item) -> bool:
        return item in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def rank_of(elements) -> int:
    """Colex rank of a sorted tuple of 1-based elements."""
    return sum(math.comb(e - 1, j) for j, e in enumerate(elements, start=1))


def rank(subset: WSubset) -> int:
    return rank_of(subset.elements)


def unrank_elements(n: int, w: int, r: int) -> tuple:
    total = binomial(n, w)
    if not 0 <= r < total:
        raise IndexError(f"rank {r} out of range 0..{total - 1} for J({n},{w})")
    out = [0] * w
    c = n
    for j in range(w, 0, -1):
        # largest c with C(c, j) <= r
        c -= 1
        while math.comb(c, j) > r:
            c -= 1
        out[j - 1] = c + 1
        r -= math.comb(c, j)
    return tuple(out)


def unrank(params: JohnsonParams, r: int) -> WSubset:
    return WSubset(params.n, unrank_elements(params.n, params.w, r))


def distance(x: WSubset, y: WSubset) -> int:
    """Relation index w - |x & y| between two vertices of the same scheme."""
    if x.n != y.n or x.w != y.w:
        raise ValueError(f"mismatched parameters: J({x.n},{x.w}) vs J({y.n},{y.w})")
    return x.w - len(set(x.elements) & set(y.elements))


def neighbors(x: WSubset) -> list[WSubset]:
    """All vertices at distance 1, in colex order."""
    inside = set(x.elements)
    out = []
    for drop in x.elements:
        rest = inside - {drop}
        for add in range(1, x.n + 1):
            if add not in inside:
                out.append(WSubset.of(x.n, rest | {add}))
    out.sort(key=lambda s: s.rank)
    return out


def distance_partition(x: WSubset) -> list[list[int]]:
    """Ranks of the spheres C_0..C_w around x (C_k = vertices at distance k)."""
    n, w = x.n, x.w
    row = distance_matrix(n, w)[x.rank]
    return [np.flatnonzero(row == k).tolist() for k in range(w + 1)]


@lru_cache(maxsize=64)
def vertices(n: int, w: int) -> tuple:
    """All w-subsets of {1..n} as sorted tuples, in colex rank order."""
    return tuple(unrank_elements(n, w, r) for r in range(binomial(n, w)))


@lru_cache(maxsize=64)
def incidence_matrix(n: int, w: int) -> np.ndarray:
    """0/1 matrix with row r the indicator of vertex r over {1..n}."""
    verts = vertices(n, w)
    M = np.zeros((len(verts), n), dtype=np.int64)
    for r, els in enumerate(verts):
        M[r, [e - 1 for e in els]] = 1
    M.setflags(write=False)
    return M


@lru_cache(maxsize=32)
def distance_matrix(n: int, w: int) -> np.ndarray:
    M = incidence_matrix(n, w)
    D = (w - M @ M.T).astype(np.int8)
    D.setflags(write=False)
    return D


@lru_cache(maxsize=64)
def neighbor_ranks(n: int, w: int) -> tuple:
    """Adjacency lists of J(n, w) by rank, each sorted."""
    rows, cols = np.nonzero(distance_matrix(n, w) == 1)
    cuts = np.searchsorted(rows, np.arange(1, binomial(n, w)))
    return tuple(tuple(part.tolist()) for part in np.split(cols, cuts))
