"""Desk-scale search for the minimum negative count of zero-free eigenvectors.

A candidate negative set S is realizable iff some c gives B c negative
exactly on S and positive elsewhere, where B is an eigenspace basis.  That
is a strict sign-feasibility problem, decided exactly by
:func:`jel.exactlinalg.solve_strict`.  Infeasible answers come with a
certificate whose support is a small set of (vertex, sign) pairs; any later
candidate agreeing with it on those vertices is rejected without an LP.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .combinat import binomial, check_cap, rank_of, vertices
from .exactlinalg import RatMatrix, primitive_integer, solve_strict
from .spectra import (
    EIGENSPACE_CAP,
    SchemeVector,
    apply_adjacency,
    basis_vectors,
    eigenspace_basis,
    eigenvalue,
    is_eigenvector,
)

EXHAUSTIVE_CAP = 30
LP_FALLBACK_CAP = 30


@dataclass
class SearchResult:
    i: int
    n: int
    w: int
    value: int | None
    status: str  # "exact", "exceeds" (no set of size <= s_max) or "upper"
    method: str  # "exhaustive" or "randomized"
    witness: SchemeVector | None = None
    explored: int = 0
    lp_calls: int = 0
    s_max: int | None = None
    symmetry: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "n": self.n,
            "w": self.w,
            "value": self.value,
            "status": self.status,
            "method": self.method,
            "explored": self.explored,
            "lp_calls": self.lp_calls,
            "s_max": self.s_max,
            "symmetry": [list(g) for g in self.symmetry],
            "witness": None if self.witness is None else witness_to_dict(self.witness, self.i),
        }


def witness_to_dict(v: SchemeVector, i: int) -> dict:
    return {
        "n": v.n,
        "w": v.w,
        "i": i,
        "lambda": eigenvalue(i, v.n, v.w),
        "entries": [
            {"rank": r, "num": str(x.numerator), "den": str(x.denominator)}
            for r, x in enumerate(v.entries)
        ],
    }


def witness_from_dict(d: dict) -> tuple[SchemeVector, int]:
    n, w = int(d["n"]), int(d["w"])
    ents = [None] * binomial(n, w)
    for e in d["entries"]:
        ents[int(e["rank"])] = Fraction(int(e["num"]), int(e["den"]))
    if any(x is None for x in ents):
        raise ValueError("witness does not list every vertex")
    return SchemeVector(n, w, tuple(ents)), int(d["i"])


def witness_json(v: SchemeVector, i: int) -> str:
    return json.dumps(witness_to_dict(v, i), sort_keys=True)


def verify_witness(v: SchemeVector, i: int, count: int | None = None) -> bool:
    """Exact eigenvector, no zero entries, and (optionally) ``count`` negatives."""
    if any(x == 0 for x in v.entries):
        return False
    if not is_eigenvector(v, i):
        return False
    return count is None or len(v.negatives) == count


def _basis_rows(i: int, n: int, w: int) -> RatMatrix:
    if i < 1:
        raise ValueError("searches cover eigenspaces i >= 1")
    return eigenspace_basis(i, n, w)


def _vector_from_coeffs(B: RatMatrix, c, n: int, w: int) -> SchemeVector:
    return SchemeVector(n, w, tuple(primitive_integer(B @ c, orient=False)))


def feasible_negative_set(i: int, n: int, w: int, S, B: RatMatrix | None = None):
    """A zero-free v in V_i with X_-(v) = S exactly, or None."""
    B = _basis_rows(i, n, w) if B is None else B
    S = set(S)
    signs = [-1 if r in S else 1 for r in range(B.nrows)]
    res = solve_strict(B, signs)
    if not res.feasible:
        return None
    v = _vector_from_coeffs(B, res.witness, n, w)
    assert v.negatives == frozenset(S) and all(x != 0 for x in v.entries)
    return v


class _Nogoods:
    """Bitmask store of certified infeasible partial sign patterns."""

    def __init__(self, nvert: int):
        self.enabled = nvert <= 64
        self.neg = np.zeros(64, dtype=np.uint64)
        self.pos = np.zeros(64, dtype=np.uint64)
        self.size = 0

    def add(self, support, negset) -> None:
        if not self.enabled:
            return
        nm = pm = 0
        for r in support:
            if r in negset:
                nm |= 1 << r
            else:
                pm |= 1 << r
        if self.size == len(self.neg):
            self.neg = np.concatenate([self.neg, np.zeros_like(self.neg)])
            self.pos = np.concatenate([self.pos, np.zeros_like(self.pos)])
        self.neg[self.size] = nm
        self.pos[self.size] = pm
        self.size += 1

    def blocks(self, mask: int) -> bool:
        if not self.enabled or self.size == 0:
            return False
        m = np.uint64(mask)
        neg, pos = self.neg[: self.size], self.pos[: self.size]
        return bool(np.any(((neg & ~m) == 0) & ((pos & m) == 0)))


def _point_group(n: int, gens: Sequence[Sequence[int]]) -> list[tuple]:
    """Closure of the generators (1-based images of 1..n) as 0-based tuples."""
    ident = tuple(range(n))
    G = {ident}
    frontier = [ident]
    gs = [tuple(x - 1 for x in g) for g in gens]
    for g in gs:
        if sorted(g) != list(range(n)):
            raise ValueError(f"{[x + 1 for x in g]} is not a permutation of 1..{n}")
    while frontier:
        nxt = []
        for h in frontier:
            for g in gs:
                gh = tuple(g[h[k]] for k in range(n))
                if gh not in G:
                    G.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return sorted(G)


def _vertex_actions(n: int, w: int, group: list[tuple]) -> list[list[int]]:
    verts = vertices(n, w)
    acts = []
    for g in group:
        acts.append([rank_of(tuple(sorted(g[e - 1] + 1 for e in els))) for els in verts])
    return acts


def min_negatives_exhaustive(
    i: int,
    n: int,
    w: int,
    s_max: int | None = None,
    symmetry: Sequence[Sequence[int]] | None = None,
    cap: int = EXHAUSTIVE_CAP,
    prune: bool = True,
) -> SearchResult:
    """Smallest s <= s_max admitting a zero-free v in V_i with exactly s negatives.

    Sizes are tried in increasing order and sets of one size in
    lexicographic rank order, so the first feasible set is the minimum and
    the reported witness is deterministic.  ``symmetry`` optionally lists
    permutations of 1..n; only the lexicographically least set in each orbit
    of the group they generate is tested.  ``prune=False`` disables the
    certificate-based nogoods, which only matters for cross-checking.
    """
    N = check_cap(n, w, cap, "min_negatives_exhaustive")
    B = _basis_rows(i, n, w)
    s_max = N - 1 if s_max is None else min(s_max, N - 1)
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    acts = None
    gens = [list(g) for g in symmetry] if symmetry else []
    if gens:
        acts = [a for a in _vertex_actions(n, w, _point_group(n, gens)) if a != list(range(N))]
    nogoods = _Nogoods(N)
    explored = lp_calls = 0
    for s in range(1, s_max + 1):
        for S in itertools.combinations(range(N), s):
            if acts is not None and any(tuple(sorted(a[r] for r in S)) < S for a in acts):
                continue
            explored += 1
            mask = 0
            for r in S:
                mask |= 1 << r
            if prune and nogoods.blocks(mask):
                continue
            signs = [1] * N
            for r in S:
                signs[r] = -1
            lp_calls += 1
            res = solve_strict(B, signs)
            if res.feasible:
                v = _vector_from_coeffs(B, res.witness, n, w)
                assert verify_witness(v, i, s)
                return SearchResult(i, n, w, s, "exact", "exhaustive", v, explored, lp_calls, s_max, gens)
            nogoods.add(res.support(), set(S))
    return SearchResult(i, n, w, None, "exceeds", "exhaustive", None, explored, lp_calls, s_max, gens)


# ---------------------------------------------------------------------------
# randomized prospecting


def _projector_column(i: int, n: int, w: int, x: int) -> list[Fraction]:
    """V_i component of the indicator of vertex x: prod_{j != i} (A - l_j)/(l_i - l_j) e_x."""
    N = binomial(n, w)
    vec = [Fraction(0)] * N
    vec[x] = Fraction(1)
    li = eigenvalue(i, n, w)
    for j in range(w + 1):
        if j == i:
            continue
        lj = eigenvalue(j, n, w)
        Av = apply_adjacency(SchemeVector(n, w, tuple(vec)))
        den = li - lj
        vec = [(a - lj * b) / den for a, b in zip(Av, vec)]
    return vec


def _flip_along(v: list, p: list, x: int):
    """Rational t making v + t p flip sign at x only, or None.

    With q_y = p_y / v_y, the sign at y is kept iff 1 + t q_y > 0 and
    reversed iff 1 + t q_y < 0; each condition is a half-line in t.
    """
    lo = hi = None
    for y, (vy, py) in enumerate(zip(v, p)):
        if py == 0:
            if y == x:
                return None
            continue
        q = py / vy
        edge = -1 / q
        keep_above = q > 0
        if y == x:
            keep_above = not keep_above
        if keep_above:
            lo = edge if lo is None or edge > lo else lo
        else:
            hi = edge if hi is None or edge < hi else hi
    if lo is not None and hi is not None:
        return (lo + hi) / 2 if lo < hi else None
    return hi - 1 if lo is None else lo + 1


def _sign_flip_step(v: list, p: list, x: int):
    """v' in span(v, p) with the sign at x reversed and every other sign kept."""
    t = _flip_along(v, p, x)
    if t is None:
        return None
    new = [a + t * b for a, b in zip(v, p)]
    if any(a == 0 for a in new):
        return None
    if (new[x] > 0) == (v[x] > 0):
        return None
    if any((a > 0) != (b > 0) for y, (a, b) in enumerate(zip(new, v)) if y != x):
        return None
    return new


def construction_seeds(i: int, n: int, w: int) -> list[SchemeVector]:
    """Lifted partition eigenvectors known for (i, w) = (2, 3)."""
    from .bounds import (
        build_even_partition,
        build_odd_partition,
        even_lambda2_vector,
        lift_eigenvector,
        odd_lambda2_vector,
    )

    if (i, w) != (2, 3):
        return []
    if n % 2 == 0 and n >= 8:
        return [lift_eigenvector(build_even_partition(n // 2), even_lambda2_vector(n // 2))]
    if n % 2 == 1 and n >= 9:
        return [lift_eigenvector(build_odd_partition(n // 2), odd_lambda2_vector(n // 2))]
    return []


def _random_zero_free(basis: list[SchemeVector], rng: random.Random, tries: int = 200):
    for _ in range(tries):
        coeffs = [rng.randint(-10**6, 10**6) for _ in basis]
        ents = [sum(c * b.entries[r] for c, b in zip(coeffs, basis) if c) for r in range(len(basis[0]))]
        if all(x != 0 for x in ents):
            return ents
    return None


def random_upper_search(
    i: int,
    n: int,
    w: int,
    iterations: int = 1000,
    seed: int = 0,
    seeds: Sequence[SchemeVector] | None = None,
    cap: int = EIGENSPACE_CAP,
) -> SearchResult:
    """Seeded local search for a zero-free eigenvector with few negatives.

    The state is an exact zero-free v in V_i (or its negation, whichever has
    fewer negatives).  Each iteration picks a random negative vertex x and
    tries to make it positive while keeping every other sign: first along the
    V_i-projection of the indicator of x, then, on small schemes, by an exact
    LP on the reduced negative set.  The result is an upper bound only.
    """
    N = check_cap(n, w, cap, "random_upper_search")
    rng = random.Random(seed)
    basis = basis_vectors(i, n, w, cap)
    starts = list(construction_seeds(i, n, w) if seeds is None else seeds)
    start_vecs = [list(s.entries) for s in starts]
    rnd = _random_zero_free(basis, rng)
    if rnd is not None:
        start_vecs.append(rnd)
    if not start_vecs:
        return SearchResult(i, n, w, None, "upper", "randomized", None, 0, 0)
    oriented = []
    for vec in start_vecs:
        if any(x == 0 for x in vec):
            continue
        neg = sum(1 for x in vec if x < 0)
        oriented.append(vec if 2 * neg <= N else [-x for x in vec])
    oriented.sort(key=lambda vec: (sum(1 for x in vec if x < 0), [str(x) for x in vec]))
    cur = oriented[0]
    B_rows = eigenspace_basis(i, n, w, cap) if N <= LP_FALLBACK_CAP else None
    projections: dict = {}
    explored = lp_calls = 0
    for _ in range(iterations):
        negs = [r for r, x in enumerate(cur) if x < 0]
        if not negs:
            break
        x = rng.choice(negs)
        explored += 1
        if x not in projections:
            projections[x] = _projector_column(i, n, w, x)
        new = _sign_flip_step(cur, projections[x], x)
        if new is None and B_rows is not None:
            lp_calls += 1
            target = set(negs) - {x}
            res = solve_strict(B_rows, [-1 if r in target else 1 for r in range(N)])
            if res.feasible:
                new = B_rows @ res.witness
        if new is not None:
            cur = [Fraction(a) for a in primitive_integer(new, orient=False)]
    v = SchemeVector(n, w, tuple(cur))
    assert verify_witness(v, i)
    return SearchResult(i, n, w, len(v.negatives), "upper", "randomized", v, explored, lp_calls)
