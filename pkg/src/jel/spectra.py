"""Eberlein polynomials, Johnson eigenvalues and eigenspaces, sign census.

Vectors on J(n, w) are :class:`SchemeVector` values indexed by colex rank.
The adjacency operator is applied by walking neighbor lists; it is never
stored as a matrix except inside :func:`eigenspace_basis`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .combinat import (
    JohnsonParams,
    RegimeError,
    WSubset,
    binomial,
    check_cap,
    distance_matrix,
    incidence_matrix,
    neighbor_ranks,
    rank_of,
    vertices,
)
from .exactlinalg import RatMatrix, as_fraction, integer_nullspace, primitive_integer

EIGENSPACE_CAP = 10_000


def eberlein(k: int, i: int, w: int, n: int) -> int:
    """E_k(i, w, n) = sum_j (-1)^j C(i, j) C(w-i, k-j) C(n-w-i, k-j)."""
    if not (0 <= k <= w and 0 <= i <= w and w <= n):
        raise ValueError(f"need 0 <= k, i <= w <= n; got k={k}, i={i}, w={w}, n={n}")
    return sum(
        (-1) ** j * binomial(i, j) * binomial(w - i, k - j) * binomial(n - w - i, k - j)
        for j in range(k + 1)
    )


def eigenvalue(i: int, n: int, w: int) -> int:
    """lambda_i(n, w) = (w - i)(n - w - i) - i."""
    if not 0 <= i <= w:
        raise ValueError(f"eigenspace index {i} outside 0..{w}")
    value = (w - i) * (n - w - i) - i
    if n - w - i >= 0:
        assert value == eberlein(1, i, w, n)
    return value


def eigenspace_dimension(i: int, n: int) -> int:
    return 1 if i == 0 else binomial(n, i) - binomial(n, i - 1)


@dataclass(frozen=True)
class SchemeVector:
    """Exact rational vector on the vertices of J(n, w), ordered by colex rank."""

    n: int
    w: int
    entries: tuple

    def __post_init__(self):
        ents = tuple(as_fraction(x) for x in self.entries)
        if len(ents) != binomial(self.n, self.w):
            raise ValueError(
                f"J({self.n},{self.w}) has {binomial(self.n, self.w)} vertices, "
                f"got {len(ents)} entries"
            )
        object.__setattr__(self, "entries", ents)

    @classmethod
    def constant(cls, n: int, w: int, value=1) -> "SchemeVector":
        return cls(n, w, (value,) * binomial(n, w))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, r):
        return self.entries[r]

    def __neg__(self):
        return SchemeVector(self.n, self.w, tuple(-x for x in self.entries))

    def scaled(self, c) -> "SchemeVector":
        c = as_fraction(c)
        return SchemeVector(self.n, self.w, tuple(c * x for x in self.entries))

    def at(self, x: WSubset):
        return self.entries[x.rank]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def primitive(self) -> "SchemeVector":
        """Same direction, coprime integer entries, first nonzero entry positive."""
        return SchemeVector(self.n, self.w, tuple(primitive_integer(self.entries)))

    @property
    def support(self) -> int:
        return sum(1 for x in self.entries if x != 0)

    @property
    def negatives(self) -> frozenset:
        return frozenset(r for r, x in enumerate(self.entries) if x < 0)


def apply_adjacency(v: SchemeVector) -> list[Fraction]:
    adj = neighbor_ranks(v.n, v.w)
    ents = v.entries
    return [sum((ents[s] for s in nbrs), Fraction(0)) for nbrs in adj]


def inclusion_map(a: Sequence, w: int) -> SchemeVector:
    """Lift a vector on the n points to J(n, w): entry at x is the sum over x."""
    alpha = [as_fraction(x) for x in a]
    n = len(alpha)
    if not 1 <= w <= n:
        raise ValueError(f"need 1 <= w <= n, got w={w}, n={n}")
    ents = tuple(sum((alpha[e - 1] for e in els), Fraction(0)) for els in vertices(n, w))
    return SchemeVector(n, w, ents)


def check_distinct_eigenvalues(n: int, w: int) -> None:
    lams = [eigenvalue(i, n, w) for i in range(w + 1)]
    if len(set(lams)) != len(lams):
        raise RegimeError(f"eigenvalues of J({n},{w}) coincide: {lams}")


@lru_cache(maxsize=128)
def _basis_columns(i: int, n: int, w: int, cap: int) -> tuple:
    JohnsonParams(n, w)
    if not 0 <= i <= w:
        raise ValueError(f"eigenspace index {i} outside 0..{w}")
    check_cap(n, w, cap, "eigenspace basis")
    check_distinct_eigenvalues(n, w)
    lam = eigenvalue(i, n, w)
    M = (distance_matrix(n, w) == 1).astype(np.int64)
    np.fill_diagonal(M, -lam)
    N = M.shape[0]
    rows = M.tolist()
    return tuple(tuple(col) for col in integer_nullspace(rows, N))


def eigenspace_basis(i: int, n: int, w: int, cap: int = EIGENSPACE_CAP) -> RatMatrix:
    """Basis of V_i as the columns of a C(n,w) x dim matrix.

    Computed as the exact nullspace of A - lambda_i I; each column is scaled
    to coprime integers.  Refuses when lambda_0..lambda_w are not pairwise
    distinct, since the nullspace would then mix eigenspaces.
    """
    cols = _basis_columns(i, n, w, cap)
    return RatMatrix.from_columns(cols, binomial(n, w))


def basis_vectors(i: int, n: int, w: int, cap: int = EIGENSPACE_CAP) -> list[SchemeVector]:
    return [SchemeVector(n, w, col) for col in _basis_columns(i, n, w, cap)]


def basis_array(i: int, n: int, w: int, cap: int = EIGENSPACE_CAP) -> np.ndarray:
    """Integer basis as a numpy array (object dtype when entries are large)."""
    cols = _basis_columns(i, n, w, cap)
    N = binomial(n, w)
    if not cols:
        return np.zeros((N, 0), dtype=np.int64)
    big = max(abs(x) for col in cols for x in col)
    dtype = np.int64 if big * N < 2**62 else object
    return np.array(cols, dtype=dtype).T.copy()


def is_eigenvector(v: SchemeVector, i: int) -> bool:
    """True iff v is nonzero and A v = lambda_i v exactly."""
    if not 0 <= i <= v.w:
        return False
    if v.is_zero():
        return False
    lam = eigenvalue(i, v.n, v.w)
    Av = apply_adjacency(v)
    return all(a == lam * x for a, x in zip(Av, v.entries))


def sphere_sums(v: SchemeVector, x: WSubset) -> list[Fraction]:
    """S_k = sum of v over the vertices at distance k from x, for k = 0..w."""
    if (x.n, x.w) != (v.n, v.w):
        raise ValueError("vertex and vector live on different schemes")
    row = distance_matrix(v.n, v.w)[x.rank]
    out = [Fraction(0)] * (v.w + 1)
    for r, k in enumerate(row.tolist()):
        out[k] += v.entries[r]
    return out


def sphere_identity_holds(i: int, n: int, w: int, cap: int = EIGENSPACE_CAP) -> bool:
    """Check S_k(b, x) = b_x E_k(i, w, n) for every basis vector b and vertex x.

    Uses integer matrix products D_k B = E_k B, where D_k is the distance-k
    relation matrix and B the integer eigenspace basis.
    """
    B = basis_array(i, n, w, cap)
    D = distance_matrix(n, w)
    N = D.shape[0]
    big = int(np.abs(B).max()) if B.size else 0
    # float64 products are exact while every partial sum stays below 2**53
    dtype = np.float64 if big * N < 2**52 else (np.int64 if B.dtype != object else object)
    Bd = B.astype(dtype)
    for k in range(w + 1):
        Dk = (D == k).astype(dtype)
        if not np.array_equal(Dk @ Bd, eberlein(k, i, w, n) * Bd):
            return False
    return True


def sign_census(v: SchemeVector) -> tuple[int, int, int]:
    """(|X+|, |X-|, |X0|) for the vector v."""
    pos = sum(1 for x in v.entries if x > 0)
    neg = sum(1 for x in v.entries if x < 0)
    return pos, neg, len(v.entries) - pos - neg


def antipode(x: WSubset) -> WSubset:
    if x.n != 2 * x.w:
        raise RegimeError(f"antipodes exist only for n = 2w, got J({x.n},{x.w})")
    inside = set(x.elements)
    return WSubset(x.n, tuple(e for e in range(1, x.n + 1) if e not in inside))


def antipode_rank(n: int, w: int, r: int) -> int:
    els = set(vertices(n, w)[r])
    return rank_of(tuple(e for e in range(1, n + 1) if e not in els))


def inclusion_images(batch: np.ndarray, n: int, w: int) -> np.ndarray:
    """Integer inclusion-map images for a batch of ground vectors (rows of ``batch``)."""
    return batch @ incidence_matrix(n, w).T
