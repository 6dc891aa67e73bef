"""Bounds on the minimum number of negative entries of zero-free eigenvectors.

Lower bounds come from sphere sums (the weight-distribution argument) and
from anticodes; upper bounds come from equitable partitions: a zero-free
eigenvector u of the quotient matrix lifts to a zero-free eigenvector of
J(n, w) whose negative entries sit on the parts where u is negative.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .combinat import (
    JohnsonParams,
    RegimeError,
    binomial,
    check_cap,
    neighbor_ranks,
    vertices,
)
from .exactlinalg import RatMatrix, as_fraction, nullspace, primitive_integer
from .spectra import SchemeVector, eberlein, eigenvalue

PARTITION_CAP = 10_000


class NotEquitable(ValueError):
    """A vertex whose neighbor counts into the parts differ from its part's first vertex."""

    def __init__(self, vertex: int, part: int, counts: tuple, expected: tuple):
        self.vertex = vertex
        self.part = part
        self.counts = counts
        self.expected = expected
        super().__init__(
            f"vertex {vertex} in part {part} has part-neighbor counts {list(counts)}, "
            f"expected {list(expected)}"
        )


# ---------------------------------------------------------------------------
# lower bounds


def wd_lower_bound(i: int, n: int, w: int) -> int:
    """1 + sum over k >= 1 with E_k(i,w,n) >= 0 of min(E_k(i,w,n) + 1, |C_k|).

    Take x with the most negative entry.  The sphere C_k sums to v_x E_k, so
    it holds more than E_k negatives unless it has no positive entry at all.
    The cap only bites for the one-vertex antipodal sphere of J(2w, w).
    """
    if not 1 <= i <= w:
        raise ValueError(f"eigenspace index {i} outside 1..{w}")
    total = 1
    for k in range(1, w + 1):
        e = eberlein(k, i, w, n)
        if e >= 0:
            total += min(e + 1, binomial(w, k) * binomial(n - w, k))
    return total


def eq2_lower(n: int) -> int:
    """n - 2 for J(n, 3), i = 2: C(n,3) divided by the size of a Steiner triple system."""
    if n % 6 not in (1, 3):
        raise RegimeError(f"Steiner triple systems need n = 1, 3 mod 6; got n={n}")
    sts = n * (n - 1) // 6
    q, rem = divmod(binomial(n, 3), sts)
    assert rem == 0 and q == n - 2
    return q


def clique_anticode_lower(n: int, w: int) -> int:
    """ceil(C(n,w) / (n-w+1)) for i = w, using the clique {x : y in x} with |y| = w-1."""
    size = n - w + 1
    return -(-binomial(n, w) // size)


def antipodal_value(w: int) -> int:
    """Exact minimum for J(2w, w) and odd i: half of the vertices, C(2w-1, w-1)."""
    return binomial(2 * w - 1, w - 1)


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True)
class VertexPartition:
    """Assignment of every vertex (by colex rank) to a part numbered 1..r."""

    n: int
    w: int
    part_of: tuple

    def __post_init__(self):
        JohnsonParams(self.n, self.w)
        N = binomial(self.n, self.w)
        if len(self.part_of) != N:
            raise ValueError(f"expected {N} assignments, got {len(self.part_of)}")
        object.__setattr__(self, "part_of", tuple(int(p) for p in self.part_of))
        r = max(self.part_of)
        sizes = [0] * r
        for p in self.part_of:
            if p < 1:
                raise ValueError(f"part indices start at 1, got {p}")
            sizes[p - 1] += 1
        if 0 in sizes:
            raise ValueError(f"part {sizes.index(0) + 1} is empty")

    @property
    def r(self) -> int:
        return max(self.part_of)

    @property
    def part_sizes(self) -> list[int]:
        sizes = [0] * self.r
        for p in self.part_of:
            sizes[p - 1] += 1
        return sizes

    @classmethod
    def from_classifier(cls, n: int, w: int, classify) -> "VertexPartition":
        return cls(n, w, tuple(classify(els) for els in vertices(n, w)))


@dataclass(frozen=True)
class QuotientMatrix:
    entries: tuple  # r x r integers
    part_sizes: tuple

    @property
    def r(self) -> int:
        return len(self.entries)

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.entries]

    def reciprocal(self) -> bool:
        s = self.part_sizes
        return all(
            s[a] * self.entries[a][b] == s[b] * self.entries[b][a]
            for a in range(self.r) for b in range(self.r)
        )

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def matrix(self) -> RatMatrix:
        return RatMatrix(self.entries)


def verify_equitable(p: VertexPartition) -> QuotientMatrix:
    """Quotient matrix of p, or NotEquitable naming the first offending vertex."""
    check_cap(p.n, p.w, PARTITION_CAP, "verify_equitable")
    adj = neighbor_ranks(p.n, p.w)
    r = p.r
    rows: list = [None] * r
    first: list = [None] * r
    for v, nbrs in enumerate(adj):
        counts = [0] * r
        for s in nbrs:
            counts[p.part_of[s] - 1] += 1
        part = p.part_of[v] - 1
        if rows[part] is None:
            rows[part], first[part] = tuple(counts), v
        elif tuple(counts) != rows[part]:
            raise NotEquitable(v, part + 1, tuple(counts), rows[part])
    Q = QuotientMatrix(tuple(rows), tuple(p.part_sizes))
    assert Q.reciprocal()
    assert len(set(Q.row_sums())) == 1
    return Q


def verify_quotient_eigvec(Q: QuotientMatrix, u: Sequence, lam) -> bool:
    u = [as_fraction(x) for x in u]
    if len(u) != Q.r:
        raise ValueError(f"vector of length {len(u)} for a {Q.r}x{Q.r} quotient")
    if not any(u):
        return False
    lam = as_fraction(lam)
    return all(x == lam * y for x, y in zip(Q.matrix() @ u, u))


def quotient_eigenvalue(Q: QuotientMatrix, u: Sequence):
    """Eigenvalue of Q for u, or None when u is not an eigenvector."""
    u = [as_fraction(x) for x in u]
    Qu = Q.matrix() @ u
    j = next((j for j, x in enumerate(u) if x != 0), None)
    if j is None:
        return None
    lam = Qu[j] / u[j]
    return lam if verify_quotient_eigvec(Q, u, lam) else None


def quotient_eigenvectors(Q: QuotientMatrix, lam: int) -> list[list[int]]:
    """Primitive integer basis of the lam-eigenspace of Q."""
    rows = [[Q.entries[a][b] - (lam if a == b else 0) for b in range(Q.r)] for a in range(Q.r)]
    return [primitive_integer(c) for c in nullspace(RatMatrix(rows)).columns()]


def lift_eigenvector(p: VertexPartition, u: Sequence, Q: QuotientMatrix | None = None) -> SchemeVector:
    """The part-constant vector u^G with (u^G)_x = u_j for x in part j."""
    Q = verify_equitable(p) if Q is None else Q
    if quotient_eigenvalue(Q, u) is None:
        raise ValueError(f"{list(u)} is not an eigenvector of the quotient matrix")
    u = [as_fraction(x) for x in u]
    return SchemeVector(p.n, p.w, tuple(u[j - 1] for j in p.part_of))


def prop1_upper_bound(p: VertexPartition, u: Sequence) -> int:
    """Total size of the parts where the zero-free quotient eigenvector u is negative."""
    u = [as_fraction(x) for x in u]
    if len(u) != p.r:
        raise ValueError(f"vector of length {len(u)} for {p.r} parts")
    if any(x == 0 for x in u):
        raise ValueError("the quotient eigenvector has a zero entry; the bound does not apply")
    sizes = p.part_sizes
    total = sum(s for s, x in zip(sizes, u) if x < 0)
    if total == 0:
        warnings.warn("u has no negative entries (the all-ones direction); the bound is vacuous")
    return total


# ---------------------------------------------------------------------------
# constructions on triples


def _bipartite_adjacent(a: int, b: int, r: int) -> bool:
    """Complete bipartite graph on {1..r} | {r+1..2r} minus the matching i -- r+i."""
    if (a <= r) == (b <= r):
        return False
    lo, hi = min(a, b), max(a, b)
    return hi != lo + r


def _edges(triple, r) -> int:
    a, b, c = triple
    return sum(_bipartite_adjacent(x, y, r) for x, y in ((a, b), (a, c), (b, c)))


def even_quotient_formula(r: int) -> list[list[int]]:
    return [[3 * (2 * r - 5), 6], [4 * (r - 2), 2 * r - 1]]


def odd_quotient_formula(r: int) -> list[list[int]]:
    return [
        [3 * (r - 3), 3 * (r - 2), 6, 0, 3, 0],
        [r - 2, 5 * r - 13, 6, 0, 1, 2],
        [r - 2, 3 * (r - 2), 2 * r - 1, 1, 1, 1],
        [0, 0, 2 * (r - 1), 0, 2 * (r - 1), 2 * (r - 1)],
        [r - 2, r - 2, 2, 2, 2 * (r - 2), 2 * (r - 1)],
        [0, 2 * (r - 2), 2, 2, 2 * (r - 1), 2 * (r - 2)],
    ]


def odd_lambda2_vector(r: int) -> list[int]:
    return [3, 3, 4 - 2 * r, 2 - 2 * r, 1, 1]


def build_even_partition(r: int) -> VertexPartition:
    """Two-part partition of J(2r, 3): {<=0 or 2 edges} vs {exactly 1 edge}.

    Triples are classified by the number of edges they span in the complete
    bipartite graph {1..r} | {r+1..2r} with the matching i -- r+i removed.
    """
    if r < 2:
        raise ValueError("need r >= 2")
    if r < 4:
        warnings.warn(f"r={r} is below the range where the quotient formula is checked")
    return VertexPartition.from_classifier(2 * r, 3, lambda t: 2 if _edges(t, r) == 1 else 1)


def build_odd_partition(r: int) -> VertexPartition:
    """Six-part partition of J(2r+1, 3); vertex 2r+1 is isolated, the rest as in the even case."""
    if r < 2:
        raise ValueError("need r >= 2")
    if r < 4:
        warnings.warn(f"r={r} is below the range where the quotient formula is checked")
    iso = 2 * r + 1

    def classify(t):
        if iso not in t:
            e = _edges(t, r)
            if e == 0:
                return 1
            return 2 if e == 2 else 3
        a, b = t[0], t[1]
        if _bipartite_adjacent(a, b, r):
            return 6
        return 5 if (a <= r) == (b <= r) else 4

    return VertexPartition.from_classifier(2 * r + 1, 3, classify)


def even_lambda2_vector(r: int) -> list[int]:
    """The lambda_2 eigenvector of the even quotient, solved exactly."""
    Q = QuotientMatrix(tuple(map(tuple, even_quotient_formula(r))), (0, 0))
    vecs = quotient_eigenvectors(Q, eigenvalue(2, 2 * r, 3))
    if len(vecs) != 1:
        raise AssertionError(f"expected a 1-dimensional eigenspace, got {len(vecs)}")
    return vecs[0]


def theorem3_upper(n: int, verify: bool = False) -> int:
    """n(n-2)/2 for even n, (n-1)(n-2)/2 for odd n (J(n,3), i = 2)."""
    value = n * (n - 2) // 2 if n % 2 == 0 else (n - 1) * (n - 2) // 2
    validated = n >= 8 if n % 2 == 0 else n >= 9
    if not validated:
        warnings.warn(f"n={n} is below the range where the constructions are checked")
    if verify:
        r = n // 2
        if n % 2 == 0:
            p, u = build_even_partition(r), even_lambda2_vector(r)
        else:
            p, u = build_odd_partition(r), odd_lambda2_vector(r)
        Q = verify_equitable(p)
        if not verify_quotient_eigvec(Q, u, eigenvalue(2, n, 3)):
            raise AssertionError(f"construction for n={n} does not carry a lambda_2 eigenvector")
        got = prop1_upper_bound(p, u)
        if got != value:
            raise AssertionError(f"construction gives {got}, closed form gives {value}")
    return value


# ---------------------------------------------------------------------------
# partition files


def write_partition(p: VertexPartition, path) -> None:
    Path(path).write_bytes(dump_partition(p).encode())


def dump_partition(p: VertexPartition) -> str:
    header = json.dumps({"n": p.n, "r": p.r, "w": p.w}, sort_keys=True)
    body = "".join(f"{rank}\t{part}\n" for rank, part in enumerate(p.part_of))
    return header + "\n" + body


def load_partition(text: str) -> VertexPartition:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty partition file")
    head = json.loads(lines[0])
    n, w, r = int(head["n"]), int(head["w"]), int(head["r"])
    N = binomial(n, w)
    part_of = [None] * N
    for ln in lines[1:]:
        if not ln.strip():
            continue
        rank_s, part_s = ln.split("\t")
        rk = int(rank_s)
        if not 0 <= rk < N or part_of[rk] is not None:
            raise ValueError(f"bad or repeated rank {rk}")
        part_of[rk] = int(part_s)
    if any(x is None for x in part_of):
        raise ValueError("partition file does not assign every vertex")
    p = VertexPartition(n, w, tuple(part_of))
    if p.r != r:
        raise ValueError(f"header says r={r}, file uses {p.r} parts")
    return p


def read_partition(path) -> VertexPartition:
    return load_partition(Path(path).read_text())


# ---------------------------------------------------------------------------
# reports

LOWER_KINDS = ("weight-distribution", "steiner-anticode", "clique-anticode", "antipodal")
UPPER_KINDS = ("even-partition", "odd-partition", "antipodal", "user-partition")


@dataclass
class BoundsReport:
    i: int
    n: int
    w: int
    lower_bounds: list = field(default_factory=list)  # (value, provenance)
    upper_bounds: list = field(default_factory=list)

    @property
    def best_lower(self):
        return max((v for v, _ in self.lower_bounds), default=None)

    @property
    def best_upper(self):
        return min((v for v, _ in self.upper_bounds), default=None)

    @property
    def exact(self):
        lo, hi = self.best_lower, self.best_upper
        return lo if lo is not None and lo == hi else None

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "n": self.n,
            "w": self.w,
            "lower_bounds": [{"value": str(v), "provenance": s} for v, s in self.lower_bounds],
            "upper_bounds": [{"value": str(v), "provenance": s} for v, s in self.upper_bounds],
            "best_lower": None if self.best_lower is None else str(self.best_lower),
            "best_upper": None if self.best_upper is None else str(self.best_upper),
            "exact": None if self.exact is None else str(self.exact),
        }


def bounds_report(i: int, n: int, w: int, partitions: Sequence = ()) -> BoundsReport:
    """Every applicable bound on the minimum negative count, with provenance.

    ``partitions`` holds extra (VertexPartition, quotient eigenvector) pairs,
    each contributing a user-partition upper bound after verification.
    """
    JohnsonParams(n, w)
    if not 1 <= i <= w:
        raise ValueError(f"eigenspace index {i} outside 1..{w}")
    rep = BoundsReport(i, n, w)
    rep.lower_bounds.append((wd_lower_bound(i, n, w), "weight-distribution"))
    if i == 2 and w == 3 and n % 6 in (1, 3):
        rep.lower_bounds.append((eq2_lower(n), "steiner-anticode"))
    if i == w:
        rep.lower_bounds.append((clique_anticode_lower(n, w), "clique-anticode"))
    if n == 2 * w and i % 2 == 1:
        val = antipodal_value(w)
        rep.lower_bounds.append((val, "antipodal"))
        rep.upper_bounds.append((val, "antipodal"))
    if i == 2 and w == 3:
        if n % 2 == 0 and n >= 8:
            rep.upper_bounds.append((theorem3_upper(n), "even-partition"))
        elif n % 2 == 1 and n >= 9:
            rep.upper_bounds.append((theorem3_upper(n), "odd-partition"))
    lam = eigenvalue(i, n, w)
    for p, u in partitions:
        if (p.n, p.w) != (n, w):
            raise ValueError("partition lives on a different scheme")
        Q = verify_equitable(p)
        if not verify_quotient_eigvec(Q, u, lam):
            raise ValueError(f"{list(u)} is not a lambda_{i} eigenvector of the quotient")
        rep.upper_bounds.append((prop1_upper_bound(p, u), "user-partition"))
    return rep
