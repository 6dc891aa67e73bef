"""Minimum support of first-eigenspace vectors of J(n, w).

Every vector of V_1 is the inclusion-map image I(a) of a zero-sum ground
vector a.  The minimum support is attained either by I(e_1 - e_2) or by the
image of a ground vector taking exactly two values, so it reduces to a
comparison of binomial expressions.  :func:`oracle_min_support` recomputes
it by brute force over integer ground vectors without using that reduction.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .combinat import RegimeError, binomial, check_cap, incidence_matrix
from .spectra import SchemeVector, inclusion_images

ORACLE_CAP = 5_000
BUILD_CAP = 200_000


@dataclass(frozen=True, order=True)
class PairVector:
    """The class of I(e_1 - e_2)."""

    def __str__(self):
        return "PairVector"


@dataclass(frozen=True, order=True)
class TwoValued:
    """The class of I(sum_{i<=k} e_i - k/(n-k) sum_{i>k} e_i), stored with k <= n/2."""

    k: int

    def __str__(self):
        return f"TwoValued({self.k})"


def parse_choice(text: str):
    text = text.strip()
    if text == "PairVector":
        return PairVector()
    if text.startswith("TwoValued(") and text.endswith(")"):
        return TwoValued(int(text[len("TwoValued("):-1]))
    raise ValueError(f"unknown vector class {text!r}")


def winner_tag(choices) -> str:
    return ";".join(sorted(str(c) for c in choices))


@dataclass(frozen=True)
class MinSupportCertificate:
    n: int
    w: int
    value: int
    attained_by: tuple
    pair_branch: int
    twovalued_branch: tuple | None = None  # (k, support) for the best k

    @property
    def winner(self) -> str:
        return winner_tag(self.attained_by)

    def to_dict(self) -> dict:
        tv = None
        if self.twovalued_branch is not None:
            k, val = self.twovalued_branch
            tv = {"k": k, "value": str(val)}
        return {
            "n": self.n,
            "w": self.w,
            "value": str(self.value),
            "attained_by": [str(c) for c in self.attained_by],
            "winner": self.winner,
            "pair_branch": str(self.pair_branch),
            "twovalued_branch": tv,
        }


def _require_regime(n: int, w: int) -> None:
    if w < 2 or n < 2 * w:
        raise RegimeError(f"need n >= 2w and w >= 2, got n={n}, w={w}")


def pair_support(n: int, w: int) -> int:
    """Support of I(e_1 - e_2): 2 C(n-2, w-1)."""
    _require_regime(n, w)
    return 2 * binomial(n - 2, w - 1)


def admissible_ks(n: int, w: int) -> list[int]:
    """k in 2..n-2 with kw/n an integer."""
    step = n // math.gcd(n, w)
    return [k for k in range(step, n - 1, step) if k >= 2]


def two_valued_support(n: int, w: int, k: int) -> int:
    """Support of the two-valued image: C(n,w) - C(k, kw/n) C(n-k, (n-k)w/n)."""
    if not 2 <= k <= n - 2:
        raise ValueError(f"k={k} outside 2..{n - 2}")
    if (k * w) % n:
        raise ValueError(f"kw/n = {k}*{w}/{n} is not an integer")
    j = k * w // n
    return binomial(n, w) - binomial(k, j) * binomial(n - k, w - j)


def theorem1_value(n: int, w: int) -> MinSupportCertificate:
    """m_1^0(n, w) with every attaining vector class (ties are kept)."""
    pair = pair_support(n, w)
    best_k = None
    tv_best = None
    tv_ks = []
    for k in admissible_ks(n, w):
        if k > n - k:
            break
        val = two_valued_support(n, w, k)
        if tv_best is None or val < tv_best:
            tv_best, best_k, tv_ks = val, k, [k]
        elif val == tv_best:
            tv_ks.append(k)
    value = pair if tv_best is None else min(pair, tv_best)
    attained = []
    if pair == value:
        attained.append(PairVector())
    if tv_best == value:
        attained.extend(TwoValued(k) for k in tv_ks)
    branch = None if tv_best is None else (best_k, tv_best)
    return MinSupportCertificate(n, w, value, tuple(attained), pair, branch)


def ground_vector(n: int, choice) -> list[int]:
    """Integer ground vector for a vector class on n points."""
    if isinstance(choice, PairVector):
        return [1, -1] + [0] * (n - 2)
    if isinstance(choice, TwoValued):
        k = choice.k
        if not 2 <= k <= n - 2:
            raise ValueError(f"k={k} outside 2..{n - 2}")
        g = math.gcd(n - k, k)
        return [(n - k) // g] * k + [-k // g] * (n - k)
    raise ValueError(f"unknown vector class {choice!r}")


def build_optimal_vector(cert: MinSupportCertificate, choice, cap: int = BUILD_CAP) -> SchemeVector:
    """The attaining vector I(a) for one attaining class, as an exact vector."""
    if isinstance(choice, str):
        choice = parse_choice(choice)
    if choice not in cert.attained_by:
        raise ValueError(
            f"{choice} does not attain m_1^0({cert.n},{cert.w}); attaining classes: {cert.winner}"
        )
    check_cap(cert.n, cert.w, cap, "build_optimal_vector")
    a = np.array([ground_vector(cert.n, choice)], dtype=np.int64)
    return SchemeVector(cert.n, cert.w, tuple(inclusion_images(a, cert.n, cert.w)[0].tolist()))


def mvv_reference(i: int, n: int, w: int) -> int:
    """2^i C(n-2i, w-i): the large-n minimum support of V_i (reference only)."""
    if not 0 <= i <= w:
        raise ValueError(f"eigenspace index {i} outside 0..{w}")
    return 2**i * binomial(n - 2 * i, w - i)


# ---------------------------------------------------------------------------
# brute-force oracle


def canonical_ground_vectors(n: int, radius: int) -> Iterator[tuple]:
    """Nonzero zero-sum integer vectors in [-R, R]^n, sorted non-increasing, gcd 1."""
    out = [0] * n

    def rec(pos: int, hi: int, total: int):
        left = n - pos
        if left == 0:
            if total == 0:
                yield tuple(out)
            return
        # remaining entries lie in [-radius, v] once out[pos] = v
        for v in range(hi, -radius - 1, -1):
            rest = left - 1
            if total + v + rest * v < 0:
                break
            if total + v - rest * radius > 0:
                continue
            out[pos] = v
            yield from rec(pos + 1, v, total + v)

    for vec in rec(0, radius, 0):
        if vec[0] == 0:
            continue
        g = 0
        for x in vec:
            g = math.gcd(g, x)
            if g == 1:
                break
        if g == 1:
            yield vec


@dataclass
class OracleResult:
    value: int
    minimizers: list = field(default_factory=list)
    explored: int = 0


def oracle_search(n: int, w: int, radius: int, batch: int = 4096) -> OracleResult:
    """Exhaustive minimum of the support of I(a) over canonical grid vectors a."""
    check_cap(n, w, ORACLE_CAP, "oracle_min_support")
    if radius < 1:
        raise ValueError("radius must be positive")
    M = incidence_matrix(n, w)
    best = None
    minimizers = []
    explored = 0
    buf = []

    def flush():
        nonlocal best, minimizers
        arr = np.array(buf, dtype=np.int64)
        supp = np.count_nonzero(arr @ M.T, axis=1)
        lo = int(supp.min())
        if best is None or lo < best:
            best, minimizers = lo, []
        if lo == best:
            minimizers.extend(buf[j] for j in np.flatnonzero(supp == lo))
        buf.clear()

    for vec in canonical_ground_vectors(n, radius):
        buf.append(vec)
        explored += 1
        if len(buf) >= batch:
            flush()
    if buf:
        flush()
    if best is None:
        raise ValueError(f"no nonzero zero-sum vectors on {n} points")
    return OracleResult(best, minimizers, explored)


def oracle_min_support(n: int, w: int, radius: int) -> int:
    return oracle_search(n, w, radius).value


# ---------------------------------------------------------------------------
# conjecture scan

SCAN_COLUMNS = ("n", "w", "value", "winner", "pair_branch", "twovalued_k", "twovalued_value")


@dataclass(frozen=True)
class ScanRow:
    n: int
    w: int
    value: int
    winner: str
    pair_branch: int
    twovalued_k: int | None
    twovalued_value: int | None

    @classmethod
    def from_certificate(cls, cert: MinSupportCertificate) -> "ScanRow":
        k, val = cert.twovalued_branch if cert.twovalued_branch else (None, None)
        return cls(cert.n, cert.w, cert.value, cert.winner, cert.pair_branch, k, val)

    def as_record(self) -> tuple:
        return tuple("" if x is None else str(x) for x in (
            self.n, self.w, self.value, self.winner, self.pair_branch,
            self.twovalued_k, self.twovalued_value,
        ))


@dataclass
class ScanResult:
    rows: list
    violations: list  # (n, w) with w >= 5, n >= 2w+1 where the pair class does not win outright
    ties: list        # (n, w) where the pair class ties with a two-valued class

    def summary(self) -> dict:
        return {
            "rows": len(self.rows),
            "violations": [list(p) for p in self.violations],
            "ties": [list(p) for p in self.ties],
        }


def _scan_n(n: int, w_min: int) -> list:
    return [ScanRow.from_certificate(theorem1_value(n, w)) for w in range(w_min, n // 2 + 1)]


def conjecture_scan(n_min: int, n_max: int, w_min: int = 2, threads: int = 1) -> ScanResult:
    """theorem1_value for every n_min <= n <= n_max and w_min <= w <= n/2."""
    if w_min < 2:
        raise RegimeError("the scan covers w >= 2")
    ns = list(range(n_min, n_max + 1))
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            chunks = list(ex.map(_scan_n, ns, [w_min] * len(ns), chunksize=8))
    else:
        chunks = [_scan_n(n, w_min) for n in ns]
    rows = sorted((r for chunk in chunks for r in chunk), key=lambda r: (r.n, r.w))
    violations = [
        (r.n, r.w) for r in rows
        if r.w >= 5 and r.n >= 2 * r.w + 1 and r.winner != "PairVector"
    ]
    ties = [(r.n, r.w) for r in rows if "PairVector" in r.winner and ";" in r.winner]
    return ScanResult(rows, violations, ties)
