"""Acceptance criteria 1-10, each at its stated tolerance and time budget.

Each test prints one PASS/FAIL line, and the lines are repeated in the
terminal summary.
"""

import io
import json
import random
import time
from fractions import Fraction

from conftest import ACCEPTANCE_LINES
from jel.bounds import (
    bounds_report,
    build_even_partition,
    build_odd_partition,
    even_lambda2_vector,
    lift_eigenvector,
    even_quotient_formula,
    odd_quotient_formula,
    prop1_upper_bound,
    quotient_eigenvalue,
    verify_equitable,
    verify_quotient_eigvec,
    wd_lower_bound,
)
from jel.cli import run
from jel.combinat import binomial
from jel.minsupport import (
    TwoValued,
    build_optimal_vector,
    conjecture_scan,
    oracle_min_support,
    theorem1_value,
)
from jel.search import min_negatives_exhaustive, verify_witness
from jel.spectra import eberlein, inclusion_map, is_eigenvector, sphere_identity_holds


class Criterion:
    def __init__(self, number, budget):
        self.number = number
        self.budget = budget
        self.failures = []

    def check(self, ok, detail):
        if not ok:
            self.failures.append(detail)

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        if exc_type is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if elapsed >= self.budget:
            self.failures.append(f"took {elapsed:.1f}s, budget {self.budget}s")
        status = "FAIL" if self.failures else "PASS"
        line = f"criterion {self.number}: {status} ({elapsed:.2f}s)"
        if self.failures:
            line += " " + "; ".join(self.failures[:4])
        print(line)
        ACCEPTANCE_LINES.append(line)
        if exc_type is None:
            assert not self.failures, line
        return False


def test_criterion_01_examples():
    expected = {
        (6, 2): ("6", {"TwoValued(3)"}),
        (8, 2): ("12", {"TwoValued(4)", "PairVector"}),
        (9, 3): ("39", {"TwoValued(3)"}),
        (10, 4): ("110", {"TwoValued(5)"}),
    }
    with Criterion(1, 1.0) as c:
        for (n, w), (value, winners) in expected.items():
            out = io.StringIO()
            code = run(["min-support", "--n", str(n), "--w", str(w)], stdout=out, stderr=io.StringIO())
            got = json.loads(out.getvalue())["result"]
            c.check(code == 0, f"exit {code} at {(n, w)}")
            c.check(got["value"] == value, f"{(n, w)} value {got['value']} != {value}")
            c.check(set(got["attained_by"]) == winners, f"{(n, w)} winners {got['attained_by']}")


def test_criterion_02_antipodal_identity():
    with Criterion(2, 1.0) as c:
        for w in range(2, 21):
            n = 2 * w
            target = binomial(n, w) - 2 * binomial(n - 2, w - 1)
            cert = theorem1_value(n, w)
            c.check(cert.value == target, f"w={w}: {cert.value} != {target}")
            if binomial(n, w) > 50_000:
                continue  # materializing J(2w, w) no longer fits the time budget
            v = build_optimal_vector(cert, TwoValued(2))
            c.check(v.support == target, f"w={w}: built support {v.support}")
            if w <= 6:
                c.check(is_eigenvector(v, 1), f"w={w}: built vector not in V_1")


def test_criterion_03_oracle_equivalence():
    with Criterion(3, 300.0) as c:
        for w in range(2, 20):
            n = 2 * w
            if binomial(n, w) > 300:
                break
            while binomial(n, w) <= 300:
                got = oracle_min_support(n, w, max(4, w))
                want = theorem1_value(n, w).value
                c.check(got == want, f"J({n},{w}): oracle {got}, closed form {want}")
                n += 1


def test_criterion_04_scan():
    with Criterion(4, 120.0) as c:
        res = conjecture_scan(6, 600)
        expected_rows = sum(n // 2 - 1 for n in range(6, 601))
        c.check(len(res.rows) == expected_rows, f"{len(res.rows)} rows, expected {expected_rows}")
        c.check(res.violations == [], f"violations {res.violations[:5]}")
        for r in res.rows:
            if r.w >= 5 and r.n >= 2 * r.w + 1:
                c.check(r.winner == "PairVector", f"J({r.n},{r.w}) won by {r.winner}")


def test_criterion_05_lower_bound_closed_form():
    with Criterion(5, 1.0) as c:
        for n in range(7, 201):
            got = wd_lower_bound(2, n, 3)
            c.check(got == 2 * n - 9, f"n={n}: {got}")


def test_criterion_06_even_construction():
    with Criterion(6, 30.0) as c:
        for r in range(4, 13):
            n = 2 * r
            p = build_even_partition(r)
            Q = verify_equitable(p)
            c.check(Q.as_lists() == [[3 * (2 * r - 5), 6], [4 * (r - 2), 2 * r - 1]], f"r={r}: quotient {Q.as_lists()}")
            c.check(Q.as_lists() == even_quotient_formula(r), f"r={r}: helper quotient")
            u = even_lambda2_vector(r)
            c.check(quotient_eigenvalue(Q, u) == 2 * r - 7, f"r={r}: eigenvalue of {u}")
            c.check(prop1_upper_bound(p, u) == n * (n - 2) // 2, f"r={r}: bound")


def test_criterion_07_odd_construction():
    with Criterion(7, 120.0) as c:
        for r in range(4, 9):
            n = 2 * r + 1
            p = build_odd_partition(r)
            Q = verify_equitable(p)
            c.check(Q.as_lists() == odd_quotient_formula(r), f"r={r}: quotient {Q.as_lists()}")
            u = [3, 3, 4 - 2 * r, 2 - 2 * r, 1, 1]
            c.check(verify_quotient_eigvec(Q, u, 2 * r - 6), f"r={r}: u not a {2 * r - 6}-eigenvector")
            c.check(is_eigenvector(lift_eigenvector(p, u, Q), 2), f"r={r}: lift not in V_2")
            c.check(prop1_upper_bound(p, u) == (n - 1) * (n - 2) // 2, f"r={r}: bound")


def test_criterion_08_exhaustive_ground_truth():
    expected = {4: 3, 5: 3, 6: 3, 7: 4}
    with Criterion(8, 300.0) as c:
        for n, want in expected.items():
            res = min_negatives_exhaustive(1, n, 2)
            c.check(res.value == want, f"n={n}: got {res.value}, expected {want}")
            c.check(res.witness is not None and verify_witness(res.witness, 1, res.value), f"n={n}: witness")


def test_criterion_09_spectral_identities():
    with Criterion(9, 120.0) as c:
        for n in range(2, 501):
            for w in range(1, n // 2 + 1):
                if binomial(n, w) > 500:
                    break
                for i in range(w + 1):
                    c.check(sphere_identity_holds(i, n, w), f"sphere identity J({n},{w}) i={i}")
        for w in range(1, 7):
            for n in range(w, 61):
                for i in range(1, w + 1):
                    total = sum(eberlein(k, i, w, n) for k in range(w + 1))
                    c.check(total == 0, f"row sum E(i={i}, w={w}, n={n}) = {total}")
        rng = random.Random(2024)
        for n, w in [(6, 2), (7, 3), (8, 3), (8, 4)]:
            for _ in range(200):
                a = [Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in range(n - 1)]
                a.append(-sum(a))
                if not any(a):
                    continue
                c.check(is_eigenvector(inclusion_map(a, w), 1), f"inclusion image on J({n},{w})")


def test_criterion_10_bound_sandwich():
    with Criterion(10, 60.0) as c:
        for n in range(9, 51):
            rep = bounds_report(2, n, 3)
            upper = n * (n - 2) // 2 if n % 2 == 0 else (n - 1) * (n - 2) // 2
            c.check(rep.best_lower <= rep.best_upper, f"n={n}: {rep.best_lower} > {rep.best_upper}")
            c.check(rep.best_lower == 2 * n - 9, f"n={n}: lower {rep.best_lower}")
            c.check(rep.best_upper == upper, f"n={n}: upper {rep.best_upper}")
