import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jel.exactlinalg import (
    RatMatrix,
    check_certificate,
    check_witness,
    integer_nullspace,
    nullspace,
    primitive_integer,
    rank_of,
    rref,
    solve_strict,
    strict_feasibility,
)

small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_dim=5):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))
    return RatMatrix(rows, n)


def test_rref_examples():
    I = RatMatrix.identity(3)
    R, piv = rref(I)
    assert R == I and piv == [0, 1, 2]
    Z = RatMatrix.zeros(2, 3)
    R, piv = rref(Z)
    assert R == Z and piv == []
    assert rank_of(RatMatrix([[1, 2], [2, 4]])) == 1


def test_nullspace_examples():
    assert nullspace(RatMatrix.identity(3)).ncols == 0
    assert nullspace(RatMatrix.zeros(2, 2)).ncols == 2
    K = nullspace(RatMatrix([[1, 1, 1]]))
    assert K.ncols == 2
    for col in K.columns():
        assert sum(col) == 0


@given(matrices())
def test_rank_nullity_and_kernel(M):
    K = nullspace(M)
    r = rank_of(M)
    assert K.ncols + r == M.ncols
    for col in K.columns():
        assert M @ col == [0] * M.nrows
    if K.ncols:
        assert rank_of(K) == K.ncols


@given(matrices())
def test_rref_idempotent(M):
    R, piv = rref(M, backend="python")
    R2, piv2 = rref(R, backend="python")
    assert R2 == R and piv2 == piv


@given(matrices(max_dim=7))
def test_flint_and_python_backends_agree(M):
    assert rref(M, backend="python") == rref(M, backend="flint")
    ints = [[int(x) for x in row] for row in M.rows]
    assert integer_nullspace(ints, M.ncols, "python") == integer_nullspace(ints, M.ncols, "flint")


def test_primitive_integer():
    assert primitive_integer([Fraction(1, 2), Fraction(-1, 3)]) == [3, -2]
    assert primitive_integer([-2, 4]) == [1, -2]
    assert primitive_integer([-2, 4], orient=False) == [-1, 2]
    assert primitive_integer([0, 0]) == [0, 0]


def test_strict_feasibility_examples():
    assert strict_feasibility(RatMatrix([[1], [-1]]), ["+", "+"]) is None
    c = strict_feasibility(RatMatrix([[1]]), ["-"])
    assert c is not None and c[0] < 0
    assert strict_feasibility(RatMatrix([[1], [1], [1]]), [1, 1, -1]) is None


def test_infeasible_answers_carry_certificates():
    A = RatMatrix([[1, 0], [0, 1], [-1, -1]])
    res = solve_strict(A, [1, 1, 1])
    assert not res.feasible
    assert check_certificate(A, [1, 1, 1], res.certificate)
    assert res.support() == [0, 1, 2]


def brute_sign_patterns(A, grid=range(-3, 4)):
    """Sign patterns realized by integer c on a small grid (a subset of all)."""
    seen = set()
    for c in itertools.product(grid, repeat=A.ncols):
        vals = A @ list(c)
        if all(v != 0 for v in vals):
            seen.add(tuple(1 if v > 0 else -1 for v in vals))
    return seen


@pytest.mark.parametrize("rows", [
    [[1, 0], [0, 1], [1, 1], [1, -1]],
    [[1, 2], [2, -1], [-1, 1], [3, 1], [1, -3]],
    [[1, 1, 0], [0, 1, 1], [1, 0, 1], [1, -1, 1]],
])
def test_feasibility_matches_grid_enumeration(rows):
    A = RatMatrix(rows)
    realized = brute_sign_patterns(A)
    for signs in itertools.product([1, -1], repeat=A.nrows):
        res = solve_strict(A, signs)
        if res.feasible:
            assert check_witness(A, signs, res.witness)
        else:
            assert check_certificate(A, signs, res.certificate)
        if signs in realized:
            assert res.feasible


@given(matrices(max_dim=4), st.data())
def test_solver_answers_are_always_certified(M, data):
    signs = data.draw(st.lists(st.sampled_from([1, -1]), min_size=M.nrows, max_size=M.nrows))
    res = solve_strict(M, signs)
    if res.feasible:
        assert check_witness(M, signs, res.witness)
        assert all(-1 <= x <= 1 for x in res.witness)
    else:
        assert check_certificate(M, signs, res.certificate)
    full = solve_strict(M, signs, early_stop=False)
    assert full.feasible == res.feasible


def test_dimension_checks():
    with pytest.raises(ValueError):
        RatMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        RatMatrix([[1, 2]]) @ [1, 2, 3]
    with pytest.raises(ValueError):
        strict_feasibility(RatMatrix([[1]]), [1, 1])
    with pytest.raises(TypeError):
        RatMatrix([[0.5]])
