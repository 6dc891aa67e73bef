"""Exact rational matrices, row reduction, nullspaces and strict sign feasibility.

Everything runs over :class:`fractions.Fraction`.  Large row reductions are
delegated to python-flint's ``fmpq_mat`` when it is installed; the pure
Python path is kept for small inputs and serves as its cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

try:
    import flint
except ImportError:  # pragma: no cover - flint is a declared dependency
    flint = None

# Row reductions with more entries than this go to flint.
FLINT_THRESHOLD = 400


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or strings")
    return Fraction(x)


class RatMatrix:
    """Dense row-major matrix of Fractions."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        self.rows = [[as_fraction(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for row in self.rows:
            if len(row) != ncols:
                raise ValueError(f"ragged row of length {len(row)}, expected {ncols}")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "RatMatrix":
        return cls([[col[i] for col in cols] for i in range(nrows)], len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.rows]

    def columns(self) -> list[list[Fraction]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.columns(), self.nrows)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return RatMatrix(
                [[_dot(row, col) for col in cols] for row in self.rows], other.ncols
            )
        vec = [as_fraction(x) for x in other]
        if len(vec) != self.ncols:
            raise ValueError(f"shape mismatch {self.shape} @ vector of {len(vec)}")
        return [_dot(row, vec) for row in self.rows]

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"RatMatrix({self.nrows}x{self.ncols}: [{body}])"


def _dot(a, b) -> Fraction:
    s = Fraction(0)
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def _rref_python(M: RatMatrix) -> tuple[RatMatrix, list[int]]:
    rows = [list(r) for r in M.rows]
    pivots = []
    prow = 0
    for col in range(M.ncols):
        if prow == M.nrows:
            break
        pr = next((r for r in range(prow, M.nrows) if rows[r][col] != 0), None)
        if pr is None:
            continue
        rows[prow], rows[pr] = rows[pr], rows[prow]
        piv = rows[prow][col]
        if piv != 1:
            rows[prow] = [x / piv for x in rows[prow]]
        pivot_row = rows[prow]
        nz = [j for j in range(col, M.ncols) if pivot_row[j] != 0]
        for r in range(M.nrows):
            if r == prow:
                continue
            f = rows[r][col]
            if f == 0:
                continue
            row = rows[r]
            for j in nz:
                row[j] -= f * pivot_row[j]
        pivots.append(col)
        prow += 1
    return RatMatrix(rows, M.ncols), pivots


def _rref_flint(M: RatMatrix) -> tuple[RatMatrix, list[int]]:
    fm = flint.fmpq_mat(M.nrows, M.ncols, [x for row in M.rows for x in _to_fmpq_row(row)])
    R, rank = fm.rref()
    rows = [
        [Fraction(int(R[i, j].p), int(R[i, j].q)) for j in range(M.ncols)]
        for i in range(M.nrows)
    ]
    pivots = []
    for i in range(rank):
        pivots.append(next(j for j in range(M.ncols) if rows[i][j] != 0))
    return RatMatrix(rows, M.ncols), pivots


def _to_fmpq_row(row):
    return [flint.fmpq(x.numerator, x.denominator) for x in row]


def rref(M: RatMatrix, backend: str = "auto") -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    ``backend`` is ``"python"``, ``"flint"`` or ``"auto"`` (flint above
    FLINT_THRESHOLD entries).
    """
    if M.nrows == 0 or M.ncols == 0:
        return RatMatrix(M.rows, M.ncols), []
    if backend == "auto":
        use_flint = flint is not None and M.nrows * M.ncols > FLINT_THRESHOLD
    elif backend == "flint":
        if flint is None:
            raise RuntimeError("python-flint is not installed")
        use_flint = True
    elif backend == "python":
        use_flint = False
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return _rref_flint(M) if use_flint else _rref_python(M)


def rank_of(M: RatMatrix, backend: str = "auto") -> int:
    return len(rref(M, backend)[1])


def nullspace(M: RatMatrix, backend: str = "auto") -> RatMatrix:
    """Basis of {x : M x = 0} as the columns of an ncols x nullity matrix."""
    R, pivots = rref(M, backend)
    pivset = set(pivots)
    free = [j for j in range(M.ncols) if j not in pivset]
    cols = []
    for f in free:
        vec = [Fraction(0)] * M.ncols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -R.rows[i][f]
        cols.append(vec)
    return RatMatrix.from_columns(cols, M.ncols) if cols else RatMatrix.zeros(M.ncols, 0)


def integer_nullspace(rows: Sequence[Sequence[int]], ncols: int, backend: str = "auto") -> list[list[int]]:
    """Nullspace basis of an integer matrix as primitive integer vectors.

    Each vector is the primitive scaling of the RREF basis vector for one
    free column, so both backends return identical output.
    """
    use_flint = backend == "flint" or (
        backend == "auto" and flint is not None and len(rows) * ncols > FLINT_THRESHOLD
    )
    if not use_flint:
        B = nullspace(RatMatrix(rows, ncols), backend="python")
        return [primitive_integer(col) for col in B.columns()]
    if flint is None:
        raise RuntimeError("python-flint is not installed")
    fm = flint.fmpz_mat([list(map(int, r)) for r in rows]) if rows else flint.fmpz_mat(0, ncols)
    R, den, rank = fm.rref()
    flat = [int(x) for x in R.entries()[: rank * ncols]]
    R = [flat[i * ncols:(i + 1) * ncols] for i in range(rank)]
    pivots = [next(j for j in range(ncols) if R[i][j] != 0) for i in range(rank)]
    pivset = set(pivots)
    same_pivot = all(R[i][p] == R[0][pivots[0]] for i, p in enumerate(pivots)) if rank else True
    d = R[0][pivots[0]] if rank else 1
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        # row i reads  R[i][p_i] x_{p_i} + R[i][f] x_f + ... = 0
        if same_pivot:
            vec = [0] * ncols
            vec[f] = d
            for i, p in enumerate(pivots):
                vec[p] = -R[i][f]
        else:
            vec = [Fraction(0)] * ncols
            vec[f] = Fraction(1)
            for i, p in enumerate(pivots):
                if R[i][f]:
                    vec[p] = Fraction(-R[i][f], R[i][p])
        out.append(primitive_integer(vec))
    return out


def primitive_integer(vec: Sequence, orient: bool = True) -> list[int]:
    """Scale a rational vector to coprime integers.

    With ``orient`` the first nonzero entry is made positive; without it
    only positive scalings are used, so every sign is kept.
    """
    if all(isinstance(x, int) for x in vec):
        ints = list(vec)
    else:
        fr = [as_fraction(x) for x in vec]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    return ints if first > 0 or not orient else [-x for x in ints]


# ---------------------------------------------------------------------------
# strict sign feasibility


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _normalize_signs(signs) -> list[int]:
    out = []
    for s in signs:
        if s in (1, "+"):
            out.append(1)
        elif s in (-1, "-"):
            out.append(-1)
        else:
            raise ValueError(f"sign must be +1/-1 or '+'/'-', got {s!r}")
    return out


def _simplex_max(T: list[list[Fraction]], basis: list[int], nvars: int, stop):
    """Bland's-rule primal simplex on a tableau ``[A | b]`` with objective last.

    The objective row holds reduced costs ``c_j`` (maximize) and ``-z`` in the
    last column.  ``stop(T, basis)`` may end the run early.  Returns
    ``"optimal"``, ``"unbounded"`` or ``"stopped"``.
    """
    m = len(T) - 1
    obj = T[m]
    while True:
        if stop is not None and stop(T, basis):
            return "stopped"
        enter = next((j for j in range(nvars) if obj[j] > 0), None)
        if enter is None:
            return "optimal"
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best, leave = ratio, i
        if leave is None:
            return "unbounded"
        prow = T[leave]
        piv = prow[enter]
        if piv != 1:
            prow = T[leave] = [x / piv for x in prow]
        nz = [j for j, x in enumerate(prow) if x != 0]
        for i in range(m + 1):
            if i == leave:
                continue
            row = T[i]
            f = row[enter]
            if f == 0:
                continue
            for j in nz:
                row[j] -= f * prow[j]
        basis[leave] = enter


class Feasibility:
    """Outcome of a strict sign-feasibility solve.

    Exactly one of ``witness`` (a vector c with the requested strict signs)
    and ``certificate`` (y >= 0, y != 0 with sum_r y_r s_r A_r = 0, which
    rules out every such c) is set.  Both are checked exactly on creation.
    """

    __slots__ = ("witness", "certificate")

    def __init__(self, witness=None, certificate=None):
        self.witness = witness
        self.certificate = certificate

    @property
    def feasible(self) -> bool:
        return self.witness is not None

    def support(self) -> list[int]:
        """Rows carrying the infeasibility certificate."""
        if self.certificate is None:
            return []
        return [r for r, y in enumerate(self.certificate) if y != 0]


def check_witness(A: RatMatrix, signs: Sequence, c: Sequence) -> bool:
    sg = _normalize_signs(signs)
    return all(_sign(y) == s for y, s in zip(A @ c, sg))


def check_certificate(A: RatMatrix, signs: Sequence, y: Sequence) -> bool:
    sg = _normalize_signs(signs)
    if len(y) != A.nrows or any(v < 0 for v in y) or not any(y):
        return False
    combo = [Fraction(0)] * A.ncols
    for r, yr in enumerate(y):
        if yr:
            f = yr * sg[r]
            for j, a in enumerate(A.rows[r]):
                if a:
                    combo[j] += f * a
    return not any(combo)


def solve_strict(A: RatMatrix, signs: Sequence, early_stop: bool = True) -> Feasibility:
    """Decide the strict system sign((A c)_r) = signs_r for all rows exactly.

    Solves the LP  max t  s.t.  signs_r (A c)_r >= t,  -1 <= c_j <= 1  with
    Bland's rule, writing c = p - q and 0 <= p, q <= 1 so the origin is a
    feasible start.  Any basic solution with t > 0 certifies feasibility, so
    by default the run stops there.  At optimum t = 0 the duals of the
    margin rows form the infeasibility certificate.
    """
    sg = _normalize_signs(signs)
    if len(sg) != A.nrows:
        raise ValueError(f"{len(sg)} signs for {A.nrows} rows")
    d = A.ncols
    if A.nrows == 0:
        return Feasibility(witness=[Fraction(0)] * d)
    if d == 0:
        return Feasibility(certificate=[Fraction(1)] + [Fraction(0)] * (A.nrows - 1))
    # columns: p_0..p_{d-1}, q_0..q_{d-1}, t, then one slack per row
    nvars = 2 * d + 1
    nrows = A.nrows + 2 * d
    width = nvars + nrows + 1
    zero, one = Fraction(0), Fraction(1)
    T = []
    for r, row in enumerate(A.rows):
        line = [zero] * width
        s = sg[r]
        for j, a in enumerate(row):
            if a:
                line[j] = -s * a
                line[d + j] = s * a
        line[2 * d] = one
        line[nvars + r] = one
        T.append(line)
    for j in range(2 * d):
        line = [zero] * width
        line[j] = one
        line[nvars + A.nrows + j] = one
        line[-1] = one
        T.append(line)
    obj = [zero] * width
    obj[2 * d] = one
    T.append(obj)
    basis = list(range(nvars, nvars + nrows))
    tcol = 2 * d

    def t_value(T, basis):
        for i, b in enumerate(basis):
            if b == tcol:
                return T[i][-1]
        return zero

    stop = (lambda T, basis: t_value(T, basis) > 0) if early_stop else None
    status = _simplex_max(T, basis, nvars + nrows, stop)
    if t_value(T, basis) > 0:
        x = [zero] * nvars
        for i, b in enumerate(basis):
            if b < nvars:
                x[b] = T[i][-1]
        c = [x[j] - x[d + j] for j in range(d)]
        if not check_witness(A, sg, c):
            raise AssertionError("simplex witness failed the exact sign recheck")
        return Feasibility(witness=c)
    if status != "optimal":
        raise AssertionError(f"margin LP ended with status {status!r} at t <= 0")
    y = [-T[-1][nvars + r] for r in range(A.nrows)]
    if not check_certificate(A, sg, y):
        raise AssertionError("simplex duals failed the exact infeasibility recheck")
    return Feasibility(certificate=y)


def strict_feasibility(A: RatMatrix, signs: Sequence, early_stop: bool = True):
    """Return an exact c with sign((A c)_r) = signs_r for every row, or None."""
    return solve_strict(A, signs, early_stop).witness
