"""Exact integer/rational linear algebra for lattice computations.

Everything here works over arbitrary-precision rationals; floating point is
never used.  The central normal form is Smith (``U*A*V = S``) with a pinned
pivot rule — smallest absolute value, ties broken by lowest (row, column) —
so that every downstream coordinate choice is reproducible run to run.

>>> u, s, v = smith_normal_form(Matrix([[2, 1], [1, 2]]))
>>> s == Matrix([[1, 0], [0, 3]])
True
>>> u * Matrix([[2, 1], [1, 2]]) * v == s
True
"""

from fractions import Fraction

from .errors import ContainmentViolation


class _Infinite:
    """Singleton returned by lattice_index when the index is not finite."""

    __slots__ = ()

    def __repr__(self):
        return "INFINITE"


INFINITE = _Infinite()


class Matrix:
    """Immutable matrix with exact rational entries.

    Zero-row and zero-column shapes are first class (rank-0 tori use them),
    which is why the constructor takes an explicit ``ncols`` when there are
    no rows to infer it from.
    """

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows, ncols=None):
        converted = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if converted:
            width = len(converted[0])
            if ncols is not None and ncols != width:
                raise ValueError("ncols disagrees with row length")
            for row in converted:
                if len(row) != width:
                    raise ValueError("ragged rows")
            ncols = width
        elif ncols is None:
            raise ValueError("ncols is required for a matrix with no rows")
        self._rows = converted
        self._ncols = ncols

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)], ncols=n)

    @classmethod
    def diagonal(cls, entries):
        entries = list(entries)
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def column(cls, entries):
        return cls([[x] for x in entries], ncols=1)

    @classmethod
    def row(cls, entries):
        entries = list(entries)
        return cls([entries], ncols=len(entries))

    @classmethod
    def from_columns(cls, columns, nrows=None):
        columns = [list(c) for c in columns]
        if columns:
            nrows = len(columns[0])
        elif nrows is None:
            raise ValueError("nrows is required for a matrix with no columns")
        return cls([[col[i] for col in columns] for i in range(nrows)], ncols=len(columns))

    # -- shape and access ---------------------------------------------------

    @property
    def nrows(self):
        return len(self._rows)

    @property
    def ncols(self):
        return self._ncols

    @property
    def shape(self):
        return (len(self._rows), self._ncols)

    def __getitem__(self, key):
        i, j = key
        return self._rows[i][j]

    def entries(self):
        return self._rows

    def row_tuple(self, i):
        return self._rows[i]

    def column_tuple(self, j):
        return tuple(row[j] for row in self._rows)

    def columns(self):
        return [self.column_tuple(j) for j in range(self._ncols)]

    def submatrix(self, row_indices, col_indices):
        row_indices = list(row_indices)
        col_indices = list(col_indices)
        return Matrix(
            [[self._rows[i][j] for j in col_indices] for i in row_indices],
            ncols=len(col_indices),
        )

    # -- predicates ---------------------------------------------------------

    def is_integral(self):
        return all(x.denominator == 1 for row in self._rows for x in row)

    def is_zero(self):
        return all(x == 0 for row in self._rows for x in row)

    @property
    def is_square(self):
        return len(self._rows) == self._ncols

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self._ncols, self._rows))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return Matrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)],
            ncols=self._ncols,
        )

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch in subtraction")
        return Matrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)],
            ncols=self._ncols,
        )

    def __neg__(self):
        return Matrix([[-x for x in row] for row in self._rows], ncols=self._ncols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self._ncols != other.nrows:
                raise ValueError("shape mismatch in multiplication")
            cols = [other.column_tuple(j) for j in range(other.ncols)]
            return Matrix(
                [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._rows],
                ncols=other.ncols,
            )
        return Matrix([[x * Fraction(other) for x in row] for row in self._rows], ncols=self._ncols)

    def __rmul__(self, other):
        return Matrix([[Fraction(other) * x for x in row] for row in self._rows], ncols=self._ncols)

    def transpose(self):
        return Matrix(
            [[self._rows[i][j] for i in range(len(self._rows))] for j in range(self._ncols)],
            ncols=len(self._rows),
        )

    def det(self):
        """Determinant by exact fraction elimination; det of the 0x0 matrix is 1."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self._ncols
        work = [list(row) for row in self._rows]
        sign = 1
        for col in range(n):
            pivot_row = next((i for i in range(col, n) if work[i][col] != 0), None)
            if pivot_row is None:
                return Fraction(0)
            if pivot_row != col:
                work[col], work[pivot_row] = work[pivot_row], work[col]
                sign = -sign
            pivot = work[col][col]
            for i in range(col + 1, n):
                if work[i][col] != 0:
                    factor = work[i][col] / pivot
                    work[i] = [a - factor * b for a, b in zip(work[i], work[col])]
        result = Fraction(sign)
        for i in range(n):
            result *= work[i][i]
        return result

    def inv(self):
        """Exact inverse; raises ValueError when singular."""
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self._ncols
        work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self._rows)]
        for col in range(n):
            pivot_row = next((i for i in range(col, n) if work[i][col] != 0), None)
            if pivot_row is None:
                raise ValueError("matrix is singular")
            work[col], work[pivot_row] = work[pivot_row], work[col]
            pivot = work[col][col]
            work[col] = [x / pivot for x in work[col]]
            for i in range(n):
                if i != col and work[i][col] != 0:
                    factor = work[i][col]
                    work[i] = [a - factor * b for a, b in zip(work[i], work[col])]
        return Matrix([row[n:] for row in work], ncols=n)

    def __repr__(self):
        def fmt(x):
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        body = ", ".join("[" + ", ".join(fmt(x) for x in row) + "]" for row in self._rows)
        return f"Matrix([{body}], ncols={self._ncols})"


def hstack(a, b):
    if a.nrows != b.nrows:
        raise ValueError("row count mismatch in hstack")
    return Matrix(
        [list(r1) + list(r2) for r1, r2 in zip(a.entries(), b.entries())],
        ncols=a.ncols + b.ncols,
    )


def vstack(a, b):
    if a.ncols != b.ncols:
        raise ValueError("column count mismatch in vstack")
    return Matrix(list(a.entries()) + list(b.entries()), ncols=a.ncols)


def block_diagonal(a, b):
    top = hstack(a, Matrix.zeros(a.nrows, b.ncols))
    bottom = hstack(Matrix.zeros(b.nrows, a.ncols), b)
    return vstack(top, bottom)


def xgcd(a, b):
    """Extended Euclid: returns (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g.

    The classical iterative scheme; deterministic, with xgcd(0, 0) = (0, 0, 0).
    """
    if a == 0 and b == 0:
        return 0, 0, 0
    old_r, r = int(a), int(b)
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _require_integral(a, what):
    if not a.is_integral():
        raise ValueError(f"{what} requires an integer matrix")


def smith_normal_form(a):
    """Smith normal form with transforms: returns (U, S, V) with U*A*V = S.

    U and V are unimodular; S is diagonal with nonnegative invariant factors
    dividing in sequence.  Pivot rule: the nonzero entry of smallest absolute
    value in the remaining submatrix, ties broken by lowest (row, col).
    """
    _require_integral(a, "smith_normal_form")
    m, n = a.shape
    s = [[int(x) for x in row] for row in a.entries()]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, factor):
        s[dst] = [a_ + factor * b_ for a_, b_ in zip(s[dst], s[src])]
        u[dst] = [a_ + factor * b_ for a_, b_ in zip(u[dst], u[src])]

    def add_col(dst, src, factor):
        for row in s:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    def negate_row(i):
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # Position phase: bring the preferred pivot to (t, t) and clear its
        # row and column, restarting whenever a smaller remainder shows up.
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if s[i][j] != 0 and (best is None or abs(s[i][j]) < best[0]):
                        best = (abs(s[i][j]), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            if s[t][t] < 0:
                negate_row(t)
            pivot = s[t][t]
            dirty = False
            for i in range(t + 1, m):
                if s[i][t] != 0:
                    q = s[i][t] // pivot
                    if q:
                        add_row(i, t, -q)
                    if s[i][t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if s[t][j] != 0:
                    q = s[t][j] // pivot
                    if q:
                        add_col(j, t, -q)
                    if s[t][j] != 0:
                        dirty = True
            if dirty:
                continue
            # Row and column are clear; enforce divisibility of the rest.
            bad_row = None
            for i in range(t + 1, m):
                if any(s[i][j] % pivot for j in range(t + 1, n)):
                    bad_row = i
                    break
            if bad_row is None:
                break
            add_row(t, bad_row, 1)
        if all(s[i][j] == 0 for i in range(t, m) for j in range(t, n)):
            break
        t += 1

    return (
        Matrix(u, ncols=m),
        Matrix(s, ncols=n),
        Matrix(v, ncols=n),
    )


def snf_rank(s):
    """Number of nonzero diagonal entries of a Smith form."""
    return sum(1 for i in range(min(s.shape)) if s[i, i] != 0)


def invariant_factors(a):
    """Nonzero diagonal entries of the Smith form of ``a``."""
    _, s, _ = smith_normal_form(a)
    return tuple(int(s[i, i]) for i in range(min(s.shape)) if s[i, i] != 0)


def row_hnf(a):
    """Canonical (row-style Hermite) basis of the lattice spanned by the rows.

    Pivots are positive, pivot columns strictly increase, and entries above a
    pivot are reduced into [0, pivot).  Zero rows are dropped, so the result
    is a canonical full-row-rank matrix: two row sets span the same lattice
    iff their forms are equal.
    """
    _require_integral(a, "row_hnf")
    rows = [[int(x) for x in row] for row in a.entries()]
    n = a.ncols
    r = 0
    for col in range(n):
        while True:
            pivot_row = None
            best = None
            for i in range(r, len(rows)):
                if rows[i][col] != 0 and (best is None or abs(rows[i][col]) < best):
                    best = abs(rows[i][col])
                    pivot_row = i
            if pivot_row is None:
                break
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][col] != 0:
                    q = rows[i][col] // rows[r][col]
                    if q:
                        rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][col] != 0:
                        done = False
            if done:
                if rows[r][col] < 0:
                    rows[r] = [-x for x in rows[r]]
                for i in range(r):
                    q = rows[i][col] // rows[r][col]
                    if q:
                        rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                r += 1
                break
    return Matrix(rows[:r], ncols=n)


def column_hnf(a):
    """Canonical basis (as columns) of the lattice spanned by the columns."""
    return row_hnf(a.transpose()).transpose()


def integer_kernel(a):
    """Canonical basis of the saturated lattice {x integral : A*x = 0}.

    The span is computed from the Smith form (last columns of V) and then
    canonicalised, so equal kernels always produce identical matrices.
    """
    _, s, v = smith_normal_form(a)
    r = snf_rank(s)
    n = a.ncols
    basis = v.submatrix(range(n), range(r, n))
    return column_hnf(basis)


def saturate(b):
    """Canonical basis of (rational span of the columns of b) ∩ Z^n."""
    _require_integral(b, "saturate")
    n = b.nrows
    if b.ncols == 0:
        return Matrix.zeros(n, 0)
    u, s, _ = smith_normal_form(b)
    r = snf_rank(s)
    uinv = u.inv()
    return column_hnf(uinv.submatrix(range(n), range(r)))


def lattice_index(sub, sup):
    """Group index [sup : sub] of two column lattices in the same ambient Z^n.

    Returns a positive integer when the index is finite, the INFINITE
    sentinel when sub has strictly smaller rank, and raises
    ContainmentViolation when sub is not a subgroup of sup (including the
    case of vectors lying in the rational span but not in the lattice).
    """
    if sub.nrows != sup.nrows:
        raise ValueError("lattice_index requires a common ambient dimension")
    basis_sup = column_hnf(sup)
    basis_sub = column_hnf(sub)
    if basis_sub.ncols == 0:
        if basis_sup.ncols == 0:
            return 1
        return INFINITE
    coords = rational_solve(basis_sup, basis_sub)
    if coords is None or not coords.is_integral():
        raise ContainmentViolation("first lattice is not a subgroup of the second")
    if basis_sub.ncols < basis_sup.ncols:
        return INFINITE
    index = abs(coords.det())
    return int(index)


def rational_solve(a, b):
    """One exact solution X of A*X = B (free variables set to 0), or None."""
    m, n = a.shape
    if b.nrows != m:
        raise ValueError("shape mismatch in rational_solve")
    k = b.ncols
    work = [list(a.row_tuple(i)) + list(b.row_tuple(i)) for i in range(m)]
    pivot_cols = []
    row = 0
    for col in range(n):
        pivot_row = next((i for i in range(row, m) if work[i][col] != 0), None)
        if pivot_row is None:
            continue
        work[row], work[pivot_row] = work[pivot_row], work[row]
        pivot = work[row][col]
        work[row] = [x / pivot for x in work[row]]
        for i in range(m):
            if i != row and work[i][col] != 0:
                factor = work[i][col]
                work[i] = [x - factor * y for x, y in zip(work[i], work[row])]
        pivot_cols.append(col)
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if any(work[i][n + j] != 0 for j in range(k)):
            return None
    solution = [[Fraction(0)] * k for _ in range(n)]
    for i, col in enumerate(pivot_cols):
        solution[col] = work[i][n:]
    return Matrix(solution, ncols=k)


def integer_solve(a, b):
    """One integral solution X of A*X = B, or None when none exists."""
    _require_integral(a, "integer_solve")
    if not b.is_integral():
        return None
    u, s, v = smith_normal_form(a)
    r = snf_rank(s)
    c = u * b
    m, n = a.shape
    k = b.ncols
    y = [[Fraction(0)] * k for _ in range(n)]
    for i in range(r):
        for j in range(k):
            value = c[i, j] / s[i, i]
            if value.denominator != 1:
                return None
            y[i][j] = value
    for i in range(r, m):
        for j in range(k):
            if c[i, j] != 0:
                return None
    return v * Matrix(y, ncols=k)
