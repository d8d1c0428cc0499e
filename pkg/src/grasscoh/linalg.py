"""Exact dense linear algebra over the rationals."""
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Sequence


class SingularMatrixError(ValueError):
    pass


class RatMatrix:
    """Dense matrix of ``Fraction`` entries.

    Zero-sized dimensions are allowed for empty degree slices, where they
    behave as the zero map between zero-dimensional spaces.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Sequence], cols: int = None):
        self.data = [[Fraction(x) for x in row] for row in data]
        self.rows = len(self.data)
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        if any(len(row) != cols for row in self.data):
            raise ValueError("ragged matrix rows")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, entries: Sequence) -> "RatMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        return cls([[col[i] for col in columns] for i in range(rows)], len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.data)
        return f"RatMatrix([{body}], {self.rows}x{self.cols})"

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols_other = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for row in self.data:
            out.append([sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in cols_other])
        return RatMatrix(out, other.cols)

    def apply(self, vec: Sequence) -> List[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((a * Fraction(b) for a, b in zip(row, vec) if a and b), Fraction(0)) for row in self.data]

    def transpose(self) -> "RatMatrix":
        return RatMatrix([list(col) for col in zip(*self.data)] if self.rows else [], self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix([[self.data[i][j] for j in cols] for i in rows], len(cols))


def _integer_rows(m: RatMatrix) -> List[List[int]]:
    out = []
    for row in m.data:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _primitive(row: List[int]) -> List[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
    return [x // g for x in row] if g > 1 else row


def echelon(m: RatMatrix):
    """Fraction-free row echelon form.

    Rows are scaled to integers and eliminated with integer row operations,
    dividing out the content of each row to keep entries small.  Returns the
    integer echelon rows and the pivot columns.
    """
    rows = _integer_rows(m)
    pivots = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            a = rows[i][c]
            if a:
                rows[i] = _primitive([p * x - a * y for x, y in zip(rows[i], rows[r])])
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rref(m: RatMatrix):
    """Reduced row echelon form and pivot columns."""
    rows, pivots = echelon(m)
    red = [[Fraction(x) for x in row] for row in rows]
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        p = red[r][c]
        red[r] = [x / p for x in red[r]]
        for i in range(r):
            a = red[i][c]
            if a:
                red[i] = [x - a * y for x, y in zip(red[i], red[r])]
    return RatMatrix(red, m.cols), pivots


def rank(m: RatMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(echelon(m)[1])


def nullspace(m: RatMatrix) -> List[List[Fraction]]:
    """Basis of ``{x : m x = 0}``; its length is ``cols - rank``."""
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [[Fraction(int(i == j)) for i in range(m.cols)] for j in range(m.cols)]
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [Fraction(0)] * m.cols
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -red.data[r][f]
        basis.append(vec)
    return basis


def inverse(m: RatMatrix) -> RatMatrix:
    if m.rows != m.cols:
        raise SingularMatrixError("only square matrices have inverses")
    n = m.rows
    aug = RatMatrix([row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.data)], 2 * n)
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return RatMatrix([row[n:] for row in red.data], n)


def trace(m: RatMatrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("trace of a non-square matrix")
    return sum((m.data[i][i] for i in range(m.rows)), Fraction(0))
