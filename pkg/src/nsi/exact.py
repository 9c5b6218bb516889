"""Exact rational vectors and matrices.

Scalars are :class:`fractions.Fraction` (aliased ``Rat``).  Vectors and
matrices are small immutable wrappers around tuples of fractions; they are
meant for intersection matrices of a few dozen rows, not for bulk numerics.

Elimination is fraction-free (Bareiss) on row-scaled integer copies, and
signatures are computed by symmetric congruence, never by eigenvalues.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotSymmetric, SingularMatrix

Rat = Fraction


def as_rat(x) -> Fraction:
    """Coerce ints, fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def parse_rat(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rat(x, always_den: bool = False) -> str:
    """Render as ``"num/den"``; the denominator is dropped when it is 1
    unless ``always_den`` is set."""
    x = as_rat(x)
    if x.denominator == 1 and not always_den:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class QVector:
    __slots__ = ("_e",)

    def __init__(self, entries: Iterable = ()):
        self._e = tuple(as_rat(x) for x in entries)

    @classmethod
    def zeros(cls, n: int) -> "QVector":
        return cls([0] * n)

    @classmethod
    def unit(cls, n: int, i: int) -> "QVector":
        return cls([1 if j == i else 0 for j in range(n)])

    @property
    def entries(self) -> tuple:
        return self._e

    def __len__(self):
        return len(self._e)

    def __iter__(self):
        return iter(self._e)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return QVector(self._e[i])
        return self._e[i]

    def __eq__(self, other):
        if isinstance(other, QVector):
            return self._e == other._e
        if isinstance(other, (list, tuple)):
            return len(other) == len(self._e) and all(a == b for a, b in zip(self._e, other))
        return NotImplemented

    def __hash__(self):
        return hash(self._e)

    def __repr__(self):
        return "QVector([" + ", ".join(format_rat(x) for x in self._e) + "])"

    def _check(self, other):
        if len(other) != len(self):
            raise DimensionMismatch(f"vector lengths {len(self)} and {len(other)}")

    def __add__(self, other):
        other = other if isinstance(other, QVector) else QVector(other)
        self._check(other)
        return QVector(a + b for a, b in zip(self._e, other._e))

    __radd__ = __add__

    def __sub__(self, other):
        other = other if isinstance(other, QVector) else QVector(other)
        self._check(other)
        return QVector(a - b for a, b in zip(self._e, other._e))

    def __rsub__(self, other):
        return QVector(other) - self

    def __neg__(self):
        return QVector(-a for a in self._e)

    def __mul__(self, scalar):
        s = as_rat(scalar)
        return QVector(s * a for a in self._e)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = as_rat(scalar)
        return QVector(a / s for a in self._e)

    def dot(self, other) -> Fraction:
        other = other if isinstance(other, QVector) else QVector(other)
        self._check(other)
        return sum((a * b for a, b in zip(self._e, other._e)), Fraction(0))

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self._e)

    def to_ints(self) -> tuple:
        if not self.is_integral():
            raise ValueError("vector has non-integral entries")
        return tuple(a.numerator for a in self._e)

    def denominator(self) -> int:
        """lcm of the entry denominators (1 for the empty vector)."""
        return lcm(1, *(a.denominator for a in self._e))


class QMatrix:
    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(as_rat(x) for x in r) for r in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise DimensionMismatch("ragged matrix rows")
        self._rows = data
        self.rows = len(data)
        self.cols = ncols

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "QMatrix":
        return cls([[0] * c for _ in range(r)])

    @classmethod
    def diag(cls, entries: Sequence) -> "QMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def entries(self) -> tuple:
        return self._rows

    def row(self, i: int) -> QVector:
        return QVector(self._rows[i])

    def col(self, j: int) -> QVector:
        return QVector(r[j] for r in self._rows)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rat(x) for x in r) + "]" for r in self._rows)
        return f"QMatrix([{body}])"

    def tolist(self) -> list:
        return [list(r) for r in self._rows]

    @property
    def T(self) -> "QMatrix":
        return QMatrix(zip(*self._rows)) if self.rows else QMatrix([])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        n = self.rows
        return all(self._rows[i][j] == self._rows[j][i] for i in range(n) for j in range(i + 1, n))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._rows for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> "QMatrix":
        cols = rows if cols is None else cols
        return QMatrix([[self._rows[i][j] for j in cols] for i in rows])

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        return QMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-1) * other

    def __mul__(self, scalar):
        s = as_rat(scalar)
        return QMatrix([[s * a for a in r] for r in self._rows])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, QVector):
            if len(other) != self.cols:
                raise DimensionMismatch(f"{self.rows}x{self.cols} matrix times length-{len(other)} vector")
            return QVector(sum((a * b for a, b in zip(r, other)), Fraction(0)) for r in self._rows)
        if isinstance(other, QMatrix):
            if other.rows != self.cols:
                raise DimensionMismatch("inner dimensions differ")
            cols = list(zip(*other._rows))
            return QMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self._rows])
        return NotImplemented

    def bilinear(self, x, y) -> Fraction:
        """x^T M y."""
        x = x if isinstance(x, QVector) else QVector(x)
        y = y if isinstance(y, QVector) else QVector(y)
        return x.dot(self @ y)


def _as_matrix(M) -> QMatrix:
    return M if isinstance(M, QMatrix) else QMatrix(M)


def _integer_rows(rows) -> tuple[list[list[int]], list[int]]:
    """Scale every row to integers; returns the scaled rows and the factors."""
    out, scales = [], []
    for r in rows:
        s = lcm(1, *(x.denominator for x in r))
        out.append([int(x * s) for x in r])
        scales.append(s)
    return out, scales


def _bareiss(a: list[list[int]], ncols: int, pivoting: bool = True):
    """In-place fraction-free forward elimination over the first ``ncols``
    columns.  Returns (pivot columns, row-swap parity, last pivot).

    Without pivoting the k-th pivot is the k-th leading principal minor; the
    elimination stops at the first zero pivot in that mode.
    """
    n = len(a)
    prev = 1
    sign = 1
    pivcols = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        p = None
        if a[r][c] != 0:
            p = r
        elif pivoting:
            for i in range(r + 1, n):
                if a[i][c] != 0:
                    p = i
                    break
        if p is None:
            if not pivoting:
                break
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, n):
            ai = a[i]
            f = ai[c]
            row_r = a[r]
            for j in range(len(ai)):
                # exact: Sylvester's identity guarantees divisibility
                ai[j] = (piv * ai[j] - f * row_r[j]) // prev
        prev = piv
        pivcols.append(c)
        r += 1
    return pivcols, sign, prev


def det(M) -> Fraction:
    """Determinant by Bareiss elimination on a row-scaled integer copy."""
    M = _as_matrix(M)
    if not M.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return Fraction(1)
    a, scales = _integer_rows(M.entries)
    pivcols, sign, last = _bareiss(a, n)
    if len(pivcols) < n:
        return Fraction(0)
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(sign * last, denom)


def rank(M) -> int:
    M = _as_matrix(M)
    if M.rows == 0 or M.cols == 0:
        return 0
    a, _ = _integer_rows(M.entries)
    pivcols, _, _ = _bareiss(a, M.cols)
    return len(pivcols)


def solve(M, b) -> QVector:
    """Solve M x = b for square nonsingular M (fraction-free forward pass,
    exact back substitution)."""
    M = _as_matrix(M)
    b = b if isinstance(b, QVector) else QVector(b)
    if not M.is_square():
        raise DimensionMismatch("solve needs a square matrix")
    n = M.rows
    if len(b) != n:
        raise DimensionMismatch(f"matrix has {n} rows, right-hand side has {len(b)} entries")
    if n == 0:
        return QVector()
    aug, _ = _integer_rows([list(r) + [bi] for r, bi in zip(M.entries, b)])
    pivcols, _, _ = _bareiss(aug, n)
    if len(pivcols) < n:
        raise SingularMatrix("determinant is zero")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * x[j]
        x[i] = acc / aug[i][i]
    return QVector(x)


def solve_symmetric(M, b) -> QVector:
    """Solve M x = b for a symmetric nonsingular M; no rounding anywhere."""
    M = _as_matrix(M)
    if not M.is_symmetric():
        raise NotSymmetric("solve_symmetric needs a symmetric matrix")
    return solve(M, b)


def leading_minors(M) -> list[Fraction]:
    """Leading principal minors det M_1, ..., det M_n.

    The list is truncated after the first zero minor (later minors are then
    irrelevant for definiteness tests)."""
    M = _as_matrix(M)
    n = M.rows
    a, scales = _integer_rows(M.entries)
    # Bareiss without pivoting: pivot k equals the k-th leading minor of the
    # scaled matrix.
    minors = []
    prev = 1
    denom = 1
    for k in range(n):
        piv = a[k][k]
        denom *= scales[k]
        minors.append(Fraction(piv, denom))
        if piv == 0:
            break
        for i in range(k + 1, n):
            f = a[i][k]
            for j in range(n):
                a[i][j] = (piv * a[i][j] - f * a[k][j]) // prev
        prev = piv
    return minors


def first_non_negative_minor(M) -> int | None:
    """1-based index k of the first leading minor with sign != (-1)^k, or
    None when M is negative definite."""
    M = _as_matrix(M)
    if not M.is_symmetric():
        raise NotSymmetric("definiteness test needs a symmetric matrix")
    minors = leading_minors(M)
    for k, m in enumerate(minors, start=1):
        if m == 0 or (m > 0) != (k % 2 == 0):
            return k
    return None


def is_negative_definite(M) -> bool:
    return first_non_negative_minor(M) is None


def signature(M) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric matrix.

    Symmetric congruence over Q: a nonzero diagonal pivot is split off by its
    Schur complement; when every remaining diagonal entry is zero but some
    a_ij is not, the 2x2 block [[0, c], [c, 0]] is split off instead and
    counts as one positive plus one negative direction.
    """
    M = _as_matrix(M)
    if not M.is_symmetric():
        raise NotSymmetric("signature needs a symmetric matrix")
    a = [list(r) for r in M.entries]
    pos = neg = 0
    active = list(range(M.rows))
    while active:
        p = next((i for i in active if a[i][i] != 0), None)
        if p is not None:
            d = a[p][p]
            active.remove(p)
            for k in active:
                if a[k][p] != 0:
                    f = a[k][p] / d
                    for l in active:
                        a[k][l] -= f * a[p][l]
            if d > 0:
                pos += 1
            else:
                neg += 1
            continue
        pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        c = a[i][j]
        active.remove(i)
        active.remove(j)
        # Schur complement of [[0, c], [c, 0]]
        ki = {k: a[k][i] for k in active}
        kj = {k: a[k][j] for k in active}
        for k in active:
            for l in active:
                a[k][l] -= (ki[k] * kj[l] + kj[k] * ki[l]) / c
        pos += 1
        neg += 1
    zero = M.rows - pos - neg
    return pos, neg, zero


def kernel(M) -> list[QVector]:
    """Basis of the right null space of M over Q (reduced row echelon)."""
    M = _as_matrix(M)
    rows = [list(r) for r in M.entries]
    ncols = M.cols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fcol]
        basis.append(QVector(v))
    return basis
