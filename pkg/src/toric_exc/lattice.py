"""Exact integer linear algebra primitives.

Everything in this module runs over arbitrary-precision Python integers;
no floating point appears anywhere.  The matrices involved downstream are
small (ray pairing matrices, boundary matrices of simplicial subcomplexes),
so the implementation favours determinism and auditability over asymptotic
speed: Smith normal form pivots on the smallest-magnitude entry with ties
broken by position, and ranks/determinants use fraction-free (Bareiss)
elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import NotUnimodular


@dataclass(frozen=True)
class IntMatrix:
    """An immutable integer matrix stored as a tuple of row tuples.

    >>> A = IntMatrix.from_rows([[1, 2], [3, 4]])
    >>> (IntMatrix.identity(2) @ A) == A
    True
    >>> A.mul_vec((1, 0))
    (1, 3)
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged rows in matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        r = rows if rows is not None else len(diag)
        c = cols if cols is not None else len(diag)
        return cls(tuple(tuple(diag[i] if i == j and i < len(diag) else 0 for j in range(c)) for i in range(r)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries))) if self.entries else self

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = other.transpose().entries
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries))

    def mul_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        if self.cols != len(v):
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-x for x in r) for r in self.entries))

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)

    def diagonal_entries(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x:4d}" for x in r) for r in self.entries)


@dataclass(frozen=True)
class SNFResult:
    """Smith normal form data: U @ A @ V == D with U, V unimodular and the
    diagonal of D nonnegative, each entry dividing the next."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix


def determinant(A: IntMatrix) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = A.rows
    if n != A.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [list(r) for r in A.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if pivot is None:
                return 0
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A: IntMatrix) -> int:
    """Rank over the rationals, computed exactly (Bareiss elimination)."""
    m, n = A.rows, A.cols
    M = [list(r) for r in A.entries]
    r = 0
    prev = 1
    for j in range(n):
        if r == m:
            break
        pivot = next((i for i in range(r, m) if M[i][j] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        for i in range(r + 1, m):
            for jj in range(j + 1, n):
                M[i][jj] = (M[r][j] * M[i][jj] - M[i][j] * M[r][jj]) // prev
            M[i][j] = 0
        prev = M[r][j]
        r += 1
    return r


def _pivot_position(M: list[list[int]], t: int) -> Optional[tuple[int, int]]:
    # Smallest absolute value in the trailing block, ties by row then column.
    best = None
    best_key = None
    for i in range(t, len(M)):
        for j in range(t, len(M[0])):
            if M[i][j] != 0:
                key = (abs(M[i][j]), i, j)
                if best_key is None or key < best_key:
                    best, best_key = (i, j), key
    return best


def smith_normal_form(A: IntMatrix) -> SNFResult:
    """Smith normal form U @ A @ V == D.

    The pivot rule (smallest magnitude first, ties by position) makes the
    output deterministic for a fixed input.  The identity U @ A @ V == D and
    the divisibility chain are re-verified before returning.
    """
    m, n = A.rows, A.cols
    M = [list(r) for r in A.entries]
    U = [list(r) for r in IntMatrix.identity(m).entries]
    V = [list(r) for r in IntMatrix.identity(n).entries]

    def swap_rows(a, b):
        M[a], M[b] = M[b], M[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    def add_row(src, dst, q):
        # row dst -= q * row src
        M[dst] = [x - q * y for x, y in zip(M[dst], M[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        # col dst -= q * col src
        for row in M:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]

    def clear_at(t):
        while True:
            pos = _pivot_position(M, t)
            if pos is None:
                return False
            pi, pj = pos
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            # Reduce the pivot row and column; a nonzero remainder becomes the
            # new (smaller) pivot on the next pass, so this terminates.
            dirty = False
            for i in range(t + 1, m):
                if M[i][t] != 0:
                    q = M[i][t] // M[t][t]
                    add_row(t, i, q)
                    if M[i][t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j] != 0:
                    q = M[t][j] // M[t][t]
                    add_col(t, j, q)
                    if M[t][j] != 0:
                        dirty = True
            if not dirty:
                return True

    def diagonalize():
        t = 0
        while t < min(m, n):
            if not clear_at(t):
                break
            t += 1
        for i in range(min(m, n)):
            if M[i][i] < 0:
                negate_row(i)

    diagonalize()
    # Enforce the divisibility chain d_i | d_{i+1}: merge an offending pair by
    # a column addition and re-diagonalize.  Each merge shrinks the product of
    # the leading invariant factors, so this terminates.
    def chain_violation():
        for i in range(min(m, n) - 1):
            a, b = M[i][i], M[i + 1][i + 1]
            if b != 0 and (a == 0 or b % a != 0):
                return i
        return None

    while True:
        bad = chain_violation()
        if bad is None:
            break
        add_col(bad + 1, bad, -1)  # col bad += col bad+1
        diagonalize()

    Um, Dm, Vm = IntMatrix.from_rows(U), IntMatrix.from_rows(M), IntMatrix.from_rows(V)
    assert Um @ A @ Vm == Dm, "SNF identity violated"
    diag = Dm.diagonal_entries()
    for i in range(len(diag) - 1):
        assert diag[i + 1] == 0 or (diag[i] != 0 and diag[i + 1] % diag[i] == 0), "divisibility chain violated"
    assert abs(determinant(Um)) == 1 and abs(determinant(Vm)) == 1
    return SNFResult(Um, Dm, Vm)


def unimodular_inverse(A: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1.

    Raises NotUnimodular otherwise.
    """
    if A.rows != A.cols:
        raise NotUnimodular(f"matrix is {A.rows}x{A.cols}, not square")
    d = determinant(A)
    if abs(d) != 1:
        raise NotUnimodular(f"determinant is {d}, not +-1")
    snf = smith_normal_form(A)
    # U A V = I, hence A^{-1} = V U.
    assert snf.D.is_identity()
    inv = snf.V @ snf.U
    assert (A @ inv).is_identity()
    return inv


def solve_integer(A: IntMatrix, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Solve A x == b over the integers; None when no solution exists.

    Membership of b in the integer column span of A, with a deterministic
    witness via Smith normal form back-substitution: write U A V = D, solve
    D y = U b, and return x = V y (free coordinates set to zero).
    """
    if len(b) != A.rows:
        raise ValueError("right-hand side length does not match row count")
    snf = smith_normal_form(A)
    c = snf.U.mul_vec(b)
    n = A.cols
    y = [0] * n
    diag = snf.D.diagonal_entries()
    for i in range(A.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    x = snf.V.mul_vec(y)
    assert A.mul_vec(x) == tuple(int(v) for v in b)
    return x
