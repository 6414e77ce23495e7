"""Exact dense linear algebra over the coefficient rings of :mod:`tlbsw.qfield`.

Matrices are lists of rows.  Determinants and ranks use fraction-free
(Bareiss) elimination: over Laurent polynomials every division is exact, so
no gcd is ever taken; over fields the same code runs with ordinary division.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from typing import Any

from .qfield import GaussRat, LaurentPoly, PoleError, RatFunc, as_ratfunc, eval_point

Matrix = list[list[Any]]

__all__ = [
    "Matrix",
    "det",
    "rank",
    "matmul",
    "matadd",
    "matsub",
    "matscale",
    "identity_matrix",
    "zero_matrix",
    "is_zero_matrix",
    "transpose",
    "EchelonSpan",
    "map_matrix",
    "rank_at_point",
    "solve",
]


def _ring_view(M: Sequence[Sequence[Any]]) -> tuple[Matrix, Callable[[Any, Any], Any], Any]:
    """Pick the cheapest exact domain containing all entries."""
    flat = [x for row in M for x in row]
    if flat and all(isinstance(x, RatFunc) and x.is_laurent() for x in flat):
        return [[x.num for x in row] for row in M], LaurentPoly.exact_div, LaurentPoly.const(1)
    if flat and all(isinstance(x, (RatFunc, int)) for x in flat):
        return [[as_ratfunc(x) for x in row] for row in M], lambda a, b: a / b, as_ratfunc(1)
    if flat and all(isinstance(x, (GaussRat, int)) for x in flat):
        return [[GaussRat.coerce(x) for x in row] for row in M], lambda a, b: a / b, GaussRat(1)
    return [list(row) for row in M], lambda a, b: a / b, 1


def _back(x: Any) -> Any:
    return RatFunc.from_laurent(x) if isinstance(x, LaurentPoly) else x


def _eliminate(A: Matrix, div: Callable[[Any, Any], Any], one: Any, want_det: bool) -> tuple[int, Any]:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    prev = one
    r = 0
    sign = 1
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            if want_det:
                return 0, one * 0
            continue
        if p != r:
            A[p], A[r] = A[r], A[p]
            sign = -sign
        piv = A[r][c]
        prow = A[r]
        for i in range(r + 1, rows):
            row = A[i]
            lead = row[c]
            if lead:
                for j in range(c + 1, cols):
                    row[j] = div(piv * row[j] - lead * prow[j], prev)
            else:
                for j in range(c + 1, cols):
                    if row[j]:
                        row[j] = div(piv * row[j], prev)
            row[c] = one * 0
        prev = piv
        r += 1
        if r == rows:
            break
    if want_det:
        return r, prev * sign
    return r, None


def det(M: Sequence[Sequence[Any]]) -> Any:
    """Determinant by Bareiss elimination."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return as_ratfunc(1)
    A, div, one = _ring_view(M)
    r, d = _eliminate(A, div, one, want_det=True)
    if r < n:
        d = one * 0
    return _back(d)


def rank(M: Sequence[Sequence[Any]]) -> int:
    if not M or not M[0]:
        return 0
    A, div, one = _ring_view(M)
    return _eliminate(A, div, one, want_det=False)[0]


def rank_at_point(M: Sequence[Sequence[Any]], s0: GaussRat, Q0: GaussRat) -> int | None:
    """Rank after evaluating at ``(s0, Q0)``; ``None`` if an entry has a pole there."""
    try:
        A = [[eval_point(x, s0, Q0) if isinstance(x, RatFunc) else GaussRat.coerce(x) for x in row] for row in M]
    except PoleError:
        return None
    return rank(A)


def solve(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]]) -> Matrix:
    """``X`` with ``A X = B`` for square invertible ``A`` over a field (Gauss-Jordan)."""
    n = len(A)
    m = len(B[0]) if B else 0
    W = [list(A[i]) + list(B[i]) for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if W[i][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        W[c], W[p] = W[p], W[c]
        inv = W[c][c].inverse() if hasattr(W[c][c], "inverse") else 1 / W[c][c]
        W[c] = [x * inv if x else x for x in W[c]]
        for i in range(n):
            f = W[i][c]
            if i != c and f:
                W[i] = [x - f * y if y else x for x, y in zip(W[i], W[c])]
    return [row[n : n + m] for row in W]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(B[0]) if B else 0
    k = len(B)
    out = []
    for i in range(n):
        Ai = A[i]
        row = [None] * m
        nz = [(t, Ai[t]) for t in range(k) if Ai[t]]
        for j in range(m):
            acc = None
            for t, a in nz:
                b = B[t][j]
                if b:
                    acc = a * b if acc is None else acc + a * b
            row[j] = acc if acc is not None else _zero_like(A, B)
        out.append(row)
    return out


def _zero_like(A: Matrix, B: Matrix) -> Any:
    for M in (A, B):
        for row in M:
            for x in row:
                return x * 0
    return 0


def matadd(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matsub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matscale(A: Matrix, c: Any) -> Matrix:
    return [[a * c for a in row] for row in A]


def map_matrix(A: Matrix, fn: Callable[[Any], Any]) -> Matrix:
    return [[fn(a) for a in row] for row in A]


def identity_matrix(n: int, one: Any) -> Matrix:
    zero = one * 0
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zero_matrix(n: int, m: int, zero: Any) -> Matrix:
    return [[zero] * m for _ in range(n)]


def is_zero_matrix(A: Matrix) -> bool:
    return not any(x for row in A for x in row)


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


class EchelonSpan:
    """Incrementally maintained row-echelon basis of a span over a field."""

    def __init__(self, length: int) -> None:
        self.length = length
        self.rows: list[list[Any]] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[Any]) -> list[Any]:
        w = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                for j in range(p, self.length):
                    if row[j]:
                        w[j] = w[j] - c * row[j]
        return w

    def add(self, v: Sequence[Any]) -> bool:
        """Insert ``v``; return True iff it enlarged the span."""
        w = self.reduce(v)
        p = next((j for j in range(self.length) if w[j]), None)
        if p is None:
            return False
        inv = 1 / w[p] if not isinstance(w[p], (GaussRat, RatFunc)) else w[p].inverse()
        w = [x * inv if x else x for x in w]
        for row in self.rows:
            c = row[p]
            if c:
                for j in range(p, self.length):
                    if w[j]:
                        row[j] = row[j] - c * w[j]
        self.rows.append(w)
        self.pivots.append(p)
        return True

    def contains(self, v: Sequence[Any]) -> bool:
        return not any(self.reduce(v))
