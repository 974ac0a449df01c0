"""Exact Gaussian elimination over any of the package's fields.

Entries may be Fractions, number-field elements, or rational functions;
all that is required is +, -, *, / and a zero test.
"""

from __future__ import annotations

from typing import List, Optional, Sequence


def _is_zero(entry) -> bool:
    z = getattr(entry, "is_zero", None)
    if z is not None:
        return z
    return entry == 0


def solve_with_free_zero(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[List]:
    """Solve A*y = b exactly, returning the reduced-echelon solution with all
    free variables set to zero, or None when the system is inconsistent."""
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    nrows = len(rows)
    ncols = len(matrix[0]) if nrows else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, nrows):
            if not _is_zero(rows[i][col]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = rows[rank][col]
        rows[rank] = [entry / inv for entry in rows[rank]]
        for i in range(nrows):
            if i == rank:
                continue
            c = rows[i][col]
            if _is_zero(c):
                continue
            rows[i] = [a - c * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    for i in range(rank, nrows):
        if not _is_zero(rows[i][ncols]):
            return None
    solution = [None] * ncols
    zero = None
    for row, col in zip(rows, pivots):
        solution[col] = row[ncols]
        if zero is None:
            zero = row[ncols] - row[ncols]
    if zero is None:
        # no pivots at all; synthesize a zero from the rhs if possible
        for b in rhs:
            zero = b - b
            break
    for col in range(ncols):
        if solution[col] is None:
            solution[col] = zero
    return solution


def determinant(matrix: Sequence[Sequence]):
    """Determinant by fraction-producing Gaussian elimination with pivoting."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    rows = [list(r) for r in matrix]
    sign_flips = 0
    det = None
    for col in range(n):
        pivot_row = None
        for i in range(col, n):
            if not _is_zero(rows[i][col]):
                pivot_row = i
                break
        if pivot_row is None:
            return rows[0][0] - rows[0][0]  # zero of the entry field
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            sign_flips += 1
        pivot = rows[col][col]
        det = pivot if det is None else det * pivot
        for i in range(col + 1, n):
            c = rows[i][col]
            if _is_zero(c):
                continue
            factor = c / pivot
            rows[i] = [a - factor * b for a, b in zip(rows[i], rows[col])]
    if sign_flips % 2:
        det = -det
    return det


def invert(matrix: Sequence[Sequence]) -> Optional[List[List]]:
    """Exact inverse, or None for a singular matrix."""
    n = len(matrix)
    rows = [list(r) for r in matrix]
    aug = []
    one = None
    for i in range(n):
        for entry in rows[i]:
            if not _is_zero(entry):
                one = entry / entry
                break
        if one is not None:
            break
    if one is None:
        return None
    zero = one - one
    for i in range(n):
        aug.append(rows[i] + [one if j == i else zero for j in range(n)])
    rank = 0
    for col in range(n):
        pivot_row = None
        for i in range(rank, n):
            if not _is_zero(aug[i][col]):
                pivot_row = i
                break
        if pivot_row is None:
            return None
        aug[rank], aug[pivot_row] = aug[pivot_row], aug[rank]
        inv = aug[rank][col]
        aug[rank] = [entry / inv for entry in aug[rank]]
        for i in range(n):
            if i == rank:
                continue
            c = aug[i][col]
            if _is_zero(c):
                continue
            aug[i] = [a - c * b for a, b in zip(aug[i], aug[rank])]
        rank += 1
    return [row[n:] for row in aug]
