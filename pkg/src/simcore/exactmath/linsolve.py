"""Exact dense linear solving over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .rational import as_fraction


class LinearSystemError(ArithmeticError):
    pass


class UnderdeterminedSystemError(LinearSystemError):
    def __init__(self, rank: int, columns: int):
        super().__init__(f"underdetermined: rank {rank} < {columns} unknowns")
        self.rank = rank
        self.columns = columns


class InconsistentSystemError(LinearSystemError):
    """Raised when no vector satisfies every row; ``row`` is a violated row index."""

    def __init__(self, row: int, residual: Fraction):
        super().__init__(f"inconsistent system: row {row} has residual {residual}")
        self.row = row
        self.residual = residual


def _height(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def solve_linear_exact(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``A x = b`` exactly for a full-column-rank, possibly overdetermined ``A``.

    The surplus rows act as checks: every row of the original system is
    verified against the returned solution.
    """
    rows = [[as_fraction(v) for v in row] for row in A]
    rhs = [as_fraction(v) for v in b]
    if len(rows) != len(rhs):
        raise ValueError("row count of A and length of b differ")
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    if ncols == 0:
        raise ValueError("no unknowns")

    aug = [r + [v] for r, v in zip(rows, rhs)]
    pivot_rows: list[int] = []
    free = list(range(len(aug)))
    for col in range(ncols):
        candidates = [r for r in free if aug[r][col]]
        if not candidates:
            continue
        # simplest rational pivot keeps entry growth down
        pr = min(candidates, key=lambda r: (_height(aug[r][col]), r))
        free.remove(pr)
        prow = aug[pr]
        inv = 1 / prow[col]
        for k in range(col, ncols + 1):
            prow[k] *= inv
        for r in range(len(aug)):
            if r == pr:
                continue
            factor = aug[r][col]
            if factor:
                row = aug[r]
                for k in range(col, ncols + 1):
                    if prow[k]:
                        row[k] -= factor * prow[k]
        pivot_rows.append(pr)

    if len(pivot_rows) < ncols:
        raise UnderdeterminedSystemError(len(pivot_rows), ncols)

    x = [Fraction(0)] * ncols
    for col, pr in enumerate(pivot_rows):
        x[col] = aug[pr][ncols]

    for i, (row, v) in enumerate(zip(rows, rhs)):
        residual = sum((a * xi for a, xi in zip(row, x)), Fraction(0)) - v
        if residual:
            raise InconsistentSystemError(i, residual)
    return x
