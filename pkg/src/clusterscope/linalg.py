"""Exact matrix rank."""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import List, Sequence

# Local
from .quiver import IceQuiver, exchange_matrix


### FUNCTIONS
### ============================================================================
def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix.

    Fraction-free elimination: rows are combined by cross-multiplication and
    divided by their content, so entries stay small integers.
    """
    work: List[List[int]] = [list(row) for row in rows if any(row)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        p = work[rank][col]
        for r in range(rank + 1, len(work)):
            a = work[r][col]
            if a == 0:
                continue
            row = [x * p - y * a for x, y in zip(work[r], work[rank])]
            content = reduce(gcd, row, 0)
            work[r] = [x // content for x in row] if content > 1 else row
        rank += 1
        if rank == len(work):
            break
    return rank


def rational_rank(rows: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank of a matrix with rational entries by Gaussian elimination over `Fraction`."""
    work: List[List[Fraction]] = [[Fraction(x) for x in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        p = work[rank][col]
        for r in range(rank + 1, len(work)):
            factor = work[r][col] / p
            if factor:
                work[r] = [x - factor * y for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def exchange_rank(q: IceQuiver) -> int:
    """Rank of the exchange matrix (mutable rows, all columns)."""
    return integer_rank(exchange_matrix(q))


def is_full_rank(q: IceQuiver) -> bool:
    return exchange_rank(q) == len(q.mutable)
