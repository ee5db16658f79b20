"""Canonical forms of ice quivers.

Vertices are first split into colour classes by iterated neighbourhood
refinement (mutable vertices always precede frozen ones). The canonical
labelling is then the frozen-respecting, colour-respecting ordering whose
upper-triangular entries, read column by column, are lexicographically
smallest. Twin vertices (identical rows, no arrows between them) are
interchangeable and only one of them is branched on.
"""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
from typing import Any, Dict, List, Optional, Sequence, Tuple

# Local
from .quiver import IceQuiver

### CONSTANTS
### ============================================================================
Block = Tuple[int, ...]


### FUNCTIONS
### ============================================================================
def canonical_form(q: IceQuiver) -> bytes:
    """Byte string equal for two quivers exactly when they are isomorphic as ice quivers."""
    order = canonical_relabeling(q)
    entries = [str(q.matrix[order[i]][order[t]]) for t in range(q.n) for i in range(t)]
    return f"{q.n}|{len(q.mutable)}|{','.join(entries)}".encode("ascii")


def is_isomorphic(p: IceQuiver, q: IceQuiver) -> bool:
    return p.n == q.n and canonical_form(p) == canonical_form(q)


def canonical_relabeling(q: IceQuiver) -> Tuple[int, ...]:
    """Vertex order realising the canonical form: position `t` holds old vertex `order[t]`."""
    if q.n == 0:
        return ()
    colours = refine_colours(q)
    slots = sorted(colours)
    search = _OrderSearch(q, colours, slots)
    search.extend([], ())
    assert search.best_order is not None
    return tuple(search.best_order)


def refine_colours(q: IceQuiver) -> List[int]:
    """Stable colouring of the vertices, invariant under relabelling.

    Colour numbers are ranks of sorted signatures, so equal colours mean equal
    refined neighbourhoods and frozen vertices always get larger colours than
    mutable ones.
    """
    n = q.n
    signatures = [
        (v in q.frozen, tuple(sorted(x for x in q.matrix[v] if x != 0))) for v in range(n)
    ]
    colours = _rank(signatures)
    while True:
        refined = _rank(
            [
                (
                    colours[v],
                    tuple(sorted((q.matrix[v][u], colours[u]) for u in q.neighbours(v))),
                )
                for v in range(n)
            ]
        )
        if len(set(refined)) == len(set(colours)):
            return refined
        colours = refined


### PRIVATE
### ============================================================================
def _rank(signatures: Sequence[Any]) -> List[int]:
    table: Dict[Any, int] = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
    return [table[sig] for sig in signatures]


class _OrderSearch:
    """Depth-first search for the lexicographically smallest block sequence."""

    def __init__(self, q: IceQuiver, colours: List[int], slots: List[int]) -> None:
        self.q = q
        self.colours = colours
        self.slots = slots
        self.best_blocks: Optional[List[Block]] = None
        self.best_order: Optional[List[int]] = None
        return

    def extend(self, order: List[int], blocks: Tuple[Block, ...]) -> None:
        t = len(order)
        if t == self.q.n:
            if self.best_blocks is None or list(blocks) < self.best_blocks:
                self.best_blocks = list(blocks)
                self.best_order = list(order)
            return

        placed = set(order)
        candidates = []
        for v in range(self.q.n):
            if v in placed or self.colours[v] != self.slots[t]:
                continue
            block = tuple(self.q.matrix[order[i]][v] for i in range(t))
            candidates.append((block, v))
        candidates.sort()

        tried: List[int] = []
        for block, v in candidates:
            if self.best_blocks is not None:
                prefix = self.best_blocks[: t + 1]
                current = list(blocks) + [block]
                if current > prefix:
                    # candidates are sorted, later ones cannot do better
                    break
            if any(self._twins(u, v) for u in tried):
                continue
            tried.append(v)
            order.append(v)
            self.extend(order, blocks + (block,))
            order.pop()
        return

    def _twins(self, u: int, v: int) -> bool:
        m = self.q.matrix
        if m[u][v] != 0:
            return False
        return all(m[u][w] == m[v][w] for w in range(self.q.n) if w != u and w != v)
