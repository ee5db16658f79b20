"""Ice quivers and quiver-level operations.

Vertices are 0-based inside the package. Text formats, the CLI and certificates
use 1-based labels and convert at their boundary.
"""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

# Installed
import dataclassy

### CONSTANTS
### ============================================================================
Matrix = Tuple[Tuple[int, ...], ...]
Arrow = Tuple[int, int, int]


### CLASSES
### ============================================================================
class QuiverError(ValueError):
    """Raised when an operation is given an invalid quiver, vertex or vertex set."""


@dataclassy.dataclass(slots=True, frozen=True)
class IceQuiver:
    """A loop-free, 2-cycle-free quiver with a set of frozen vertices.

    `matrix[i][j]` is the number of arrows `i -> j` minus the number of arrows
    `j -> i`. A quiver without mutable vertices is trivial (it defines the rank 0
    algebra).

    Attributes:
        matrix: skew-symmetric signed arrow counts
        frozen: frozen vertices
    """

    matrix: Matrix
    frozen: FrozenSet[int] = frozenset()

    def __post_init__(self) -> None:
        n = len(self.matrix)
        for i, row in enumerate(self.matrix):
            if len(row) != n:
                raise QuiverError(f"row {i + 1} has {len(row)} entries, expected {n}")
            if row[i] != 0:
                raise QuiverError(f"loop at vertex {i + 1}")
            for j in range(i + 1, n):
                if row[j] != -self.matrix[j][i]:
                    raise QuiverError(f"matrix is not skew-symmetric at ({i + 1}, {j + 1})")
        for v in self.frozen:
            if not 0 <= v < n:
                raise QuiverError(f"frozen vertex {v + 1} out of range 1..{n}")
        return

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def mutable(self) -> Tuple[int, ...]:
        """Mutable vertices in ascending order."""
        return tuple(v for v in range(self.n) if v not in self.frozen)

    @property
    def is_trivial(self) -> bool:
        return not self.mutable

    def is_mutable(self, v: int) -> bool:
        return 0 <= v < self.n and v not in self.frozen

    def arrows(self) -> List[Arrow]:
        """List `(i, j, m)` for every pair with `m = matrix[i][j] > 0`, in row-major order."""
        return [
            (i, j, self.matrix[i][j])
            for i in range(self.n)
            for j in range(self.n)
            if self.matrix[i][j] > 0
        ]

    def neighbours(self, v: int) -> List[int]:
        return [u for u in range(self.n) if self.matrix[v][u] != 0]


### FUNCTIONS
### ============================================================================
## Construction
## -----------------------------------------------------------------------------
def from_arrows(n: int, arrows: Iterable[Arrow], frozen: Iterable[int] = ()) -> IceQuiver:
    """Build a quiver from 1-based `(i, j, m)` arrow triples.

    Repeated triples in the same direction accumulate, opposite directions cancel.

    Args:
        n: number of vertices
        arrows: `(source, target, multiplicity)` triples using labels 1..n
        frozen: 1-based labels of frozen vertices
    """
    if n < 0:
        raise QuiverError(f"negative vertex count {n}")
    rows = [[0] * n for _ in range(n)]
    for i, j, m in arrows:
        if not (1 <= i <= n and 1 <= j <= n):
            raise QuiverError(f"arrow {i}->{j} out of range 1..{n}")
        if i == j:
            raise QuiverError(f"loop at vertex {i}")
        rows[i - 1][j - 1] += m
        rows[j - 1][i - 1] -= m
    return IceQuiver(_freeze_rows(rows), frozenset(v - 1 for v in frozen))


def zero_quiver(n: int, frozen: Iterable[int] = ()) -> IceQuiver:
    """A quiver on `n` vertices without arrows (frozen labels are 0-based)."""
    return IceQuiver(tuple((0,) * n for _ in range(n)), frozenset(frozen))


## Mutation
## -----------------------------------------------------------------------------
def mutate_quiver(q: IceQuiver, k: int) -> IceQuiver:
    """Mutate `q` at the mutable vertex `k`.

    Entries in row or column `k` are negated, every other entry becomes
    `Q[i][j] + (|Q[i][k]| Q[k][j] + Q[i][k] |Q[k][j]|) / 2`. Frozen-to-frozen
    entries follow the same rule.

    Raises:
        QuiverError: `k` is frozen or out of range
    """
    _check_mutable(q, k)
    m = q.matrix
    col_k = [m[i][k] for i in range(q.n)]
    row_k = m[k]
    rows = []
    for i in range(q.n):
        a = col_k[i]
        if i == k or a == 0:
            row = [-x if j == k or i == k else x for j, x in enumerate(m[i])]
        else:
            row = [
                -x if j == k else x + (abs(a) * row_k[j] + a * abs(row_k[j])) // 2
                for j, x in enumerate(m[i])
            ]
        rows.append(row)
    return IceQuiver(_freeze_rows(rows), q.frozen)


def mutate_path(q: IceQuiver, path: Iterable[int]) -> IceQuiver:
    for k in path:
        q = mutate_quiver(q, k)
    return q


## Freezing and deletion
## -----------------------------------------------------------------------------
def freeze(q: IceQuiver, vertices: Iterable[int]) -> IceQuiver:
    """Declare mutable vertices frozen. The matrix is unchanged.

    Raises:
        QuiverError: a vertex is frozen already or out of range
    """
    s = frozenset(vertices)
    for v in sorted(s):
        _check_mutable(q, v)
    if not s:
        return q
    return IceQuiver(q.matrix, q.frozen | s)


def delete_vertices(q: IceQuiver, vertices: Iterable[int]) -> Tuple[IceQuiver, Dict[int, int]]:
    """Induced subquiver on the vertices not in `vertices`.

    Returns:
        the subquiver and the map from kept old indices to new, compacted indices
    """
    s = frozenset(vertices)
    for v in s:
        if not 0 <= v < q.n:
            raise QuiverError(f"vertex {v + 1} out of range 1..{q.n}")
    kept = [v for v in range(q.n) if v not in s]
    index_map = {old: new for new, old in enumerate(kept)}
    matrix = tuple(tuple(q.matrix[i][j] for j in kept) for i in kept)
    frozen = frozenset(index_map[v] for v in q.frozen if v in index_map)
    return IceQuiver(matrix, frozen), index_map


def mutable_part(q: IceQuiver) -> IceQuiver:
    """The induced subquiver on the mutable vertices."""
    return delete_vertices(q, q.frozen)[0]


def relabel(q: IceQuiver, order: Sequence[int]) -> IceQuiver:
    """Relabel so that new vertex `t` is old vertex `order[t]`."""
    if sorted(order) != list(range(q.n)):
        raise QuiverError(f"{list(order)} is not a permutation of the {q.n} vertices")
    matrix = tuple(tuple(q.matrix[a][b] for b in order) for a in order)
    position = {old: new for new, old in enumerate(order)}
    return IceQuiver(matrix, frozenset(position[v] for v in q.frozen))


## Exchange matrix
## -----------------------------------------------------------------------------
def exchange_matrix(q: IceQuiver) -> Matrix:
    """Rows of `Q` belonging to mutable vertices, all columns."""
    return tuple(q.matrix[i] for i in q.mutable)


### PRIVATE
### ============================================================================
def _check_mutable(q: IceQuiver, k: int) -> None:
    if not 0 <= k < q.n:
        raise QuiverError(f"vertex {k + 1} out of range 1..{q.n}")
    if k in q.frozen:
        raise QuiverError(f"vertex {k + 1} is frozen")
    return


def _freeze_rows(rows: List[List[int]]) -> Matrix:
    return tuple(tuple(row) for row in rows)
