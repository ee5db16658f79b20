"""Algebraic checks on seeds.

Presentations of acyclic cluster algebras, the rank check behind regularity of
isolated seeds, degenerate homomorphisms for quivers without covering pairs,
and exact evaluation of the exchange recurrence at rational points.
"""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
import enum
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

# Installed
import dataclassy

# Local
from .config import SearchBudget
from .const import Verdict
from .explore import find_covering_pair_seed
from .laurent import LaurentPoly
from .linalg import exchange_rank, rational_rank
from .log import logger
from .quiver import IceQuiver, mutate_quiver
from .seed import Seed, mutate_seed
from .structure import is_acyclic, is_isolated

### CONSTANTS
### ============================================================================
Exponents = Tuple[Tuple[int, int], ...]


class JacobianVerdict(enum.Enum):
    PASS = "pass"
    MISMATCH = "mismatch"
    VACUOUS = "vacuous"


### CLASSES
### ============================================================================
class AlgebraicError(ValueError):
    """Base class for algebraic check errors."""


class PreconditionError(AlgebraicError):
    """Raised when the input of a check does not meet its precondition."""


class ClusterPointError(AlgebraicError):
    """Raised when the exchange recurrence divides by zero.

    The point has left the cluster torus of the seed being mutated.

    Attributes:
        step: 0-based index into the mutation path
        vertex: the vertex whose value is zero
    """

    def __init__(self, step: int, vertex: int) -> None:
        super().__init__(f"value at vertex {vertex + 1} is zero at mutation step {step + 1}")
        self.step = step
        self.vertex = vertex
        return


## Presentations
## -----------------------------------------------------------------------------
@dataclassy.dataclass(slots=True, frozen=True)
class Relation:
    """The relation `a_i a_i' = pi_i^+ + pi_i^-`.

    Attributes:
        index: mutable vertex `i`
        positive: `(j, exponent)` pairs of `pi_i^+`
        negative: `(j, exponent)` pairs of `pi_i^-`
    """

    index: int
    positive: Exponents
    negative: Exponents

    def __str__(self) -> str:
        i = self.index + 1
        if not self.positive and not self.negative:
            right = "2"
        else:
            right = f"{_monomial_text(self.positive)} + {_monomial_text(self.negative)}"
        return f"a{i}*a{i}' = {right}"


@dataclassy.dataclass(slots=True, frozen=True)
class Presentation:
    generators: Tuple[str, ...]
    relations: Tuple[Relation, ...]

    def __str__(self) -> str:
        lines = ["generators " + " ".join(self.generators)]
        lines.extend(str(relation) for relation in self.relations)
        return "\n".join(lines)


@dataclassy.dataclass(slots=True, frozen=True)
class PointAssignment:
    """Exact rational values, one per vertex.

    Attributes:
        values: value at each vertex
        require_frozen_nonzero: checks using this point need nonzero frozen values
    """

    values: Tuple[Fraction, ...]
    require_frozen_nonzero: bool = False

    @classmethod
    def from_mapping(
        cls,
        n: int,
        mapping: Mapping[int, Fraction | int],
        default: Fraction | int = 0,
        require_frozen_nonzero: bool = False,
    ) -> PointAssignment:
        """Build from a 0-based `vertex: value` mapping, filling the rest with `default`."""
        for v in mapping:
            if not 0 <= v < n:
                raise PreconditionError(f"vertex {v + 1} out of range 1..{n}")
        values = tuple(Fraction(mapping.get(v, default)) for v in range(n))
        return cls(values, require_frozen_nonzero)

    def check(self, q: IceQuiver) -> None:
        """Raises PreconditionError if the point does not fit `q`."""
        if len(self.values) != q.n:
            raise PreconditionError(f"point has {len(self.values)} values, quiver has {q.n}")
        if self.require_frozen_nonzero:
            zeros = [v + 1 for v in sorted(q.frozen) if self.values[v] == 0]
            if zeros:
                raise PreconditionError(f"frozen vertices {zeros} have value 0")
        return


## Results
## -----------------------------------------------------------------------------
@dataclassy.dataclass(slots=True, frozen=True)
class JacobianCheck:
    """Rank comparison for an isolated seed.

    Attributes:
        verdict: pass, mismatch, or vacuous when no residue point exists
        jacobian_rank: rank of the Jacobian at the residue point
        exchange_rank: rank of the exchange matrix
    """

    verdict: JacobianVerdict
    jacobian_rank: int | None = None
    exchange_rank: int | None = None


@dataclassy.dataclass(slots=True)
class DegenerateHom:
    """A map from cluster variables to {0, 1, 2}.

    Attributes:
        values: value of each cluster variable met, labelled `a<v>` for initial
            variables and `a<v>@<path>` for variables created along a path
        depth: mutation depth verified
        relations_checked: number of exchange relations checked numerically
        violations: relations that did not hold
    """

    values: Dict[str, Fraction]
    depth: int
    relations_checked: int = 0
    violations: List[str] = dataclassy.factory(list)

    @property
    def verified(self) -> bool:
        return not self.violations


@dataclassy.dataclass(slots=True, frozen=True)
class Inapplicable:
    """Some quiver in the class has a covering pair."""

    pair: Tuple[int, int]
    path: Tuple[int, ...]


@dataclassy.dataclass(slots=True, frozen=True)
class Indeterminate:
    reason: str


### FUNCTIONS
### ============================================================================
## Presentations
## -----------------------------------------------------------------------------
def acyclic_presentation(s: Seed) -> Presentation:
    """Generators and exchange relations presenting the cluster algebra of an acyclic seed.

    Raises:
        PreconditionError: the mutable part of the quiver has a directed cycle
    """
    q = s.quiver
    if not is_acyclic(q):
        raise PreconditionError("acyclic_presentation needs a seed with acyclic mutable part")
    generators = [f"a{i + 1}" for i in q.mutable]
    generators.extend(f"a{j + 1}^±1" for j in sorted(q.frozen))
    generators.extend(f"a{i + 1}'" for i in q.mutable)
    relations = []
    for i in q.mutable:
        row = q.matrix[i]
        positive = tuple((j, row[j]) for j in range(q.n) if row[j] > 0)
        negative = tuple((j, -row[j]) for j in range(q.n) if row[j] < 0)
        relations.append(Relation(i, positive, negative))
    return Presentation(tuple(generators), tuple(relations))


def presentation_identities(s: Seed) -> bool:
    """Check every relation of the presentation on the Laurent cluster of `s`.

    `a_i'` is the cluster variable obtained by mutating `s` once at `i`.
    """
    presentation = acyclic_presentation(s)
    for relation in presentation.relations:
        i = relation.index
        primed = mutate_seed(s, i).cluster[i]
        right = _laurent_monomial(s, relation.positive) + _laurent_monomial(s, relation.negative)
        if s.cluster[i] * primed != right:
            logger.error(f"relation {relation} does not hold")
            return False
    return True


## Jacobian
## -----------------------------------------------------------------------------
def isolated_jacobian_check(s: Seed, frozen_values: PointAssignment) -> JacobianCheck:
    """Compare the rank of the Jacobian at a residue point with the exchange rank.

    At the residue point every mutable `a_i` is 0, so each relation forces
    `pi_i^- = -pi_i^+`. The Jacobian then vanishes on mutable and primed
    columns and has entry `Q_ij * pi_i^+ / a_j` on frozen column `j`.

    Raises:
        PreconditionError: the quiver is not isolated or a frozen value is zero
    """
    q = s.quiver
    if not is_isolated(q):
        raise PreconditionError("isolated_jacobian_check needs an isolated quiver")
    point = PointAssignment(frozen_values.values, True)
    point.check(q)
    values = point.values

    if any(not any(q.matrix[i]) for i in q.mutable):
        # both monomials are 1, so pi^+ + pi^- = 2 cannot vanish
        return JacobianCheck(JacobianVerdict.VACUOUS)

    frozen = sorted(q.frozen)
    rows: List[List[Fraction]] = []
    for i in q.mutable:
        positive = Fraction(1)
        for j in frozen:
            if q.matrix[i][j] > 0:
                positive *= values[j] ** q.matrix[i][j]
        rows.append([q.matrix[i][j] * positive / values[j] for j in frozen])
    jacobian = rational_rank(rows) if frozen else 0
    expected = exchange_rank(q)
    verdict = JacobianVerdict.PASS if jacobian == expected else JacobianVerdict.MISMATCH
    logger.debug(f"jacobian rank {jacobian}, exchange rank {expected}")
    return JacobianCheck(verdict, jacobian, expected)


## Degenerate homomorphisms
## -----------------------------------------------------------------------------
def build_degenerate_hom(
    q: IceQuiver, depth: int, budget: SearchBudget | None = None, *, threads: int = 1
) -> DegenerateHom | Inapplicable | Indeterminate:
    """Build the map sending frozen variables to 1 and non-isolated ones to 0.

    Isolated variables alternate between 1 and 2 under mutation. Every exchange
    relation met within `depth` mutations is checked numerically.

    Returns:
        `Inapplicable` if some quiver of the class has a covering pair,
        `Indeterminate` if the class could not be decided within `budget`
    """
    search = find_covering_pair_seed(q, budget, threads=threads)
    if search.verdict is Verdict.FOUND:
        assert search.pair is not None and search.path is not None
        return Inapplicable(search.pair, search.path)
    if search.verdict is Verdict.BUDGET_EXHAUSTED:
        return Indeterminate(
            f"class not exhausted after {search.stats.nodes_expanded} members"
            f" at depth {search.stats.depth_reached}"
        )

    isolated = {i for i in q.mutable if not any(q.matrix[i][j] for j in q.mutable)}
    start = tuple(
        Fraction(1) if v in q.frozen or v in isolated else Fraction(0) for v in range(q.n)
    )
    hom = DegenerateHom({f"a{v + 1}": start[v] for v in range(q.n)}, depth)
    frontier: List[Tuple[IceQuiver, Tuple[Fraction, ...], Tuple[int, ...]]] = [(q, start, ())]
    seen = {(q.matrix, start)}
    for _ in range(depth):
        next_frontier = []
        for current, values, path in frontier:
            for k in current.mutable:
                if path and path[-1] == k:
                    continue
                if k in isolated:
                    new_value = Fraction(2) if values[k] == 1 else Fraction(1)
                else:
                    new_value = Fraction(0)
                right = _exchange_sum(current, values, k)
                hom.relations_checked += 1
                if values[k] * new_value != right:
                    hom.violations.append(
                        f"vertex {k + 1} after {_path_text(path)}:"
                        f" {values[k]} * {new_value} != {right}"
                    )
                child_path = path + (k,)
                child_values = values[:k] + (new_value,) + values[k + 1 :]
                hom.values[f"a{k + 1}@{_path_text(child_path)}"] = new_value
                child = mutate_quiver(current, k)
                if (child.matrix, child_values) in seen:
                    continue
                seen.add((child.matrix, child_values))
                next_frontier.append((child, child_values, child_path))
        frontier = next_frontier
    if hom.violations:
        logger.error(f"{len(hom.violations)} exchange relations failed")
    return hom


## Points
## -----------------------------------------------------------------------------
def evaluate_cluster_point(
    s: Seed, start: PointAssignment | Sequence[Fraction | int], path: Sequence[int]
) -> List[Tuple[Fraction, ...]]:
    """Follow the exchange recurrence from `start` along `path` with exact rationals.

    Returns:
        the value vectors, starting with `start` and followed by one per mutation

    Raises:
        ClusterPointError: a vertex about to be mutated has value 0
        QuiverError: a path vertex is frozen or out of range
    """
    raw = start.values if isinstance(start, PointAssignment) else start
    values = tuple(Fraction(v) for v in raw)
    if len(values) != s.nvars:
        raise PreconditionError(f"point has {len(values)} values, seed has {s.nvars}")
    trajectory = [values]
    current = s.quiver
    for step, k in enumerate(path):
        mutated = mutate_quiver(current, k)
        if values[k] == 0:
            raise ClusterPointError(step, k)
        new_value = _exchange_sum(current, values, k) / values[k]
        values = values[:k] + (new_value,) + values[k + 1 :]
        current = mutated
        trajectory.append(values)
    return trajectory


def kernel_path_witness(
    s: Seed, values: PointAssignment | Sequence[Fraction | int]
) -> Tuple[int, ...] | None:
    """Find a directed cycle of mutable vertices sent to zero.

    A zero at a mutable vertex forces both exchange monomials to vanish, so it
    has a zero in-neighbour and a zero out-neighbour; following out-neighbours
    eventually closes a cycle.

    Returns:
        the cycle (0-based, starting at its smallest vertex reached), or `None`
        when no mutable value is zero

    Raises:
        PreconditionError: a mutable value is negative, a frozen value is zero, or
            an exchange relation at a zero vertex cannot hold
    """
    q = s.quiver
    point = tuple(
        Fraction(v) for v in (values.values if isinstance(values, PointAssignment) else values)
    )
    if len(point) != q.n:
        raise PreconditionError(f"point has {len(point)} values, seed has {q.n}")
    negative = [v + 1 for v in q.mutable if point[v] < 0]
    if negative:
        raise PreconditionError(f"mutable vertices {negative} have negative values")
    zero_frozen = [v + 1 for v in sorted(q.frozen) if point[v] == 0]
    if zero_frozen:
        raise PreconditionError(f"frozen vertices {zero_frozen} have value 0")

    zeros = [v for v in q.mutable if point[v] == 0]
    if not zeros:
        return None
    violated = [v for v in zeros if _exchange_sum(q, point, v) != 0]
    if violated:
        raise PreconditionError(
            "exchange relations fail at vertices "
            + ", ".join(str(v + 1) for v in violated)
            + ": the value is 0 but pi^+ + pi^- is not"
        )

    zero_set = set(zeros)
    walk = [zeros[0]]
    position = {zeros[0]: 0}
    while True:
        onward = [j for j in q.mutable if q.matrix[walk[-1]][j] > 0 and j in zero_set]
        if not onward:
            return None
        nxt = onward[0]
        if nxt in position:
            return tuple(walk[position[nxt] :])
        position[nxt] = len(walk)
        walk.append(nxt)


### PRIVATE
### ============================================================================
def _exchange_sum(q: IceQuiver, values: Sequence[Fraction], k: int) -> Fraction:
    positive = Fraction(1)
    negative = Fraction(1)
    for j, entry in enumerate(q.matrix[k]):
        if entry > 0:
            positive *= values[j] ** entry
        elif entry < 0:
            negative *= values[j] ** -entry
    return positive + negative


def _laurent_monomial(s: Seed, exponents: Exponents) -> LaurentPoly:
    result = LaurentPoly.one(s.nvars)
    for j, e in exponents:
        result = result * (s.cluster[j] ** e)
    return result


def _monomial_text(exponents: Exponents) -> str:
    if not exponents:
        return "1"
    return "*".join(f"a{j + 1}" if e == 1 else f"a{j + 1}^{e}" for j, e in exponents)


def _path_text(path: Sequence[int]) -> str:
    return ",".join(str(k + 1) for k in path) or "-"
