"""Seeds and seed mutation.

A seed pairs an ice quiver with one Laurent polynomial per vertex, written in
the variables of a designated initial seed, and remembers the mutation path
that produced it.
"""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
from typing import Any, Dict, Iterable, List, Sequence, Tuple

# Installed
import dataclassy

# Local
from .canonical import canonical_form
from .laurent import LaurentPoly, NotDivisible, RationalFn, exact_div, product
from .log import logger
from .quiver import IceQuiver, mutate_quiver


### CLASSES
### ============================================================================
class SeedError(ValueError):
    """Raised when a seed operation is given invalid input."""


class LaurentViolation(SeedError):
    """Raised when an exchange quotient is not a Laurent polynomial.

    This never happens for a correct implementation.

    Attributes:
        vertex: the mutated vertex (0-based)
        path: the mutation path of the seed being mutated
    """

    def __init__(self, vertex: int, path: Tuple[int, ...]) -> None:
        super().__init__(
            f"exchange quotient at vertex {vertex + 1} is not Laurent"
            f" (path {[k + 1 for k in path]})"
        )
        self.vertex = vertex
        self.path = path
        return


@dataclassy.dataclass(slots=True, frozen=True)
class Seed:
    """A quiver with a cluster.

    Attributes:
        quiver: the exchange quiver
        cluster: one Laurent polynomial per vertex in the initial variables
        path: vertices mutated, in order, starting from the initial seed
    """

    quiver: IceQuiver
    cluster: Tuple[LaurentPoly, ...]
    path: Tuple[int, ...] = ()

    @property
    def nvars(self) -> int:
        return self.quiver.n


@dataclassy.dataclass(slots=True)
class ClusterEnumeration:
    """Result of a bounded breadth-first enumeration of seeds.

    Attributes:
        variables: distinct mutable cluster variables found, sorted by text form
        seeds: number of distinct seeds visited
        complete: the closure stabilised within the depth budget
        depth: number of mutation layers explored
    """

    variables: Tuple[LaurentPoly, ...]
    seeds: int
    complete: bool
    depth: int


@dataclassy.dataclass(slots=True)
class LaurentCheck:
    """Result of the Laurent phenomenon harness.

    Attributes:
        mutations: number of seed mutations performed
        violations: every mutation whose quotient was not Laurent
        depth: maximum path length explored
    """

    mutations: int
    violations: List[LaurentViolation] = dataclassy.factory(list)
    depth: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


### FUNCTIONS
### ============================================================================
## Mutation
## -----------------------------------------------------------------------------
def initial_seed(q: IceQuiver) -> Seed:
    """The seed of `q` whose cluster is `x1..xn`."""
    return Seed(q, tuple(LaurentPoly.variable(i, q.n) for i in range(q.n)), ())


def exchange_monomials(s: Seed, k: int) -> Tuple[LaurentPoly, LaurentPoly]:
    """The two exchange monomials at `k`.

    Returns:
        `prod a_j^Q[k][j]` over `Q[k][j] > 0` and `prod a_j^-Q[k][j]` over `Q[k][j] < 0`
    """
    row = s.quiver.matrix[k]
    positive = product((s.cluster[j] ** row[j] for j in range(s.nvars) if row[j] > 0), s.nvars)
    negative = product((s.cluster[j] ** -row[j] for j in range(s.nvars) if row[j] < 0), s.nvars)
    return positive, negative


def mutate_seed(s: Seed, k: int) -> Seed:
    """Mutate the seed at the mutable vertex `k`.

    Raises:
        QuiverError: `k` is frozen or out of range
        LaurentViolation: the exchange quotient is not a Laurent polynomial
    """
    quiver = mutate_quiver(s.quiver, k)
    positive, negative = exchange_monomials(s, k)
    try:
        new_variable = exact_div(positive + negative, s.cluster[k])
    except NotDivisible:
        raise LaurentViolation(k, s.path) from None
    cluster = s.cluster[:k] + (new_variable,) + s.cluster[k + 1 :]
    return Seed(quiver, cluster, s.path + (k,))


def replay(initial: Seed, path: Iterable[int]) -> Seed:
    """Mutate `initial` along `path`."""
    s = initial
    for k in path:
        s = mutate_seed(s, k)
    return s


def seed_key(s: Seed) -> Tuple[bytes, Tuple[Any, ...]]:
    """Key identifying a seed up to relabelling: canonical quiver form and cluster multiset."""
    variables = sorted(tuple(sorted(v.terms.items())) for v in s.cluster)
    return canonical_form(s.quiver), tuple(variables)


## Enumeration
## -----------------------------------------------------------------------------
def enumerate_cluster_variables(s: Seed, depth: int) -> ClusterEnumeration:
    """Breadth-first closure of seeds up to `depth` mutations.

    After the last layer, one more expansion decides whether the closure has
    stabilised; seeds found there are not recorded.
    """
    if depth < 0:
        raise SeedError(f"depth must be non-negative, got {depth}")
    mutable = s.quiver.mutable
    seen = {seed_key(s)}
    variables: Dict[LaurentPoly, None] = {s.cluster[k]: None for k in mutable}
    frontier = [s]
    layer = 0
    complete = True
    while frontier:
        recording = layer < depth
        next_frontier: List[Seed] = []
        for current in frontier:
            for k in mutable:
                if current.path and current.path[-1] == k:
                    continue
                child = mutate_seed(current, k)
                key = seed_key(child)
                if key in seen:
                    continue
                if not recording:
                    complete = False
                    break
                seen.add(key)
                variables.setdefault(child.cluster[k], None)
                next_frontier.append(child)
            if not complete:
                break
        if not recording:
            break
        frontier = next_frontier
        layer += 1
    logger.debug(f"enumerated {len(seen)} seeds to depth {layer}, complete={complete}")
    ordered = tuple(sorted(variables, key=str))
    return ClusterEnumeration(ordered, len(seen), complete, layer)


def laurent_check(s: Seed, depth: int) -> LaurentCheck:
    """Mutate along every non-backtracking path of length at most `depth`.

    Every exchange quotient must be a Laurent polynomial in the initial
    variables; failures are collected rather than raised.
    """
    result = LaurentCheck(mutations=0, depth=depth)
    stack: List[Seed] = [s]
    while stack:
        current = stack.pop()
        if len(current.path) - len(s.path) >= depth:
            continue
        for k in reversed(current.quiver.mutable):
            if current.path and current.path[-1] == k:
                continue
            result.mutations += 1
            try:
                stack.append(mutate_seed(current, k))
            except LaurentViolation as violation:
                logger.error(str(violation))
                result.violations.append(violation)
    return result


## Markov
## -----------------------------------------------------------------------------
def markov_invariant_check(s: Seed) -> bool:
    """Check that `(a^2 + b^2 + c^2) / (abc)` takes the same value on `s` and its three mutations.

    Raises:
        SeedError: the quiver of `s` is not a Markov quiver
    """
    q = s.quiver
    if not _is_markov_shape(q):
        raise SeedError("markov_invariant_check needs a Markov quiver (3 vertices, double 3-cycle)")
    reference = _markov_function(s.cluster)
    return all(_markov_function(mutate_seed(s, k).cluster) == reference for k in range(3))


### PRIVATE
### ============================================================================
def _is_markov_shape(q: IceQuiver) -> bool:
    if q.n != 3 or q.frozen:
        return False
    m = q.matrix
    cyclic = (m[0][1], m[1][2], m[2][0])
    return cyclic in ((2, 2, 2), (-2, -2, -2))


def _markov_function(cluster: Sequence[LaurentPoly]) -> RationalFn:
    a, b, c = cluster
    return RationalFn(a * a + b * b + c * c, a * b * c)
