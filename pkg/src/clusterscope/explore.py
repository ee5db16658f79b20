"""Breadth-first exploration of mutation classes.

Quivers are deduplicated by a canonical key, so each isomorphism class is
visited once, at its smallest mutation depth. Searches stop at the first
member satisfying a predicate; a negative answer is only claimed when the
whole class has been enumerated within the budget.
"""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
from concurrent.futures import ThreadPoolExecutor
import logging
import random
from typing import Callable, Dict, FrozenSet, Iterator, List, Sequence, Tuple

# Installed
import dataclassy
from pillar.logging import LoggingMixin, get_logger_name_for_instance

# Local
from .canonical import canonical_form
from .config import SearchBudget, Strategy
from .const import Verdict
from .quiver import IceQuiver, mutable_part, mutate_quiver
from .structure import covering_pairs, is_acyclic

### CONSTANTS
### ============================================================================
QuiverKey = Callable[[IceQuiver], bytes]


### CLASSES
### ============================================================================
@dataclassy.dataclass(slots=True)
class ClassMember:
    """A quiver reached during exploration.

    Attributes:
        quiver: the quiver, with the labels of the starting quiver
        path: mutations leading from the starting quiver to `quiver`
        key: canonical key of `quiver`
    """

    quiver: IceQuiver
    path: Tuple[int, ...]
    key: bytes

    @property
    def depth(self) -> int:
        return len(self.path)


@dataclassy.dataclass(slots=True)
class SearchStats:
    nodes_expanded: int = 0
    depth_reached: int = 0


@dataclassy.dataclass(slots=True)
class MutationClass:
    """Canonical forms reached from a quiver by mutation.

    Attributes:
        members: canonical forms of the members
        complete: every mutation of every member is a member
        frontier_depth: last depth explored
        representatives: one member per form in breadth-first order
    """

    members: FrozenSet[bytes]
    complete: bool
    frontier_depth: int
    representatives: List[ClassMember] = dataclassy.factory(list)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclassy.dataclass(slots=True)
class SearchOutcome:
    """Result of a bounded search.

    `PROVEN_ABSENT` is only returned when the class was completely enumerated.

    Attributes:
        verdict: found, proven absent or budget exhausted
        path: mutation path to the witness when found
        quiver: the witness quiver when found
        pair: covering pair at the witness, for covering pair searches
        stats: search statistics
    """

    verdict: Verdict
    path: Tuple[int, ...] | None = None
    quiver: IceQuiver | None = None
    pair: Tuple[int, int] | None = None
    stats: SearchStats = dataclassy.factory(SearchStats)

    @property
    def found(self) -> bool:
        return self.verdict is Verdict.FOUND


class MutationExplorer(LoggingMixin):
    """Breadth-first walk over the mutation class of a quiver.

    Members are produced lazily by `walk()`. Frontier layers are expanded by a
    thread pool when `threads > 1`; results are merged in frontier order so the
    walk is identical for every thread count.
    """

    def __init__(
        self,
        quiver: IceQuiver,
        budget: SearchBudget | None = None,
        *,
        key: QuiverKey = canonical_form,
        threads: int = 1,
        vertex_order: Sequence[int] | None = None,
        name: str = "explore",
    ) -> None:
        """
        Args:
            quiver: starting quiver
            budget: limits on members and depth, `max_nodes` is ignored
            key: canonical key used for deduplication
            threads: number of worker threads used to expand a layer
            vertex_order: order in which vertices are mutated, defaults to ascending
            name: instance name used in log messages
        """
        self.quiver = quiver
        self.budget = budget or SearchBudget()
        self.key = key
        self.threads = max(1, threads)
        self.vertex_order = tuple(vertex_order) if vertex_order is not None else quiver.mutable
        self.logger = logging.getLogger(f"{get_logger_name_for_instance(self)}.i-{name}")
        self.stats = SearchStats()
        self.complete = False
        self.forms: Dict[bytes, ClassMember] = {}
        return

    def walk(self) -> Iterator[ClassMember]:
        """Yield class members in breadth-first order.

        When the generator is exhausted, `complete` tells whether the whole
        class was enumerated.
        """
        root = ClassMember(self.quiver, (), self.key(self.quiver))
        self.forms = {root.key: root}
        self.complete = False
        self.stats = SearchStats(nodes_expanded=1)
        yield root

        frontier = [root]
        depth = 0
        pool_context = (
            ThreadPoolExecutor(max_workers=self.threads) if self.threads > 1 else _Serial()
        )
        with pool_context as pool:
            while frontier:
                probing = depth >= self.budget.max_depth
                next_frontier: List[ClassMember] = []
                for parent, children in zip(frontier, pool.map(self._expand, frontier)):
                    for k, child, key in children:
                        if key in self.forms:
                            continue
                        if probing or len(self.forms) >= self.budget.max_members:
                            self.vdebug(
                                f"budget exhausted at depth {depth} with {len(self.forms)} members"
                            )
                            return
                        member = ClassMember(child, parent.path + (k,), key)
                        self.forms[key] = member
                        self.stats.nodes_expanded += 1
                        self.stats.depth_reached = depth + 1
                        next_frontier.append(member)
                        yield member
                frontier = next_frontier
                depth += 1
        self.complete = True
        self.vdebug(f"class complete with {len(self.forms)} members")
        return

    def mutation_class(self) -> MutationClass:
        members = list(self.walk())
        return MutationClass(
            members=frozenset(m.key for m in members),
            complete=self.complete,
            frontier_depth=self.stats.depth_reached,
            representatives=members,
        )

    def _expand(self, member: ClassMember) -> List[Tuple[int, IceQuiver, bytes]]:
        children = []
        for k in self.vertex_order:
            if member.path and member.path[-1] == k:
                continue
            child = mutate_quiver(member.quiver, k)
            children.append((k, child, self.key(child)))
        return children


class _Serial:
    """Stand-in for an executor that maps in the calling thread."""

    def __enter__(self) -> _Serial:
        return self

    def __exit__(self, *exc_info: object) -> None:
        return None

    @staticmethod
    def map(fn: Callable, items: Sequence) -> Iterator:
        return map(fn, items)


### FUNCTIONS
### ============================================================================
def mutable_form(q: IceQuiver) -> bytes:
    """Canonical form of the mutable part of `q`."""
    return canonical_form(mutable_part(q))


def ordered_vertices(
    q: IceQuiver, strategy: Strategy | None = None, rng: random.Random | None = None
) -> List[int]:
    """Mutable vertices of `q` in the order requested by `strategy`."""
    order = list(q.mutable)
    strategy = strategy or Strategy()
    if strategy.vertex_order == "descending":
        order.reverse()
    elif strategy.vertex_order == "shuffled":
        (rng or random.Random(strategy.seed)).shuffle(order)
    return order


def mutation_class(
    q: IceQuiver, budget: SearchBudget | None = None, *, threads: int = 1
) -> MutationClass:
    """Breadth-first closure of `q` under mutation, deduplicated by canonical form."""
    return MutationExplorer(q, budget, threads=threads, name="class").mutation_class()


def find_acyclic_seed(
    q: IceQuiver, budget: SearchBudget | None = None, *, threads: int = 1
) -> SearchOutcome:
    """Search the class of `q` for a quiver with acyclic mutable part.

    A found path is as short as possible.
    """
    explorer = MutationExplorer(q, budget, threads=threads, name="acyclic")
    for member in explorer.walk():
        if is_acyclic(member.quiver):
            return SearchOutcome(Verdict.FOUND, member.path, member.quiver, stats=explorer.stats)
    return _negative(explorer)


def find_covering_pair_seed(
    q: IceQuiver, budget: SearchBudget | None = None, *, threads: int = 1
) -> SearchOutcome:
    """Search the class of `q` for a quiver with a covering pair.

    The first covering pair of the first such quiver is returned.
    """
    explorer = MutationExplorer(q, budget, threads=threads, name="covering")
    for member in explorer.walk():
        pairs = covering_pairs(member.quiver)
        if pairs:
            return SearchOutcome(
                Verdict.FOUND, member.path, member.quiver, pairs[0], stats=explorer.stats
            )
    return _negative(explorer)


def is_mutation_equivalent(
    p: IceQuiver, q: IceQuiver, budget: SearchBudget | None = None, *, threads: int = 1
) -> SearchOutcome:
    """Search the class of `p` for a quiver isomorphic to `q`."""
    if p.n != q.n or len(p.mutable) != len(q.mutable):
        return SearchOutcome(Verdict.PROVEN_ABSENT)
    target = canonical_form(q)
    explorer = MutationExplorer(p, budget, threads=threads, name="equivalence")
    for member in explorer.walk():
        if member.key == target:
            return SearchOutcome(Verdict.FOUND, member.path, member.quiver, stats=explorer.stats)
    return _negative(explorer)


### PRIVATE
### ============================================================================
def _negative(explorer: MutationExplorer) -> SearchOutcome:
    verdict = Verdict.PROVEN_ABSENT if explorer.complete else Verdict.BUDGET_EXHAUSTED
    return SearchOutcome(verdict, stats=explorer.stats)
