"""Banff covering search.

Starting from a quiver, each search node first looks through the mutation
class for a quiver satisfying the stop predicate. If none is found, it looks
for a class member with a covering pair and recurses on the two quivers
obtained by freezing (or deleting) either endpoint. A successful run yields a
`BanffCertificate`; a failed run reports where and why it failed.
"""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
import logging
import random
from typing import Dict, Iterable, Iterator, List, Tuple

# Installed
import dataclassy
from pillar.logging import LoggingMixin, get_logger_name_for_instance

# Local
from .certificate import BanffCertificate, CertificateNode
from .config import SearchBudget, Strategy
from .const import CoverMode, FailureReason, StopPredicate
from .explore import (
    ClassMember,
    MutationClass,
    MutationExplorer,
    SearchStats,
    mutable_form,
    ordered_vertices,
)
from .quiver import IceQuiver, QuiverError, delete_vertices, freeze
from .seed import Seed, initial_seed, replay
from .structure import covering_pairs, is_acyclic, is_isolated, satisfies


### CLASSES
### ============================================================================
@dataclassy.dataclass(slots=True)
class FailureReport:
    """Why a Banff run failed.

    Attributes:
        reason: no covering pair anywhere in a complete class, or a budget ran out
        where: trail of removals from the root to the failing node
        witness: the complete class without covering pairs, for `NO_COVERING_PAIR`
        frontier: description of the exploration state at the failing node
        stats: members visited over the whole run
    """

    reason: FailureReason
    where: str
    witness: MutationClass | None = None
    frontier: str = ""
    stats: SearchStats = dataclassy.factory(SearchStats)

    def __str__(self) -> str:
        text = f"{self.reason.value} at {self.where}"
        if self.frontier:
            text += f" ({self.frontier})"
        return text


class KnowledgeBase:
    """Canonical forms known to be locally acyclic.

    Forms supplied from outside have no reference; forms certified during a
    run refer to the certificate node whose start quiver they are.
    """

    def __init__(self, forms: Iterable[bytes] = ()) -> None:
        self._forms: Dict[bytes, int | None] = {form: None for form in forms}
        return

    def __contains__(self, form: object) -> bool:
        return form in self._forms

    def __len__(self) -> int:
        return len(self._forms)

    def add(self, form: bytes, node: int | None = None) -> None:
        self._forms.setdefault(form, node)
        return

    def reference(self, form: bytes) -> int | None:
        return self._forms[form]

    def discard_from(self, node: int) -> None:
        """Forget every form certified by node `node` or later."""
        stale = [f for f, ref in self._forms.items() if ref is not None and ref >= node]
        for form in stale:
            del self._forms[form]
        return

    def external(self) -> List[bytes]:
        return [form for form, ref in self._forms.items() if ref is None]


class _NodeBudgetExhausted(Exception):
    pass


class BanffSearch(LoggingMixin):
    """One Banff run.

    The search is deterministic for a given strategy: nodes are numbered in
    depth-first pre-order, classes are walked breadth-first in the strategy's
    vertex order and covering pairs are tried in the strategy's pair order.
    """

    def __init__(
        self,
        stop: StopPredicate = StopPredicate.ACYCLIC,
        budget: SearchBudget | None = None,
        strategy: Strategy | None = None,
        *,
        mode: CoverMode = CoverMode.FREEZE,
        knowledge: Iterable[bytes] = (),
        seed_level: bool = False,
        threads: int = 1,
        name: str = "banff",
    ) -> None:
        """
        Args:
            stop: predicate every leaf must satisfy
            budget: class, depth and total node limits
            strategy: vertex order, pair order and backtracking
            mode: freeze covering pair endpoints, or delete them (reduced Banff)
            knowledge: canonical forms accepted as leaves in delete mode
            seed_level: carry clusters through the search and record them in the certificate
            threads: worker threads used to expand class layers
            name: instance name used in log messages
        """
        if mode is CoverMode.DELETE and stop is not StopPredicate.ACYCLIC:
            raise ValueError("reduced Banff only supports the acyclic stop predicate")
        if mode is CoverMode.DELETE and seed_level:
            raise ValueError("reduced Banff does not carry clusters")
        self.stop = stop
        self.budget = budget or SearchBudget()
        self.strategy = strategy or Strategy()
        self.mode = mode
        self.knowledge = KnowledgeBase(knowledge)
        self.seed_level = seed_level
        self.threads = threads
        self.name = name
        self.logger = logging.getLogger(f"{get_logger_name_for_instance(self)}.i-{name}")
        self._nodes: List[CertificateNode] = []
        self._failed: Dict[bytes, FailureReport] = {}
        self._stats = SearchStats()
        self._rng = random.Random(self.strategy.seed)
        return

    def run(
        self, start: Seed | IceQuiver, name: str = "quiver"
    ) -> BanffCertificate | FailureReport:
        """Search for a cover certificate of `start`.

        Raises:
            QuiverError: delete mode was asked to cover a quiver with frozen vertices
        """
        quiver = start.quiver if isinstance(start, Seed) else start
        if self.mode is CoverMode.DELETE and quiver.frozen:
            raise QuiverError("reduced Banff needs a quiver without frozen vertices")
        seed: Seed | None = None
        if self.seed_level:
            seed = start if isinstance(start, Seed) else initial_seed(start)
        self._nodes = []
        self._failed = {}
        self._stats = SearchStats()
        self._rng = random.Random(self.strategy.seed)
        self.knowledge = KnowledgeBase(self.knowledge.external())

        self.info(f"Covering {name} ({quiver.n} vertices, stop={self.stop.value})")
        result = self._solve(quiver, seed, None, None, "root")
        if isinstance(result, FailureReport):
            self.info(f"Failed: {result}")
            return result
        certificate = BanffCertificate(name, self.stop, self.mode, quiver, self._nodes)
        self.info(
            f"Certificate with {len(certificate.branches)} branches"
            f" and {len(certificate.leaves)} leaves"
        )
        return certificate

    ## Search nodes
    ## -------------------------------------------------------------------------
    def _solve(
        self,
        quiver: IceQuiver,
        seed: Seed | None,
        parent: int | None,
        removed: int | None,
        trail: str,
    ) -> int | FailureReport:
        identifier = len(self._nodes)
        start_form = mutable_form(quiver)
        if start_form in self._failed:
            self.debug(f"node {identifier} ({trail}): known failure")
            return self._failed[start_form]
        if self._stats.nodes_expanded >= self.budget.max_nodes:
            return self._budget_failure(trail, "node budget exhausted")

        order = ordered_vertices(quiver, self.strategy, self._rng)
        explorer = MutationExplorer(
            quiver,
            self.budget,
            key=mutable_form,
            threads=self.threads,
            vertex_order=order,
            name=f"{self.name}.{identifier}",
        )
        # placeholder, replaced by the leaf or branch
        self._nodes.append(CertificateNode(identifier, parent, removed, (), quiver))
        try:
            outcome = self._search_node(identifier, explorer, seed, trail)
        except _NodeBudgetExhausted:
            depth = explorer.stats.depth_reached
            outcome = self._budget_failure(trail, f"node budget exhausted at depth {depth}")

        if isinstance(outcome, FailureReport):
            self._truncate(identifier)
            if outcome.reason is FailureReason.NO_COVERING_PAIR:
                self._failed[start_form] = outcome
            return outcome
        if self.mode is CoverMode.DELETE:
            self.knowledge.add(start_form, identifier)
        return identifier

    def _search_node(
        self, identifier: int, explorer: MutationExplorer, seed: Seed | None, trail: str
    ) -> None | FailureReport:
        ## Step 1: stop predicate anywhere in the class
        members: Iterable[ClassMember]
        if self.stop is StopPredicate.ISOLATED:
            # mutation preserves isolated mutable parts, so only the root needs checking
            walker = self._members(explorer)
            root = next(walker)
            if is_isolated(root.quiver):
                self._leaf(identifier, root, seed, trail)
                return None
            members = _chain(root, walker)
        else:
            visited: List[ClassMember] = []
            for member in self._members(explorer):
                if satisfies(member.quiver, self.stop):
                    self._leaf(identifier, member, seed, trail)
                    return None
                if self.mode is CoverMode.DELETE and member.key in self.knowledge:
                    self._leaf(identifier, member, seed, trail, known=True)
                    return None
                visited.append(member)
            members = visited

        ## Step 2: covering pairs, in breadth-first order
        failures: List[FailureReport] = []
        saw_pair = False
        for member in members:
            pairs = covering_pairs(member.quiver)
            if self.strategy.pair_order == "reverse":
                pairs.reverse()
            for pair in pairs:
                saw_pair = True
                failure = self._branch(identifier, member, seed, pair, trail)
                if failure is None:
                    return None
                failures.append(failure)
                if not self.strategy.backtrack or failure.reason is FailureReason.BUDGET_EXHAUSTED:
                    return failure

        if not saw_pair:
            if explorer.complete:
                witness = MutationClass(
                    members=frozenset(explorer.forms),
                    complete=True,
                    frontier_depth=explorer.stats.depth_reached,
                    representatives=list(explorer.forms.values()),
                )
                self.debug(
                    f"node {identifier} ({trail}): no covering pair in {witness.size} members"
                )
                return FailureReport(
                    FailureReason.NO_COVERING_PAIR, trail, witness, stats=self._stats
                )
            return self._budget_failure(
                trail,
                f"class budget exhausted with {len(explorer.forms)} members"
                f" at depth {explorer.stats.depth_reached}",
            )
        if not explorer.complete:
            return self._budget_failure(
                trail,
                f"every covering pair failed, class incomplete at {len(explorer.forms)} members",
            )
        first = failures[0]
        frontier = f"every covering pair at {trail} failed"
        if first.frontier:
            frontier += f"; {first.frontier}"
        return FailureReport(first.reason, first.where, first.witness, frontier, self._stats)

    def _members(self, explorer: MutationExplorer) -> Iterator[ClassMember]:
        for member in explorer.walk():
            self._stats.nodes_expanded += 1
            self._stats.depth_reached = max(self._stats.depth_reached, member.depth)
            if self._stats.nodes_expanded > self.budget.max_nodes:
                raise _NodeBudgetExhausted()
            yield member

    def _leaf(
        self,
        identifier: int,
        member: ClassMember,
        seed: Seed | None,
        trail: str,
        known: bool = False,
    ) -> None:
        node = self._nodes[identifier]
        node.path = member.path
        node.quiver = member.quiver
        if known:
            node.known = True
            node.reference = self.knowledge.reference(member.key)
        else:
            node.predicate = self.stop
        if seed is not None:
            node.cluster = replay(seed, member.path).cluster
        self.debug(
            f"node {identifier} ({trail}): leaf after {len(member.path)} mutations"
            + (" (known)" if known else "")
        )
        return

    def _branch(
        self,
        identifier: int,
        member: ClassMember,
        seed: Seed | None,
        pair: Tuple[int, int],
        trail: str,
    ) -> FailureReport | None:
        node_seed = replay(seed, member.path) if seed is not None else None
        node = self._nodes[identifier]
        node.path = member.path
        node.quiver = member.quiver
        node.pair = pair
        node.cluster = node_seed.cluster if node_seed is not None else None
        node.children = []
        self.debug(
            f"node {identifier} ({trail}): branch on ({pair[0] + 1}, {pair[1] + 1})"
            f" after {len(member.path)} mutations"
        )
        for v in pair:
            child_quiver, child_seed = self._remove(member.quiver, node_seed, v)
            result = self._solve(
                child_quiver,
                child_seed,
                identifier,
                v,
                f"{trail} > {self.mode.value} {v + 1}",
            )
            if isinstance(result, FailureReport):
                self._truncate(identifier + 1)
                node.pair = None
                node.children = []
                return result
            node.children.append(result)
        return None

    def _remove(
        self, quiver: IceQuiver, seed: Seed | None, v: int
    ) -> Tuple[IceQuiver, Seed | None]:
        if self.mode is CoverMode.DELETE:
            reduced, _ = delete_vertices(quiver, {v})
            return reduced, None
        frozen = freeze(quiver, {v})
        if seed is None:
            return frozen, None
        return frozen, Seed(frozen, seed.cluster, seed.path)

    def _truncate(self, identifier: int) -> None:
        del self._nodes[identifier:]
        self.knowledge.discard_from(identifier)
        return

    def _budget_failure(self, trail: str, frontier: str) -> FailureReport:
        return FailureReport(FailureReason.BUDGET_EXHAUSTED, trail, None, frontier, self._stats)


### FUNCTIONS
### ============================================================================
def run_banff(
    s: Seed | IceQuiver,
    stop: StopPredicate = StopPredicate.ACYCLIC,
    budget: SearchBudget | None = None,
    strategy: Strategy | None = None,
    *,
    seed_level: bool = False,
    threads: int = 1,
    name: str = "quiver",
) -> BanffCertificate | FailureReport:
    """Run the Banff algorithm, freezing covering pair endpoints.

    Args:
        s: seed or quiver to cover
        stop: predicate every leaf must satisfy
        budget: search limits
        strategy: search choices
        seed_level: record the cluster of every node
        threads: worker threads used to expand class layers
        name: name recorded in the certificate
    """
    search = BanffSearch(stop, budget, strategy, seed_level=seed_level, threads=threads)
    return search.run(s, name)


def run_banff_reduced(
    q: IceQuiver,
    budget: SearchBudget | None = None,
    knowledge: Iterable[bytes] = (),
    strategy: Strategy | None = None,
    *,
    threads: int = 1,
    name: str = "quiver",
) -> BanffCertificate | FailureReport:
    """Run the reduced Banff algorithm, deleting covering pair endpoints.

    Leaves are acyclic quivers or quivers whose canonical form is already known
    to be locally acyclic, either from `knowledge` or from an earlier subtree.

    Raises:
        QuiverError: `q` has frozen vertices
    """
    search = BanffSearch(
        StopPredicate.ACYCLIC,
        budget,
        strategy,
        mode=CoverMode.DELETE,
        knowledge=knowledge,
        threads=threads,
        name="reduced",
    )
    return search.run(q, name)


def isolated_refinement(q: IceQuiver, name: str = "quiver") -> BanffCertificate:
    """Refine an acyclic quiver into a cover with isolated leaves.

    Every arrow of an acyclic quiver is a covering pair, so no mutation is needed:
    each branch freezes the endpoints of the first covering pair.

    Raises:
        QuiverError: the mutable part of `q` is not acyclic
    """
    if not is_acyclic(q):
        raise QuiverError("isolated refinement needs an acyclic quiver")
    nodes: List[CertificateNode] = []

    def build(current: IceQuiver, parent: int | None, removed: int | None) -> int:
        identifier = len(nodes)
        node = CertificateNode(identifier, parent, removed, (), current)
        nodes.append(node)
        if is_isolated(current):
            node.predicate = StopPredicate.ISOLATED
            return identifier
        pair = covering_pairs(current)[0]
        node.pair = pair
        node.children = [build(freeze(current, {v}), identifier, v) for v in pair]
        return identifier

    build(q, None, None)
    return BanffCertificate(name, StopPredicate.ISOLATED, CoverMode.FREEZE, q, nodes)


### PRIVATE
### ============================================================================
def _chain(first: ClassMember, rest: Iterator[ClassMember]) -> Iterator[ClassMember]:
    yield first
    yield from rest
