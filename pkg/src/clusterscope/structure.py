"""Structural predicates of the mutable part of a quiver.

All predicates look only at arrows between mutable vertices.
"""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
from fractions import Fraction
from typing import List, Set, Tuple

# Installed
import dataclassy
import networkx as nx

# Local
from .const import StopPredicate
from .quiver import IceQuiver


### CLASSES
### ============================================================================
@dataclassy.dataclass(slots=True, frozen=True)
class StructuralClass:
    """Structural flags of the mutable part of a quiver.

    The flags always satisfy `isolated => a_type => finite_type => tree_type => acyclic`.
    """

    isolated: bool
    a_type: bool
    finite_type: bool
    tree_type: bool
    acyclic: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "isolated": self.isolated,
            "a_type": self.a_type,
            "finite_type": self.finite_type,
            "tree_type": self.tree_type,
            "acyclic": self.acyclic,
        }


### FUNCTIONS
### ============================================================================
def mutable_digraph(q: IceQuiver) -> nx.DiGraph:
    """Directed graph on the mutable vertices with an edge `i -> j` whenever `Q[i][j] > 0`.

    Edges carry the arrow multiplicity as `weight`.
    """
    graph = nx.DiGraph()
    mutable = q.mutable
    graph.add_nodes_from(mutable)
    for i in mutable:
        for j in mutable:
            if q.matrix[i][j] > 0:
                graph.add_edge(i, j, weight=q.matrix[i][j])
    return graph


## Predicates
## -----------------------------------------------------------------------------
def is_acyclic(q: IceQuiver) -> bool:
    return nx.is_directed_acyclic_graph(mutable_digraph(q))


def is_isolated(q: IceQuiver) -> bool:
    return mutable_digraph(q).number_of_edges() == 0


def is_tree_type(q: IceQuiver) -> bool:
    graph = mutable_digraph(q)
    if graph.number_of_nodes() == 0:
        return True
    if any(w != 1 for _, _, w in graph.edges(data="weight")):
        return False
    return nx.is_forest(graph.to_undirected())


def is_finite_type(q: IceQuiver) -> bool:
    """True when every component of the underlying graph is an ADE Dynkin diagram."""
    if not is_tree_type(q):
        return False
    underlying = mutable_digraph(q).to_undirected()
    return all(
        _is_dynkin_tree(underlying.subgraph(component))
        for component in nx.connected_components(underlying)
    )


def is_a_type(q: IceQuiver) -> bool:
    """True when every component is a path, in any orientation."""
    if not is_tree_type(q):
        return False
    underlying = mutable_digraph(q).to_undirected()
    return all(degree <= 2 for _, degree in underlying.degree())


def structural_class(q: IceQuiver) -> StructuralClass:
    return StructuralClass(
        isolated=is_isolated(q),
        a_type=is_a_type(q),
        finite_type=is_finite_type(q),
        tree_type=is_tree_type(q),
        acyclic=is_acyclic(q),
    )


def satisfies(q: IceQuiver, predicate: StopPredicate) -> bool:
    """Check one of the local stop predicates."""
    check = {
        StopPredicate.ACYCLIC: is_acyclic,
        StopPredicate.TREE: is_tree_type,
        StopPredicate.FINITE: is_finite_type,
        StopPredicate.A_TYPE: is_a_type,
        StopPredicate.ISOLATED: is_isolated,
    }[predicate]
    return check(q)


## Covering pairs
## -----------------------------------------------------------------------------
def cycle_vertices(q: IceQuiver) -> Set[int]:
    """Mutable vertices lying on a directed cycle of the mutable part."""
    graph = mutable_digraph(q)
    return {
        v for component in nx.strongly_connected_components(graph) if len(component) > 1
        for v in component
    }


def covering_pairs(q: IceQuiver) -> List[Tuple[int, int]]:
    """Arrows between mutable vertices that lie in no bi-infinite path.

    An arrow `a -> b` lies in a bi-infinite path exactly when `a` is reachable
    from a directed cycle and `b` reaches a directed cycle (paths of length 0
    included). Pairs are returned in ascending order.
    """
    graph = mutable_digraph(q)
    cycles = cycle_vertices(q)
    upstream_reached: Set[int] = set(cycles)
    downstream_reaching: Set[int] = set(cycles)
    for v in cycles:
        upstream_reached |= nx.descendants(graph, v)
        downstream_reaching |= nx.ancestors(graph, v)
    return sorted(
        (a, b)
        for a, b in graph.edges()
        if not (a in upstream_reached and b in downstream_reaching)
    )


def sinks(q: IceQuiver) -> List[int]:
    """Mutable vertices with an incoming mutable arrow and no outgoing one.

    Isolated vertices are neither sinks nor sources.
    """
    graph = mutable_digraph(q)
    return sorted(v for v in graph if graph.in_degree(v) > 0 and graph.out_degree(v) == 0)


def sources(q: IceQuiver) -> List[int]:
    """Mutable vertices with an outgoing mutable arrow and no incoming one."""
    graph = mutable_digraph(q)
    return sorted(v for v in graph if graph.out_degree(v) > 0 and graph.in_degree(v) == 0)


### PRIVATE
### ============================================================================
def _is_dynkin_tree(tree: nx.Graph) -> bool:
    """Recognise A, D and E among trees with simple edges."""
    branch_points = [v for v, degree in tree.degree() if degree >= 3]
    if not branch_points:
        return True
    if len(branch_points) > 1 or tree.degree(branch_points[0]) != 3:
        return False
    centre = branch_points[0]
    arms = []
    for start in tree.neighbors(centre):
        length, previous, current = 1, centre, start
        while True:
            onward = [u for u in tree.neighbors(current) if u != previous]
            if not onward:
                break
            previous, current = current, onward[0]
            length += 1
        arms.append(length)
    # 1/(p+1) + 1/(q+1) + 1/(r+1) > 1 selects D_n, E_6, E_7 and E_8
    return sum(Fraction(1, arm + 1) for arm in arms) > 1
