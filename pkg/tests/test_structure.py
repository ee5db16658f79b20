### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
import random
from typing import Dict, List, Set, Tuple

# Installed
import pytest

# Package
from clusterscope.catalog import catalog_quiver
from clusterscope.const import StopPredicate
from clusterscope.quiver import IceQuiver, freeze, from_arrows
from clusterscope.structure import (
    covering_pairs,
    cycle_vertices,
    is_a_type,
    is_acyclic,
    is_finite_type,
    is_isolated,
    is_tree_type,
    satisfies,
    sinks,
    sources,
    structural_class,
)

### SETUP
### ============================================================================
D4 = from_arrows(4, [(1, 2, 1), (1, 3, 1), (1, 4, 1)])
AFFINE_D4 = from_arrows(5, [(1, 2, 1), (1, 3, 1), (1, 4, 1), (1, 5, 1)])
E6 = from_arrows(6, [(1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (3, 6, 1)])
KRONECKER = from_arrows(2, [(1, 2, 2)])
TAILED_CYCLE = from_arrows(4, [(1, 2, 1), (2, 3, 1), (3, 1, 1), (4, 1, 1)])


def random_ice_quiver(rng: random.Random) -> IceQuiver:
    n = rng.randint(1, 7)
    arrows = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            m = rng.randint(-2, 2)
            if m > 0:
                arrows.append((i, j, m))
            elif m < 0:
                arrows.append((j, i, -m))
    frozen = [v for v in range(1, n + 1) if rng.random() < 0.2]
    return from_arrows(n, arrows, frozen=frozen)


def reachable(successors: Dict[int, List[int]], start: int) -> Set[int]:
    """Vertices reached from `start` by a directed path, `start` included."""
    seen: Set[int] = set()
    stack = [start]
    while stack:
        v = stack.pop()
        if v not in seen:
            seen.add(v)
            stack.extend(successors[v])
    return seen


def covering_pairs_by_search(q: IceQuiver) -> List[Tuple[int, int]]:
    mutable = q.mutable
    successors = {v: [u for u in mutable if q.matrix[v][u] > 0] for v in mutable}
    reach = {v: reachable(successors, v) for v in mutable}
    on_cycle = {v for v in mutable if any(v in reach[u] for u in successors[v])}
    pairs = []
    for a in mutable:
        for b in successors[a]:
            fed_by_cycle = any(a in reach[c] for c in on_cycle)
            feeds_cycle = any(c in reach[b] for c in on_cycle)
            if not (fed_by_cycle and feeds_cycle):
                pairs.append((a, b))
    return sorted(pairs)


### TESTS
### ============================================================================
@pytest.mark.parametrize(
    "q, expected",
    [
        (catalog_quiver("point"), (True, True, True, True, True)),
        (catalog_quiver("a2"), (False, True, True, True, True)),
        (D4, (False, False, True, True, True)),
        (E6, (False, False, True, True, True)),
        (AFFINE_D4, (False, False, False, True, True)),
        (KRONECKER, (False, False, False, False, True)),
        (catalog_quiver("a3cycle"), (False, False, False, False, False)),
        (catalog_quiver("markov"), (False, False, False, False, False)),
    ],
)
def test_structural_class(q, expected):
    result = structural_class(q)
    assert (
        result.isolated,
        result.a_type,
        result.finite_type,
        result.tree_type,
        result.acyclic,
    ) == expected
    assert (
        is_isolated(q),
        is_a_type(q),
        is_finite_type(q),
        is_tree_type(q),
        is_acyclic(q),
    ) == expected
    return


def test_structural_class_as_dict():
    result = structural_class(catalog_quiver("a2")).as_dict()
    assert result["acyclic"] is True
    assert result["isolated"] is False
    assert len(result) == 5
    return


def test_predicates_ignore_frozen_vertices():
    q = freeze(catalog_quiver("a3cycle"), [2])
    assert is_acyclic(q)
    assert is_a_type(q)
    assert is_isolated(freeze(catalog_quiver("a2"), [1]))
    return


def test_trivial_quiver_satisfies_everything():
    q = freeze(catalog_quiver("a2"), [0, 1])
    for predicate in StopPredicate:
        assert satisfies(q, predicate)
    return


@pytest.mark.parametrize(
    "predicate, expected",
    [
        (StopPredicate.ACYCLIC, True),
        (StopPredicate.TREE, True),
        (StopPredicate.FINITE, False),
        (StopPredicate.A_TYPE, False),
        (StopPredicate.ISOLATED, False),
    ],
)
def test_satisfies(predicate, expected):
    assert satisfies(AFFINE_D4, predicate) is expected
    return


@pytest.mark.parametrize(
    "name, expected",
    [
        ("a2", [(0, 1)]),
        ("a3cycle", []),
        ("smallex", [(0, 3), (1, 3), (2, 3)]),
        ("markov", []),
        ("x6", [(0, 5)]),
        ("x7", []),
    ],
)
def test_covering_pairs(name, expected):
    assert covering_pairs(catalog_quiver(name)) == expected
    return


def test_covering_pair_into_a_cycle():
    assert covering_pairs(TAILED_CYCLE) == [(3, 0)]
    return


def test_covering_pairs_skip_frozen_arrows():
    q = freeze(catalog_quiver("smallex"), [3])
    assert covering_pairs(q) == []
    return


def test_cycle_vertices():
    assert cycle_vertices(catalog_quiver("smallex")) == {0, 1, 2}
    assert cycle_vertices(D4) == set()
    return


def test_sinks_and_sources():
    assert sinks(D4) == [1, 2, 3]
    assert sources(D4) == [0]
    assert sinks(catalog_quiver("point")) == []
    assert sources(catalog_quiver("point")) == []
    assert sinks(catalog_quiver("smallex")) == [3]
    return


def test_covering_pairs_match_path_search():
    rng = random.Random(31)
    for _ in range(500):
        q = random_ice_quiver(rng)
        assert covering_pairs(q) == covering_pairs_by_search(q)
    return


def test_sinks_and_sources_give_covering_pairs():
    rng = random.Random(37)
    for _ in range(500):
        q = random_ice_quiver(rng)
        pairs = covering_pairs(q)
        for b in sinks(q):
            assert pairs
            assert all((a, b) in pairs for a in q.mutable if q.matrix[a][b] > 0)
        for a in sources(q):
            assert pairs
            assert all((a, b) in pairs for b in q.mutable if q.matrix[a][b] > 0)
    return
