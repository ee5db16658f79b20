### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
import random

# Installed
import pytest

# Package
from clusterscope.catalog import catalog_quiver
from clusterscope.quiver import (
    IceQuiver,
    QuiverError,
    delete_vertices,
    exchange_matrix,
    freeze,
    from_arrows,
    mutable_part,
    mutate_path,
    mutate_quiver,
    relabel,
    zero_quiver,
)

### SETUP
### ============================================================================
A2 = from_arrows(2, [(1, 2, 1)])
THREE_CYCLE = from_arrows(3, [(1, 2, 1), (2, 3, 1), (3, 1, 1)])


def random_ice_quiver(rng: random.Random) -> IceQuiver:
    n = rng.randint(1, 8)
    arrows = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            m = rng.randint(-3, 3)
            if m > 0:
                arrows.append((i, j, m))
            elif m < 0:
                arrows.append((j, i, -m))
    frozen = [v for v in range(1, n + 1) if rng.random() < 0.3]
    return from_arrows(n, arrows, frozen=frozen)


### TESTS
### ============================================================================
def test_from_arrows_accumulates_and_cancels():
    q = from_arrows(3, [(1, 2, 1), (1, 2, 2), (2, 1, 1), (2, 3, 1)])
    assert q.matrix[0][1] == 2
    assert q.matrix[1][0] == -2
    assert q.arrows() == [(0, 1, 2), (1, 2, 1)]
    return


@pytest.mark.parametrize(
    "matrix",
    [
        ((0, 1), (1, 0)),
        ((1, 0), (0, 0)),
        ((0, 1, 0), (-1, 0)),
    ],
)
def test_invalid_matrix(matrix):
    with pytest.raises(QuiverError):
        IceQuiver(matrix)
    return


@pytest.mark.parametrize(
    "arrows",
    [
        [(1, 1, 1)],
        [(1, 3, 1)],
        [(0, 1, 1)],
    ],
)
def test_invalid_arrows(arrows):
    with pytest.raises(QuiverError):
        from_arrows(2, arrows)
    return


def test_frozen_out_of_range():
    with pytest.raises(QuiverError):
        from_arrows(2, [(1, 2, 1)], frozen=[3])
    return


def test_mutation_reverses_incident_arrows():
    q = mutate_quiver(A2, 0)
    assert q.arrows() == [(1, 0, 1)]
    return


def test_mutation_of_three_cycle_is_acyclic():
    q = mutate_quiver(THREE_CYCLE, 0)
    # the composite 3 -> 2 cancels 2 -> 3
    assert sorted(q.arrows()) == [(0, 2, 1), (1, 0, 1)]
    return


def test_mutation_is_an_involution():
    for name in ["smallex", "markov", "x6", "torus2"]:
        q = catalog_quiver(name)
        for k in q.mutable:
            assert mutate_quiver(mutate_quiver(q, k), k) == q
    return


def test_mutation_is_an_involution_on_random_quivers():
    rng = random.Random(17)
    for _ in range(1000):
        q = random_ice_quiver(rng)
        for k in q.mutable:
            assert mutate_quiver(mutate_quiver(q, k), k) == q
    return


def test_markov_mutation_keeps_double_arrows():
    q = catalog_quiver("markov")
    p = mutate_quiver(q, 0)
    assert sorted(abs(x) for row in p.matrix for x in row if x) == [2] * 6
    return


def test_mutation_updates_frozen_entries():
    q = from_arrows(3, [(1, 2, 1), (3, 1, 1)], frozen=[3])
    p = mutate_quiver(q, 0)
    assert p.matrix[2][1] == 1
    assert p.frozen == frozenset({2})
    return


@pytest.mark.parametrize("k", [-1, 2, 5])
def test_mutation_out_of_range(k):
    with pytest.raises(QuiverError):
        mutate_quiver(A2, k)
    return


def test_mutation_at_frozen_vertex():
    q = freeze(A2, [1])
    with pytest.raises(QuiverError):
        mutate_quiver(q, 1)
    return


def test_mutate_path():
    q = mutate_path(THREE_CYCLE, [0, 1, 1, 0])
    assert q == THREE_CYCLE
    assert mutate_path(THREE_CYCLE, []) == THREE_CYCLE
    return


def test_freeze_keeps_matrix():
    q = freeze(THREE_CYCLE, [0, 2])
    assert q.matrix == THREE_CYCLE.matrix
    assert q.mutable == (1,)
    with pytest.raises(QuiverError):
        freeze(q, [0])
    return


def test_all_frozen_quiver_is_trivial():
    q = freeze(A2, [0, 1])
    assert q.is_trivial
    assert exchange_matrix(q) == ()
    assert not A2.is_trivial
    return


def test_delete_vertices():
    q = catalog_quiver("smallex")
    p, index_map = delete_vertices(q, [3])
    assert p == THREE_CYCLE
    assert index_map == {0: 0, 1: 1, 2: 2}
    with pytest.raises(QuiverError):
        delete_vertices(q, [4])
    return


def test_mutable_part():
    q = freeze(catalog_quiver("smallex"), [0])
    p = mutable_part(q)
    assert p.n == 3
    assert p.frozen == frozenset()
    assert sorted(p.arrows()) == [(0, 1, 1), (0, 2, 1), (1, 2, 1)]
    return


def test_relabel():
    q = from_arrows(3, [(1, 2, 1)], frozen=[3])
    p = relabel(q, [2, 1, 0])
    assert p.arrows() == [(2, 1, 1)]
    assert p.frozen == frozenset({0})
    with pytest.raises(QuiverError):
        relabel(q, [0, 0, 1])
    return


def test_zero_quiver_and_neighbours():
    q = zero_quiver(3, frozen=[2])
    assert q.arrows() == []
    assert q.mutable == (0, 1)
    assert THREE_CYCLE.neighbours(0) == [1, 2]
    return


def test_exchange_matrix_rows():
    q = from_arrows(3, [(1, 2, 1), (2, 3, 2)], frozen=[3])
    assert exchange_matrix(q) == ((0, 1, 0), (-1, 0, 2))
    return
