### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Installed
import pytest

# Package
from clusterscope.surface import (
    Component,
    LocalAcyclicity,
    SurfaceDescriptor,
    SurfaceError,
    classify_component,
    classify_surface,
    component_rank,
    surface_rank,
    validate_surface,
)

### SETUP
### ============================================================================
def surface(*components: Component) -> SurfaceDescriptor:
    return SurfaceDescriptor(tuple(components), "test")


MARKOV = Component(genus=1, punctures=1)
TORUS_ONE_POINT = Component(genus=1, boundary=(1,))
TORUS_TWO_POINTS = Component(genus=1, boundary=(2,))
PUNCTURED_DISC = Component(boundary=(2,), punctures=3)
OPEN_CASE = Component(genus=1, boundary=(1,), punctures=1)


### TESTS
### ============================================================================
@pytest.mark.parametrize(
    "component, rank",
    [
        (MARKOV, 3),
        (TORUS_ONE_POINT, 4),
        (TORUS_TWO_POINTS, 5),
        (Component(punctures=4), 6),
        (PUNCTURED_DISC, 8),
        (Component(boundary=(4,)), 1),
        (Component(boundary=(1, 1)), 2),
    ],
)
def test_rank(component, rank):
    assert component_rank(component) == rank
    assert surface_rank(surface(component)) == rank
    return


def test_rank_adds_over_components():
    assert surface_rank(surface(MARKOV, TORUS_TWO_POINTS)) == 8
    return


@pytest.mark.parametrize(
    "component",
    [
        Component(),
        Component(punctures=3),
        Component(boundary=(1,)),
        Component(boundary=(1,), punctures=1),
        Component(boundary=(2,)),
        Component(genus=-1, punctures=1),
        Component(genus=1, punctures=-1),
        Component(genus=1, boundary=(0,), punctures=1),
    ],
)
def test_invalid_surfaces(component):
    assert validate_surface(surface(component))
    with pytest.raises(SurfaceError) as excinfo:
        surface_rank(surface(component))
    assert excinfo.value.violations
    with pytest.raises(SurfaceError):
        classify_surface(surface(component))
    return


def test_valid_small_surfaces():
    for component in [Component(boundary=(3,)), Component(boundary=(2,), punctures=1)]:
        assert validate_surface(surface(component)) == []
    assert validate_surface(SurfaceDescriptor(())) == ["surface has no components"]
    return


@pytest.mark.parametrize(
    "component, verdict, reason",
    [
        (MARKOV, LocalAcyclicity.NOT_LOCALLY_ACYCLIC, "Thm-noboundary"),
        (Component(genus=2, punctures=1), LocalAcyclicity.NOT_LOCALLY_ACYCLIC, "Thm-noboundary"),
        (TORUS_ONE_POINT, LocalAcyclicity.NOT_LOCALLY_ACYCLIC, "Thm-oneboundary"),
        (PUNCTURED_DISC, LocalAcyclicity.LOCALLY_ACYCLIC, "Thm-inadisc"),
        (Component(boundary=(1, 1)), LocalAcyclicity.LOCALLY_ACYCLIC, "Thm-inadisc"),
        (TORUS_TWO_POINTS, LocalAcyclicity.LOCALLY_ACYCLIC, "Thm-atleast2"),
        (Component(genus=2, boundary=(1, 1)), LocalAcyclicity.LOCALLY_ACYCLIC, "Thm-atleast2"),
        (OPEN_CASE, LocalAcyclicity.UNKNOWN, "Rem-unknown"),
    ],
)
def test_classify_component(component, verdict, reason):
    result = classify_component(component)
    assert result.verdict is verdict
    assert result.reason == reason
    return


@pytest.mark.parametrize(
    "components, verdict",
    [
        ((TORUS_TWO_POINTS, PUNCTURED_DISC), LocalAcyclicity.LOCALLY_ACYCLIC),
        ((TORUS_TWO_POINTS, MARKOV), LocalAcyclicity.NOT_LOCALLY_ACYCLIC),
        ((TORUS_TWO_POINTS, OPEN_CASE), LocalAcyclicity.UNKNOWN),
        ((OPEN_CASE, TORUS_ONE_POINT), LocalAcyclicity.NOT_LOCALLY_ACYCLIC),
    ],
)
def test_classify_surface(components, verdict):
    result = classify_surface(surface(*components))
    assert result.verdict is verdict
    assert len(result.reasons) == len(components)
    return
