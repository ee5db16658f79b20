"""Marked surfaces: descriptors, validity, rank and the local acyclicity classifier."""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
import enum
from typing import List, Tuple

# Installed
import dataclassy

### CONSTANTS
### ============================================================================
REASON_NO_BOUNDARY = "Thm-noboundary"
REASON_ONE_MARKED_POINT = "Thm-oneboundary"
REASON_IN_A_DISC = "Thm-inadisc"
REASON_TWO_BOUNDARY_POINTS = "Thm-atleast2"
REASON_UNKNOWN = "Rem-unknown"


class LocalAcyclicity(enum.Enum):
    LOCALLY_ACYCLIC = "locally-acyclic"
    NOT_LOCALLY_ACYCLIC = "not-locally-acyclic"
    UNKNOWN = "unknown"


### CLASSES
### ============================================================================
class SurfaceError(ValueError):
    """Raised when an operation needs a valid surface descriptor and did not get one.

    Attributes:
        violations: every validity violation of the descriptor
    """

    def __init__(self, violations: List[str]) -> None:
        super().__init__("invalid surface: " + "; ".join(violations))
        self.violations = violations
        return


@dataclassy.dataclass(slots=True, frozen=True)
class Component:
    """One connected component of a marked surface.

    Attributes:
        genus: genus `g`
        boundary: number of marked points on each boundary circle
        punctures: number of interior marked points `p`
    """

    genus: int = 0
    boundary: Tuple[int, ...] = ()
    punctures: int = 0

    @property
    def circles(self) -> int:
        """Number of boundary circles `h`."""
        return len(self.boundary)

    @property
    def boundary_points(self) -> int:
        return sum(self.boundary)

    @property
    def marked_points(self) -> int:
        return self.boundary_points + self.punctures


@dataclassy.dataclass(slots=True, frozen=True)
class SurfaceDescriptor:
    components: Tuple[Component, ...]
    name: str = "surface"

    @property
    def marked_points(self) -> int:
        return sum(c.marked_points for c in self.components)


@dataclassy.dataclass(slots=True, frozen=True)
class ComponentClassification:
    verdict: LocalAcyclicity
    reason: str


@dataclassy.dataclass(slots=True, frozen=True)
class SurfaceClassification:
    """Classification of a whole surface.

    The verdict is `LOCALLY_ACYCLIC` when every component is,
    `NOT_LOCALLY_ACYCLIC` when some component is, and `UNKNOWN` otherwise.
    """

    verdict: LocalAcyclicity
    components: Tuple[ComponentClassification, ...]

    @property
    def reasons(self) -> List[str]:
        return [c.reason for c in self.components]


### FUNCTIONS
### ============================================================================
def validate_surface(d: SurfaceDescriptor) -> List[str]:
    """List every validity violation of `d`; an empty list means valid."""
    violations: List[str] = []
    if not d.components:
        violations.append("surface has no components")
    for index, c in enumerate(d.components, start=1):
        where = f"component {index}"
        if c.genus < 0:
            violations.append(f"{where}: negative genus {c.genus}")
        if c.punctures < 0:
            violations.append(f"{where}: negative puncture count {c.punctures}")
        for circle, count in enumerate(c.boundary, start=1):
            if count < 1:
                violations.append(f"{where}: boundary circle {circle} has no marked point")
        if c.marked_points <= 0:
            violations.append(f"{where}: no marked points")
            continue
        if c.genus == 0 and c.circles == 0 and c.punctures <= 3:
            violations.append(f"{where}: sphere with {c.punctures} punctures")
        if c.genus == 0 and c.circles == 1:
            points = c.boundary[0]
            if points == 1 and c.punctures <= 1:
                violations.append(
                    f"{where}: disc with 1 boundary point and {c.punctures} punctures"
                )
            elif points == 2 and c.punctures == 0:
                violations.append(f"{where}: disc with 2 boundary points and no punctures")
    return violations


def ensure_valid(d: SurfaceDescriptor) -> None:
    violations = validate_surface(d)
    if violations:
        raise SurfaceError(violations)
    return


def component_rank(c: Component) -> int:
    """Number of arcs in a tagged triangulation of one component: `6g + 3h + 2p + |M| - 6`."""
    return 6 * c.genus + 3 * c.circles + 2 * c.punctures + c.marked_points - 6


def surface_rank(d: SurfaceDescriptor) -> int:
    """Rank of the cluster algebra of a valid surface.

    Raises:
        SurfaceError: `d` is not valid
    """
    ensure_valid(d)
    return sum(component_rank(c) for c in d.components)


def classify_component(c: Component) -> ComponentClassification:
    """Classify one component, checking the theorems in a fixed order."""
    if c.circles == 0:
        return ComponentClassification(LocalAcyclicity.NOT_LOCALLY_ACYCLIC, REASON_NO_BOUNDARY)
    if c.marked_points == 1:
        return ComponentClassification(
            LocalAcyclicity.NOT_LOCALLY_ACYCLIC, REASON_ONE_MARKED_POINT
        )
    if c.genus == 0:
        return ComponentClassification(LocalAcyclicity.LOCALLY_ACYCLIC, REASON_IN_A_DISC)
    if c.boundary_points >= 2:
        return ComponentClassification(
            LocalAcyclicity.LOCALLY_ACYCLIC, REASON_TWO_BOUNDARY_POINTS
        )
    return ComponentClassification(LocalAcyclicity.UNKNOWN, REASON_UNKNOWN)


def classify_surface(d: SurfaceDescriptor) -> SurfaceClassification:
    """Decide local acyclicity of the cluster algebra of a valid surface.

    Raises:
        SurfaceError: `d` is not valid
    """
    ensure_valid(d)
    parts = tuple(classify_component(c) for c in d.components)
    verdicts = {p.verdict for p in parts}
    if LocalAcyclicity.NOT_LOCALLY_ACYCLIC in verdicts:
        verdict = LocalAcyclicity.NOT_LOCALLY_ACYCLIC
    elif verdicts == {LocalAcyclicity.LOCALLY_ACYCLIC}:
        verdict = LocalAcyclicity.LOCALLY_ACYCLIC
    else:
        verdict = LocalAcyclicity.UNKNOWN
    return SurfaceClassification(verdict, parts)
