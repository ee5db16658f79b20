"""Catalog of named quivers.

Every entry is a fixed quiver, optionally tied to the marked surface it
triangulates. Vertex labels are 1-based as in the text formats.
"""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
from typing import Dict, List, Sequence, Tuple

# Installed
import dataclassy

# Local
from .quiver import IceQuiver, from_arrows
from .seed import Seed, initial_seed
from .surface import Component, SurfaceDescriptor


### CLASSES
### ============================================================================
class UnknownCatalogEntry(KeyError):
    """Raised when a catalog name does not exist."""


@dataclassy.dataclass(slots=True, frozen=True)
class CatalogEntry:
    """A named quiver.

    Attributes:
        name: catalog name
        description: one line description
        quiver: the quiver
        surface: the marked surface the quiver comes from, if any
    """

    name: str
    description: str
    quiver: IceQuiver
    surface: SurfaceDescriptor | None = None


### CONSTANTS
### ============================================================================
def _entry(
    name: str,
    description: str,
    n: int,
    arrows: Sequence[Tuple[int, int, int]],
    frozen: Sequence[int] = (),
    surface: Sequence[Component] | None = None,
) -> CatalogEntry:
    descriptor = SurfaceDescriptor(tuple(surface), name) if surface is not None else None
    return CatalogEntry(name, description, from_arrows(n, arrows, frozen), descriptor)


_SMALLEX_ARROWS = [(1, 2, 1), (2, 3, 1), (3, 1, 1), (1, 4, 1), (2, 4, 1), (3, 4, 1)]
_TORUS1_ARROWS = [(1, 2, 1), (2, 3, 1), (1, 3, 1), (4, 1, 1), (4, 2, 1), (3, 4, 2)]
_OCTET_ARROWS = [
    (1, 3, 1), (3, 2, 1), (3, 4, 1), (4, 6, 1), (6, 5, 1), (5, 3, 1), (8, 6, 1), (6, 7, 1),
]  # fmt: skip
_PUNCTURED_DISC = [Component(genus=0, boundary=(2,), punctures=3)]

_ENTRIES: List[CatalogEntry] = [
    _entry("point", "one mutable vertex without arrows", 1, []),
    _entry("a2", "Dynkin A2, 1 -> 2", 2, [(1, 2, 1)]),
    _entry("a3cycle", "directed 3-cycle", 3, [(1, 2, 1), (2, 3, 1), (3, 1, 1)]),
    _entry("smallex", "3-cycle with every cycle vertex pointing at vertex 4", 4, _SMALLEX_ARROWS),
    _entry("banff1_top", "root of the smallex certificate", 4, _SMALLEX_ARROWS),
    _entry(
        "markov",
        "Markov quiver, double arrows around a 3-cycle",
        3,
        [(1, 2, 2), (2, 3, 2), (3, 1, 2)],
        surface=[Component(genus=1, boundary=(), punctures=1)],
    ),
    _entry(
        "torus1",
        "torus with one boundary circle carrying one marked point",
        4,
        _TORUS1_ARROWS,
        surface=[Component(genus=1, boundary=(1,), punctures=0)],
    ),
    _entry(
        "torus2",
        "torus with one boundary circle carrying two marked points",
        5,
        _TORUS1_ARROWS + [(5, 1, 1), (2, 5, 1)],
        surface=[Component(genus=1, boundary=(2,), punctures=0)],
    ),
    _entry(
        "sphere4",
        "sphere with four punctures",
        6,
        [
            (1, 2, 1), (2, 3, 1), (3, 1, 1), (4, 1, 1), (1, 5, 1), (5, 3, 1),
            (3, 6, 1), (6, 2, 1), (2, 4, 1), (5, 4, 1), (6, 5, 1), (4, 6, 1),
        ],  # fmt: skip
        surface=[Component(genus=0, boundary=(), punctures=4)],
    ),
    _entry(
        "x6",
        "X6, two double-arrow petals and a pendant arrow at the centre",
        6,
        [(1, 2, 1), (2, 4, 2), (4, 1, 1), (1, 3, 1), (3, 5, 2), (5, 1, 1), (1, 6, 1)],
    ),
    _entry(
        "x7",
        "X7, three double-arrow petals at the centre",
        7,
        [
            (1, 2, 1), (2, 4, 2), (4, 1, 1), (3, 1, 1), (5, 3, 2), (1, 5, 1),
            (1, 7, 1), (7, 6, 2), (6, 1, 1),
        ],  # fmt: skip
    ),
    _entry(
        "triang_a",
        "triangulation quiver of a disc with two boundary points and three punctures",
        8,
        [
            (1, 4, 1), (4, 7, 1), (8, 5, 1), (5, 2, 1), (1, 2, 1), (2, 3, 1), (3, 1, 1),
            (8, 7, 1), (7, 6, 1), (6, 8, 1), (3, 5, 1), (5, 6, 1), (6, 4, 1), (4, 3, 1),
        ],  # fmt: skip
        surface=_PUNCTURED_DISC,
    ),
    _entry(
        "triang_b",
        "second triangulation quiver of the same punctured disc",
        8,
        _OCTET_ARROWS,
        surface=_PUNCTURED_DISC,
    ),
    _entry(
        "triang_c",
        "third triangulation quiver of the same punctured disc",
        8,
        [
            (1, 3, 1), (2, 3, 1), (4, 3, 1), (6, 4, 1), (6, 5, 1), (5, 3, 1),
            (6, 8, 1), (6, 7, 1), (3, 6, 1),
        ],  # fmt: skip
        surface=_PUNCTURED_DISC,
    ),
    _entry(
        "octet",
        "locally acyclic gallery quiver on eight vertices",
        8,
        _OCTET_ARROWS,
        surface=_PUNCTURED_DISC,
    ),
]

CATALOG: Dict[str, CatalogEntry] = {entry.name: entry for entry in _ENTRIES}

LOCALLY_ACYCLIC_GALLERY: Tuple[str, ...] = ("smallex", "torus2", "octet", "x6")
NOT_LOCALLY_ACYCLIC_GALLERY: Tuple[str, ...] = ("markov", "torus1", "sphere4", "x7")


### FUNCTIONS
### ============================================================================
def catalog_names() -> List[str]:
    return sorted(CATALOG)


def catalog_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownCatalogEntry(f"unknown catalog quiver {name!r}") from None


def catalog_quiver(name: str) -> IceQuiver:
    """Return the named quiver.

    Raises:
        UnknownCatalogEntry: `name` is not in the catalog
    """
    return catalog_entry(name).quiver


def catalog_seed(name: str) -> Seed:
    """Initial seed of the named quiver."""
    return initial_seed(catalog_quiver(name))
