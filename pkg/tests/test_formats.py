### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Installed
import pytest

# Package
from clusterscope.catalog import catalog_entry, catalog_names
from clusterscope.formats import (
    QuiverFormatError,
    SurfaceFormatError,
    format_quiver,
    format_surface,
    format_vertex_list,
    parse_quiver,
    parse_surface,
    parse_vertex_list,
)
from clusterscope.quiver import QuiverError, from_arrows
from clusterscope.surface import Component

### SETUP
### ============================================================================
SMALLEX_TEXT = """quiver smallex
vertices 4
frozen none
arrows
1 2 1
1 4 1
2 3 1
2 4 1
3 1 1
3 4 1
end
"""


### TESTS
### ============================================================================
def test_format_quiver():
    q = from_arrows(3, [(1, 2, 1), (3, 2, 2)], frozen=[3])
    assert format_quiver(q, "demo") == (
        "quiver demo\nvertices 3\nfrozen 3\narrows\n1 2 1\n3 2 2\nend\n"
    )
    return


def test_parse_quiver():
    name, q = parse_quiver(SMALLEX_TEXT)
    assert name == "smallex"
    assert q == catalog_entry("smallex").quiver
    assert format_quiver(q, name) == SMALLEX_TEXT
    return


@pytest.mark.parametrize("name", catalog_names())
def test_catalog_quivers_survive_the_text_format(name):
    entry = catalog_entry(name)
    assert parse_quiver(format_quiver(entry.quiver, name)) == (name, entry.quiver)
    return


def test_parse_quiver_ignores_surrounding_whitespace():
    text = "quiver  spaced \n vertices 2\nfrozen none\n arrows\n1 2 1 \nend\n\n"
    name, q = parse_quiver(text)
    assert q.arrows() == [(0, 1, 1)]
    return


@pytest.mark.parametrize(
    "text, line",
    [
        ("", None),
        ("graph g\n", 1),
        ("quiver q\nvertices x\n", 2),
        ("quiver q\nvertices 2\nfrozen 3\n", 3),
        ("quiver q\nvertices 2\nfrozen none\nedges\n", 4),
        ("quiver q\nvertices 2\nfrozen none\narrows\n1 1 1\nend\n", 5),
        ("quiver q\nvertices 2\nfrozen none\narrows\n1 3 1\nend\n", 5),
        ("quiver q\nvertices 2\nfrozen none\narrows\n1 2 0\nend\n", 5),
        ("quiver q\nvertices 2\nfrozen none\narrows\n1 2\nend\n", 5),
        ("quiver q\nvertices 2\nfrozen none\narrows\n1 2 1\n1 2 1\nend\n", 6),
        ("quiver q\nvertices 2\nfrozen none\narrows\n1 2 1\n2 1 1\nend\n", 6),
        ("quiver q\nvertices 2\nfrozen none\narrows\n1 2 1\n", None),
        ("quiver q\nvertices 2\nfrozen none\narrows\nend\nquiver r\n", 6),
    ],
)
def test_parse_quiver_errors(text, line):
    with pytest.raises(QuiverFormatError) as excinfo:
        parse_quiver(text)
    assert excinfo.value.line == line
    assert isinstance(excinfo.value, QuiverError)
    return


def test_format_and_parse_surface():
    text = "surface pants\ncomponent genus=0 boundary=1,2 punctures=1\nend\n"
    d = parse_surface(text)
    assert d.name == "pants"
    assert d.components == (Component(genus=0, boundary=(1, 2), punctures=1),)
    assert format_surface(d) == text
    return


def test_parse_surface_without_boundary():
    d = parse_surface("surface m\ncomponent genus=1 boundary=none punctures=1\nend\n")
    assert d.components[0].boundary == ()
    return


@pytest.mark.parametrize(
    "text",
    [
        "quiver q\n",
        "surface s\nhandle genus=1\nend\n",
        "surface s\ncomponent genus=1 boundary=none\nend\n",
        "surface s\ncomponent genus=1 boundary=none punctures=1 colour=red\nend\n",
        "surface s\ncomponent genus=a boundary=none punctures=1\nend\n",
        "surface s\ncomponent genus=1 boundary=none punctures=1\n",
    ],
)
def test_parse_surface_errors(text):
    with pytest.raises(SurfaceFormatError):
        parse_surface(text)
    return


@pytest.mark.parametrize(
    "text, expected",
    [
        ("", []),
        ("1", [0]),
        ("3,1,2", [2, 0, 1]),
        (" 2,2 ", [1, 1]),
    ],
)
def test_parse_vertex_list(text, expected):
    assert parse_vertex_list(text) == expected
    return


@pytest.mark.parametrize("text", ["0", "1,,2", "a", "-1"])
def test_parse_vertex_list_errors(text):
    with pytest.raises(ValueError):
        parse_vertex_list(text)
    return


def test_format_vertex_list():
    assert format_vertex_list([2, 0, 1]) == "3,1,2"
    assert format_vertex_list([]) == ""
    return
