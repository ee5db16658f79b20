"""Text formats for quivers (`.qvr`) and surface descriptors.

Both formats are line oriented, UTF-8, use 1-based vertex labels and end with
a line reading `end`. Blank lines and lines starting with `#` are ignored.
"""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
from typing import Iterable, Iterator, List, Set, Tuple

# Local
from .quiver import IceQuiver, QuiverError, from_arrows
from .surface import Component, SurfaceDescriptor


### CLASSES
### ============================================================================
class QuiverFormatError(QuiverError):
    """Raised when `.qvr` text cannot be parsed.

    Attributes:
        line: 1-based line number of the offending line, `None` at end of input
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        where = f"line {line}: " if line is not None else "end of input: "
        super().__init__(where + message)
        self.line = line
        return


class SurfaceFormatError(ValueError):
    """Raised when surface descriptor text cannot be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        where = f"line {line}: " if line is not None else "end of input: "
        super().__init__(where + message)
        self.line = line
        return


class LineReader:
    """Numbered iterator over non-blank, non-comment lines."""

    def __init__(self, lines: Iterable[str], error: type) -> None:
        self._lines: Iterator[Tuple[int, str]] = (
            (number, line.strip())
            for number, line in enumerate(lines, start=1)
            if line.strip() and not line.strip().startswith("#")
        )
        self.error = error
        self.number: int | None = None
        return

    def next(self, expected: str) -> str:
        try:
            self.number, line = next(self._lines)
        except StopIteration:
            raise self.error(f"expected {expected}") from None
        return line

    def fail(self, message: str) -> Exception:
        return self.error(message, self.number)


### FUNCTIONS
### ============================================================================
## Quivers
## -----------------------------------------------------------------------------
def format_quiver(q: IceQuiver, name: str = "quiver") -> str:
    """Render `q` in the `.qvr` format (with a trailing newline)."""
    frozen = " ".join(str(v + 1) for v in sorted(q.frozen)) or "none"
    lines = [f"quiver {name}", f"vertices {q.n}", f"frozen {frozen}", "arrows"]
    lines.extend(f"{i + 1} {j + 1} {m}" for i, j, m in q.arrows())
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_quiver(text: str) -> Tuple[str, IceQuiver]:
    """Parse a single `.qvr` document.

    Returns:
        the quiver name and the quiver

    Raises:
        QuiverFormatError: malformed input, loops, repeated pairs, pairs listed in both
            directions or trailing content after `end`
    """
    lines = LineReader(text.splitlines(), QuiverFormatError)
    result = read_quiver_block(lines)
    try:
        extra = lines.next("nothing")
    except QuiverFormatError:
        return result
    raise lines.fail(f"unexpected content after end: {extra!r}")


def read_quiver_block(lines: LineReader) -> Tuple[str, IceQuiver]:
    """Consume one `.qvr` block from `lines`, up to and including `end`."""
    header = lines.next("'quiver <name>'").split(maxsplit=1)
    if header[0] != "quiver":
        raise lines.fail(f"expected 'quiver <name>', got {' '.join(header)!r}")
    name = header[1] if len(header) > 1 else "quiver"

    n = _keyword_int(lines, "vertices")
    if n < 0:
        raise lines.fail(f"negative vertex count {n}")

    fields = lines.next("'frozen ...'").split()
    if fields[0] != "frozen":
        raise lines.fail(f"expected 'frozen', got {fields[0]!r}")
    frozen: List[int] = []
    if fields[1:] != ["none"]:
        for token in fields[1:]:
            v = _int(lines, token)
            if not 1 <= v <= n:
                raise lines.fail(f"frozen vertex {v} out of range 1..{n}")
            frozen.append(v)

    if lines.next("'arrows'") != "arrows":
        raise lines.fail("expected 'arrows'")

    arrows: List[Tuple[int, int, int]] = []
    seen: Set[Tuple[int, int]] = set()
    while True:
        line = lines.next("an arrow or 'end'")
        if line == "end":
            break
        parts = line.split()
        if len(parts) != 3:
            raise lines.fail(f"expected 'i j m', got {line!r}")
        i, j, m = (_int(lines, p) for p in parts)
        if i == j:
            raise lines.fail(f"loop at vertex {i}")
        if not (1 <= i <= n and 1 <= j <= n):
            raise lines.fail(f"arrow {i} {j} out of range 1..{n}")
        if m <= 0:
            raise lines.fail(f"arrow multiplicity must be positive, got {m}")
        if (i, j) in seen:
            raise lines.fail(f"pair {i} {j} listed twice")
        if (j, i) in seen:
            raise lines.fail(f"pair {i} {j} also listed as {j} {i}")
        seen.add((i, j))
        arrows.append((i, j, m))
    return name, from_arrows(n, arrows, frozen)


## Surfaces
## -----------------------------------------------------------------------------
def format_surface(d: SurfaceDescriptor) -> str:
    lines = [f"surface {d.name}"]
    for c in d.components:
        boundary = ",".join(str(b) for b in c.boundary) or "none"
        lines.append(f"component genus={c.genus} boundary={boundary} punctures={c.punctures}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_surface(text: str) -> SurfaceDescriptor:
    """Parse a surface descriptor.

    Only the syntax is checked here, use `validate_surface` for the exclusions.

    Raises:
        SurfaceFormatError: malformed input
    """
    lines = LineReader(text.splitlines(), SurfaceFormatError)
    header = lines.next("'surface <name>'").split(maxsplit=1)
    if header[0] != "surface":
        raise lines.fail(f"expected 'surface <name>', got {' '.join(header)!r}")
    name = header[1] if len(header) > 1 else "surface"

    components: List[Component] = []
    while True:
        line = lines.next("'component ...' or 'end'")
        if line == "end":
            break
        parts = line.split()
        if parts[0] != "component":
            raise lines.fail(f"expected 'component', got {parts[0]!r}")
        values = {}
        for token in parts[1:]:
            key, sep, value = token.partition("=")
            if not sep or key not in ("genus", "boundary", "punctures") or key in values:
                raise lines.fail(f"bad component field {token!r}")
            values[key] = value
        if len(values) != 3:
            raise lines.fail("component needs genus=, boundary= and punctures=")
        boundary: Tuple[int, ...] = ()
        if values["boundary"] != "none":
            boundary = tuple(_int(lines, b) for b in values["boundary"].split(","))
        components.append(
            Component(
                genus=_int(lines, values["genus"]),
                boundary=boundary,
                punctures=_int(lines, values["punctures"]),
            )
        )
    return SurfaceDescriptor(tuple(components), name)


## Shared
## -----------------------------------------------------------------------------
def parse_vertex_list(text: str) -> List[int]:
    """Parse `k1,k2,...` (1-based, possibly empty) into 0-based vertices."""
    text = text.strip()
    if not text:
        return []
    try:
        vertices = [int(token) for token in text.split(",")]
    except ValueError:
        raise ValueError(f"invalid vertex list {text!r}") from None
    if any(v < 1 for v in vertices):
        raise ValueError(f"vertex labels are 1-based: {text!r}")
    return [v - 1 for v in vertices]


def format_vertex_list(vertices: Iterable[int]) -> str:
    return ",".join(str(v + 1) for v in vertices)


### PRIVATE
### ============================================================================
def _int(lines: LineReader, token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise lines.fail(f"expected an integer, got {token!r}") from None


def _keyword_int(lines: LineReader, keyword: str) -> int:
    parts = lines.next(f"'{keyword} <n>'").split()
    if len(parts) != 2 or parts[0] != keyword:
        raise lines.fail(f"expected '{keyword} <n>'")
    return _int(lines, parts[1])
