"""Cover certificates and their independent verifier.

A certificate is a binary tree. Every node starts from its parent's quiver
with one vertex frozen (or deleted), mutates along a recorded path and embeds
the resulting quiver. Branch nodes name a covering pair of that quiver and
have one child per endpoint; leaves state the stop predicate their quiver
satisfies.

The verifier works on plain integer matrices with its own mutation,
reachability and predicate code, so that a bug in the search cannot make a
wrong certificate pass.
"""

### IMPORTS
### ============================================================================
# Future
from __future__ import annotations

# Standard Library
import enum
from fractions import Fraction
from typing import Dict, Iterable, List, Set, Tuple

# Installed
import dataclassy

# Local
from .canonical import canonical_form
from .const import CoverMode, StopPredicate
from .formats import (
    LineReader,
    format_quiver,
    format_vertex_list,
    parse_vertex_list,
    read_quiver_block,
)
from .laurent import LaurentError, LaurentPoly, exact_div, format_laurent, parse_laurent
from .quiver import IceQuiver, QuiverError

### CONSTANTS
### ============================================================================
Grid = List[List[int]]


class RejectReason(enum.Enum):
    MALFORMED = "malformed"
    BAD_FREEZE = "bad-freeze"
    MISSING_CHILD = "missing-child"
    INVALID_COVERING_PAIR = "invalid-covering-pair"
    LEAF_PREDICATE_FAILED = "leaf-predicate-failed"
    REPLAY_MISMATCH = "replay-mismatch"
    UNVERIFIABLE_LEAF = "unverifiable-leaf"


KNOWN = "known"


### CLASSES
### ============================================================================
class CertificateFormatError(ValueError):
    """Raised when certificate text cannot be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        where = f"line {line}: " if line is not None else "end of input: "
        super().__init__(where + message)
        self.line = line
        return


@dataclassy.dataclass(slots=True)
class CertificateNode:
    """One node of a cover certificate.

    Vertex labels are 0-based. `removed` is labelled in the parent's quiver,
    `path` and `pair` in this node's quiver.

    Attributes:
        identifier: node id, equal to its position in the certificate
        parent: parent id, `None` for the root
        removed: vertex of the parent frozen or deleted to obtain this node's start
        path: mutations applied to the start quiver
        quiver: quiver after the path
        pair: covering pair, for branch nodes
        predicate: stop predicate, for leaves certified directly
        known: leaf certified by the knowledge base
        reference: node certifying a known leaf, `None` for an external knowledge base
        cluster: cluster after the path, for seed-level certificates
        children: child ids, for branch nodes
    """

    identifier: int
    parent: int | None
    removed: int | None
    path: Tuple[int, ...]
    quiver: IceQuiver
    pair: Tuple[int, int] | None = None
    predicate: StopPredicate | None = None
    known: bool = False
    reference: int | None = None
    cluster: Tuple[LaurentPoly, ...] | None = None
    children: List[int] = dataclassy.factory(list)

    @property
    def is_branch(self) -> bool:
        return self.pair is not None


@dataclassy.dataclass(slots=True)
class BanffCertificate:
    """A finite cover certificate rooted at `root`.

    Attributes:
        name: name of the root quiver
        stop: stop predicate every directly certified leaf satisfies
        mode: whether branches freeze or delete covering pair endpoints
        root: starting quiver
        nodes: nodes in depth-first pre-order
    """

    name: str
    stop: StopPredicate
    mode: CoverMode
    root: IceQuiver
    nodes: List[CertificateNode] = dataclassy.factory(list)

    @property
    def branches(self) -> List[CertificateNode]:
        return [node for node in self.nodes if node.is_branch]

    @property
    def leaves(self) -> List[CertificateNode]:
        return [node for node in self.nodes if not node.is_branch]

    def node(self, identifier: int) -> CertificateNode:
        return self.nodes[identifier]


@dataclassy.dataclass(slots=True, frozen=True)
class Verification:
    """Verifier verdict: accepted, or rejected with a reason and the offending node."""

    accepted: bool
    reason: RejectReason | None = None
    node: int | None = None
    detail: str = ""

    def __str__(self) -> str:
        if self.accepted:
            return "Accept"
        where = f" at node {self.node}" if self.node is not None else ""
        reason = self.reason.value if self.reason else "unknown"
        return f"Reject({reason}{where}): {self.detail}"


ACCEPT = Verification(True)


### FUNCTIONS
### ============================================================================
## Text format
## -----------------------------------------------------------------------------
def format_certificate(c: BanffCertificate) -> str:
    """Render a certificate as text, see the module documentation in `docs/formats.md`."""
    removal_key = c.mode.value
    out = [f"certificate {c.name}", f"mode {c.mode.value}", f"stop {c.stop.value}", "root"]
    out.append(format_quiver(c.root, c.name).rstrip("\n"))
    for node in c.nodes:
        parent = "-" if node.parent is None else str(node.parent)
        removed = "-" if node.removed is None else str(node.removed + 1)
        path = format_vertex_list(node.path)
        if node.pair is not None:
            pair = format_vertex_list(node.pair)
            head = f"branch {node.identifier} parent={parent} path={path} pair={pair}"
        elif node.known:
            ref = "-" if node.reference is None else str(node.reference)
            head = f"leaf {node.identifier} parent={parent} path={path} predicate={KNOWN} ref={ref}"
        else:
            assert node.predicate is not None
            head = (
                f"leaf {node.identifier} parent={parent} path={path}"
                f" predicate={node.predicate.value}"
            )
        out.append(f"{head} {removal_key}={removed}")
        out.append(format_quiver(node.quiver, f"node-{node.identifier}").rstrip("\n"))
        if node.cluster is not None:
            out.append("cluster")
            out.extend(f"{v + 1} {format_laurent(p)}" for v, p in enumerate(node.cluster))
            out.append("end")
    return "\n".join(out) + "\n"


def parse_certificate(text: str) -> BanffCertificate:
    """Parse certificate text.

    Only the syntax is checked; tree structure and mathematics are left to
    `verify_certificate`.

    Raises:
        CertificateFormatError: malformed text
    """
    lines = LineReader(text.splitlines(), CertificateFormatError)
    try:
        header = lines.next("'certificate <name>'").split(maxsplit=1)
        if header[0] != "certificate":
            raise lines.fail("expected 'certificate <name>'")
        name = header[1] if len(header) > 1 else "quiver"
        mode = _enum(lines, CoverMode, _keyword(lines, "mode"))
        stop = _enum(lines, StopPredicate, _keyword(lines, "stop"))
        if lines.next("'root'") != "root":
            raise lines.fail("expected 'root'")
        _, root = read_quiver_block(lines)
        certificate = BanffCertificate(name, stop, mode, root, [])

        pending: str | None = None
        while True:
            try:
                line = pending or lines.next("a node")
            except CertificateFormatError:
                break
            pending = None
            node = _parse_node_header(lines, line, mode)
            _, node.quiver = read_quiver_block(lines)
            try:
                following = lines.next("a node")
            except CertificateFormatError:
                certificate.nodes.append(node)
                break
            if following == "cluster":
                node.cluster = _parse_cluster(lines, root.n)
            else:
                pending = following
            certificate.nodes.append(node)
    except QuiverError as error:
        raise CertificateFormatError(str(error), lines.number) from None
    for node in certificate.nodes:
        if node.parent is not None and 0 <= node.parent < len(certificate.nodes):
            certificate.nodes[node.parent].children.append(node.identifier)
    return certificate


## Verification
## -----------------------------------------------------------------------------
def verify_certificate(c: BanffCertificate, knowledge: Iterable[bytes] = ()) -> Verification:
    """Check a certificate from scratch.

    Nodes are checked in order. For each node: its place in the tree and the
    vertex removed from its parent, then the covering pair (branches) or the
    stop predicate (leaves) on the embedded quiver, then that replaying the
    path from the start quiver reproduces the embedded quiver and cluster.

    Args:
        c: the certificate
        knowledge: canonical forms accepted for known leaves without a reference
    """
    external = set(knowledge)
    if not c.nodes:
        return _reject(RejectReason.MALFORMED, None, "certificate has no nodes")
    # a certificate is seed-level as soon as one node carries a cluster
    seed_level = any(node.cluster is not None for node in c.nodes)

    parents: Dict[int, int | None] = {}
    starts: Dict[int, Tuple[Grid, Set[int]]] = {}
    for position, node in enumerate(c.nodes):
        if node.identifier != position:
            return _reject(RejectReason.MALFORMED, position, "node ids must be 0, 1, 2, ...")
        parents[position] = node.parent

        ## structure and removal
        if position == 0:
            if node.parent is not None or node.removed is not None:
                return _reject(RejectReason.MALFORMED, 0, "the first node must be the root")
            matrix, mutable = _grid(c.root), set(c.root.mutable)
        else:
            if node.parent is None or not 0 <= node.parent < position:
                return _reject(RejectReason.MALFORMED, position, "parent must be an earlier node")
            parent = c.nodes[node.parent]
            if parent.pair is None:
                return _reject(RejectReason.MALFORMED, position, "parent is a leaf")
            siblings = [n for n in c.nodes if n.parent == parent.identifier]
            if node.removed is None or node.removed not in parent.pair:
                return _reject(
                    RejectReason.BAD_FREEZE, position, "removed vertex is not in the parent's pair"
                )
            if [n.removed for n in siblings].count(node.removed) != 1:
                return _reject(RejectReason.BAD_FREEZE, position, "pair endpoint removed twice")
            parent_matrix, parent_mutable = _grid(parent.quiver), set(parent.quiver.mutable)
            if node.removed not in parent_mutable:
                return _reject(RejectReason.BAD_FREEZE, position, "removed vertex is not mutable")
            matrix, mutable = _remove(parent_matrix, parent_mutable, node.removed, c.mode)
        starts[position] = (matrix, mutable)

        embedded = _grid(node.quiver)
        embedded_mutable = set(node.quiver.mutable)

        ## pair or predicate
        if node.pair is not None:
            a, b = node.pair
            if not _is_covering_pair(embedded, embedded_mutable, a, b):
                return _reject(
                    RejectReason.INVALID_COVERING_PAIR,
                    position,
                    f"({a + 1}, {b + 1}) is not a covering pair",
                )
            children = [n for n in c.nodes if n.parent == position]
            if len(children) != 2:
                return _reject(
                    RejectReason.MISSING_CHILD, position, "branch needs one child per pair endpoint"
                )
        elif node.known:
            result = _check_known_leaf(node, parents, starts, external)
            if result is not None:
                return result
        else:
            if node.predicate is None or node.predicate is not c.stop:
                return _reject(RejectReason.MALFORMED, position, "leaf predicate differs from stop")
            if not _satisfies(embedded, embedded_mutable, node.predicate):
                return _reject(
                    RejectReason.LEAF_PREDICATE_FAILED,
                    position,
                    f"leaf quiver is not {node.predicate.value}",
                )

        ## replay
        replayed = [row[:] for row in matrix]
        for k in node.path:
            if k not in mutable:
                return _reject(
                    RejectReason.REPLAY_MISMATCH, position, f"path mutates non-mutable {k + 1}"
                )
            replayed = _mutate(replayed, k)
        if replayed != embedded or mutable != embedded_mutable:
            return _reject(
                RejectReason.REPLAY_MISMATCH, position, "replaying the path gives another quiver"
            )
        if seed_level and node.cluster is None:
            return _reject(RejectReason.MALFORMED, position, "seed-level node has no cluster")
        if node.cluster is not None:
            result = _check_cluster(c, node, matrix)
            if result is not None:
                return result
    return ACCEPT


def verify_certificate_text(text: str, knowledge: Iterable[bytes] = ()) -> Verification:
    """Parse and verify; unparsable text is rejected as malformed."""
    try:
        certificate = parse_certificate(text)
    except CertificateFormatError as error:
        return _reject(RejectReason.MALFORMED, None, str(error))
    return verify_certificate(certificate, knowledge)


### PRIVATE
### ============================================================================
## Parsing
## -----------------------------------------------------------------------------
def _keyword(lines: LineReader, keyword: str) -> str:
    parts = lines.next(f"'{keyword} <value>'").split()
    if len(parts) != 2 or parts[0] != keyword:
        raise lines.fail(f"expected '{keyword} <value>'")
    return parts[1]


def _enum(lines: LineReader, enum_class: type, value: str):  # type: ignore[no-untyped-def]
    try:
        return enum_class(value)
    except ValueError:
        raise lines.fail(f"unknown {enum_class.__name__} {value!r}") from None


def _parse_node_header(lines: LineReader, line: str, mode: CoverMode) -> CertificateNode:
    parts = line.split()
    if len(parts) < 2 or parts[0] not in ("branch", "leaf"):
        raise lines.fail(f"expected a branch or leaf record, got {line!r}")
    try:
        identifier = int(parts[1])
    except ValueError:
        raise lines.fail(f"bad node id {parts[1]!r}") from None
    fields: Dict[str, str] = {}
    for token in parts[2:]:
        key, sep, value = token.partition("=")
        if not sep or key in fields:
            raise lines.fail(f"bad field {token!r}")
        fields[key] = value
    removal_key = mode.value
    kind_field = "pair" if parts[0] == "branch" else "predicate"
    required = {"parent", "path", removal_key, kind_field}
    missing = required - set(fields)
    if missing:
        raise lines.fail(f"missing fields {sorted(missing)}")
    try:
        parent = None if fields["parent"] == "-" else int(fields["parent"])
        removed = None if fields[removal_key] == "-" else parse_vertex_list(fields[removal_key])[0]
        path = tuple(parse_vertex_list(fields["path"]))
    except (ValueError, IndexError):
        raise lines.fail(f"bad node fields in {line!r}") from None
    node = CertificateNode(identifier, parent, removed, path, IceQuiver(()))
    if parts[0] == "branch":
        try:
            pair = parse_vertex_list(fields["pair"])
        except ValueError:
            raise lines.fail(f"bad pair {fields['pair']!r}") from None
        if len(pair) != 2:
            raise lines.fail(f"pair needs two vertices, got {fields['pair']!r}")
        node.pair = (pair[0], pair[1])
    elif fields["predicate"] == KNOWN:
        node.known = True
        ref = fields.get("ref", "-")
        try:
            node.reference = None if ref == "-" else int(ref)
        except ValueError:
            raise lines.fail(f"bad reference {ref!r}") from None
    else:
        node.predicate = _enum(lines, StopPredicate, fields["predicate"])
    return node


def _parse_cluster(lines: LineReader, nvars: int) -> Tuple[LaurentPoly, ...]:
    cluster: List[LaurentPoly] = []
    while True:
        line = lines.next("a cluster entry or 'end'")
        if line == "end":
            return tuple(cluster)
        label, _, text = line.partition(" ")
        if label != str(len(cluster) + 1):
            raise lines.fail(f"expected cluster entry {len(cluster) + 1}, got {label!r}")
        try:
            cluster.append(parse_laurent(text, nvars))
        except LaurentError as error:
            raise lines.fail(str(error)) from None


## Matrices
## -----------------------------------------------------------------------------
def _grid(q: IceQuiver) -> Grid:
    return [list(row) for row in q.matrix]


def _mutate(m: Grid, k: int) -> Grid:
    n = len(m)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -m[i][j]
            else:
                out[i][j] = m[i][j] + (abs(m[i][k]) * m[k][j] + m[i][k] * abs(m[k][j])) // 2
    return out


def _remove(m: Grid, mutable: Set[int], v: int, mode: CoverMode) -> Tuple[Grid, Set[int]]:
    if mode is CoverMode.FREEZE:
        return [row[:] for row in m], mutable - {v}
    kept = [u for u in range(len(m)) if u != v]
    new = {old: index for index, old in enumerate(kept)}
    return [[m[i][j] for j in kept] for i in kept], {new[u] for u in mutable if u != v}


def _reach(m: Grid, mutable: Set[int]) -> Dict[int, Set[int]]:
    """Vertices reachable by paths of length at least one, inside the mutable part."""
    reach = {v: {u for u in mutable if m[v][u] > 0} for v in mutable}
    for w in mutable:
        for v in mutable:
            if w in reach[v]:
                reach[v] |= reach[w]
    return reach


## Predicates
## -----------------------------------------------------------------------------
def _is_covering_pair(m: Grid, mutable: Set[int], a: int, b: int) -> bool:
    if a not in mutable or b not in mutable or m[a][b] <= 0:
        return False
    reach = _reach(m, mutable)
    cycles = {v for v in mutable if v in reach[v]}
    a_downstream_of_cycle = a in cycles or any(a in reach[c] for c in cycles)
    b_upstream_of_cycle = b in cycles or any(c in reach[b] for c in cycles)
    return not (a_downstream_of_cycle and b_upstream_of_cycle)


def _edges(m: Grid, mutable: Set[int]) -> List[Tuple[int, int]]:
    return [(i, j) for i in sorted(mutable) for j in sorted(mutable) if m[i][j] > 0]


def _satisfies(m: Grid, mutable: Set[int], predicate: StopPredicate) -> bool:
    edges = _edges(m, mutable)
    if predicate is StopPredicate.ISOLATED:
        return not edges
    if predicate is StopPredicate.ACYCLIC:
        reach = _reach(m, mutable)
        return all(v not in reach[v] for v in mutable)
    # tree, finite and a-type need a simply-laced forest
    if any(m[i][j] != 1 for i, j in edges):
        return False
    component = {v: v for v in mutable}

    def find(v: int) -> int:
        while component[v] != v:
            v = component[v]
        return v

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        component[ri] = rj
    if predicate is StopPredicate.TREE:
        return True
    degree = {v: 0 for v in mutable}
    for i, j in edges:
        degree[i] += 1
        degree[j] += 1
    if predicate is StopPredicate.A_TYPE:
        return all(d <= 2 for d in degree.values())
    neighbours = {v: [u for u in mutable if m[v][u] != 0] for v in mutable}
    seen_roots: Dict[int, int] = {}
    for v in mutable:
        if degree[v] >= 3:
            if degree[v] > 3 or find(v) in seen_roots:
                return False
            seen_roots[find(v)] = v
            arms = []
            for start in neighbours[v]:
                length, previous, current = 1, v, start
                while True:
                    onward = [u for u in neighbours[current] if u != previous]
                    if not onward:
                        break
                    if len(onward) > 1:
                        return False
                    previous, current = current, onward[0]
                    length += 1
                arms.append(length)
            if sum(Fraction(1, arm + 1) for arm in arms) <= 1:
                return False
    return True


## Leaves and clusters
## -----------------------------------------------------------------------------
def _check_known_leaf(
    node: CertificateNode,
    parents: Dict[int, int | None],
    starts: Dict[int, Tuple[Grid, Set[int]]],
    external: Set[bytes],
) -> Verification | None:
    position = node.identifier
    if node.reference is None:
        if canonical_form(node.quiver) in external:
            return None
        return _reject(
            RejectReason.UNVERIFIABLE_LEAF, position, "known leaf is not in the knowledge base"
        )
    ref = node.reference
    ancestors = set()
    current = parents.get(position)
    while current is not None:
        ancestors.add(current)
        current = parents.get(current)
    if not 0 <= ref < position or ref in ancestors:
        return _reject(
            RejectReason.UNVERIFIABLE_LEAF, position, f"reference {ref} is not an earlier subtree"
        )
    matrix, mutable = starts[ref]
    referenced = IceQuiver(
        tuple(tuple(row) for row in matrix), frozenset(set(range(len(matrix))) - mutable)
    )
    if canonical_form(referenced) != canonical_form(node.quiver):
        return _reject(
            RejectReason.UNVERIFIABLE_LEAF, position, f"leaf quiver differs from node {ref}"
        )
    return None


def _check_cluster(
    c: BanffCertificate, node: CertificateNode, start: Grid
) -> Verification | None:
    position = node.identifier
    assert node.cluster is not None
    nvars = c.root.n
    if node.parent is None:
        cluster = [LaurentPoly.variable(i, nvars) for i in range(nvars)]
    else:
        parent_cluster = c.nodes[node.parent].cluster
        if parent_cluster is None:
            return _reject(RejectReason.MALFORMED, position, "parent has no cluster")
        cluster = list(parent_cluster)
    if len(node.cluster) != nvars:
        return _reject(RejectReason.MALFORMED, position, "cluster has the wrong length")
    m = [row[:] for row in start]
    for k in node.path:
        positive = LaurentPoly.one(nvars)
        negative = LaurentPoly.one(nvars)
        for j in range(nvars):
            if m[k][j] > 0:
                positive = positive * (cluster[j] ** m[k][j])
            elif m[k][j] < 0:
                negative = negative * (cluster[j] ** -m[k][j])
        try:
            cluster[k] = exact_div(positive + negative, cluster[k])
        except LaurentError:
            return _reject(RejectReason.REPLAY_MISMATCH, position, "exchange is not Laurent")
        m = _mutate(m, k)
    if tuple(cluster) != tuple(node.cluster):
        return _reject(RejectReason.REPLAY_MISMATCH, position, "cluster differs from replay")
    return None


def _reject(reason: RejectReason, node: int | None, detail: str) -> Verification:
    return Verification(False, reason, node, detail)
