"""Graph and multigraph primitives: parsing, class predicates, traversal, embedding.

Vertices are dense 0-based indices.  ``Graph`` is simple and undirected with
sorted adjacency lists; ``MultiGraph`` keeps a raw edge list and allows
parallel edges but never self-loops.  Both are immutable after construction,
so instances can be shared freely across threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

__all__ = [
    "Graph",
    "MultiGraph",
    "Bipartition",
    "ClassReport",
    "GraphFormatError",
    "NonInputAttachmentError",
    "DuplicateAttachmentError",
    "parse_graph",
    "serialize_graph",
    "bipartition",
    "classify",
    "bfs_distances",
    "connected_components",
    "embed_gadget",
]


class GraphFormatError(ValueError):
    """Malformed edge-list document.

    ``kind`` is one of ``header``, ``malformed``, ``range``, ``loop``,
    ``duplicate``, ``truncated``; ``line`` is the 1-based offending line.
    """

    def __init__(self, kind: str, message: str, line: Optional[int] = None):
        self.kind = kind
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class NonInputAttachmentError(ValueError):
    """An attachment names a gadget vertex that is not a declared input."""


class DuplicateAttachmentError(ValueError):
    """An attachment edge is repeated."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with sorted adjacency."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        lists: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({key[0]},{key[1]})")
            seen.add(key)
            lists[u].append(v)
            lists[v].append(u)
        return cls(n, tuple(tuple(sorted(a)) for a in lists))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (min,max) pairs in lexicographic order."""
        out = []
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    out.append((u, v))
        return out

    def has_edge(self, u: int, v: int) -> bool:
        a, b = (u, v) if len(self.adj[u]) <= len(self.adj[v]) else (v, u)
        return b in self.adj[a]


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph: parallel edges allowed, self-loops rejected."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for u, w in self.edges)

    def degrees(self) -> tuple[int, ...]:
        degs = [0] * self.n
        for u, w in self.edges:
            degs[u] += 1
            degs[w] += 1
        return tuple(degs)


@dataclass(frozen=True)
class Bipartition:
    """Two disjoint vertex sets covering V; every edge joins side_x to side_y."""

    side_x: frozenset[int]
    side_y: frozenset[int]


@dataclass(frozen=True)
class ClassReport:
    is_even: bool
    is_odd: bool
    max_degree: int
    biregular: Optional[tuple[int, int]]


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document: header line ``n m`` then m lines ``u v``.

    Rejects malformed lines, out-of-range indices, loops, and duplicate
    edges, each reported with its line number.
    """
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError("header", "empty document", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError("header", "expected header 'n m'", 1)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError("header", "expected two integers in header", 1) from None
    if n < 0 or m < 0:
        raise GraphFormatError("header", "negative counts in header", 1)

    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    lineno = 1
    for raw in lines[1:]:
        lineno += 1
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != 2:
            raise GraphFormatError("malformed", f"expected 'u v', got {raw!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("malformed", f"non-integer endpoint in {raw!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError("range", f"vertex out of range in edge ({u},{v})", lineno)
        if u == v:
            raise GraphFormatError("loop", f"self-loop at vertex {u}", lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphFormatError("duplicate", f"duplicate edge ({key[0]},{key[1]})", lineno)
        seen.add(key)
        edges.append((u, v))
    if len(edges) != m:
        raise GraphFormatError(
            "truncated", f"header promises {m} edges, found {len(edges)}", lineno
        )
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph) -> str:
    """Canonical form: header then edges sorted as (min,max) lexicographically."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def _two_color(g: Graph) -> Optional[tuple[list[int], list[int]]]:
    """BFS 2-coloring.  Returns (color, component id) or None on an odd cycle.

    Component roots are taken in increasing index order and colored 0.
    """
    color = [-1] * g.n
    comp = [-1] * g.n
    ncomp = 0
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        comp[root] = ncomp
        queue = deque([root])
        while queue:
            u = queue.popleft()
            cu = color[u]
            for v in g.adj[u]:
                if color[v] == -1:
                    color[v] = 1 - cu
                    comp[v] = ncomp
                    queue.append(v)
                elif color[v] == cu:
                    return None
        ncomp += 1
    return color, comp


def bipartition(g: Graph) -> Optional[Bipartition]:
    """A valid bipartition if g is bipartite, else None.

    Per connected component the side of the lowest-index vertex is side_x.
    """
    colored = _two_color(g)
    if colored is None:
        return None
    color, _ = colored
    return Bipartition(
        frozenset(v for v in range(g.n) if color[v] == 0),
        frozenset(v for v in range(g.n) if color[v] == 1),
    )


def _biregular_pair(g: Graph, color: list[int], comp: list[int]) -> Optional[tuple[int, int]]:
    # Merge per-component side degrees into one global (a,b); a component with
    # both sides nonempty pins the multiset, a singleton only demands that its
    # degree (0) belongs to the pair.
    ncomp = max(comp) + 1 if g.n else 0
    sides: list[tuple[set[int], set[int]]] = [(set(), set()) for _ in range(ncomp)]
    for v in range(g.n):
        sides[comp[v]][color[v]].add(g.degree(v))
    pinned: Optional[tuple[int, int]] = None
    singles: set[int] = set()
    for d0, d1 in sides:
        if len(d0) > 1 or len(d1) > 1:
            return None
        if not d1:
            singles.update(d0)
            continue
        pair = tuple(sorted((next(iter(d0)), next(iter(d1)))))
        if pinned is None:
            pinned = pair
        elif pinned != pair:
            return None
    if pinned is None:
        pinned = (0, 0)
    if any(d not in pinned for d in singles):
        return None
    return pinned


def classify(g: Graph) -> ClassReport:
    """Degree-class report: even/odd graph flags, max degree, biregular pair.

    ``biregular`` is present iff the graph is bipartite and admits a
    bipartition with one side a-regular and the other b-regular (a <= b).
    """
    degs = g.degrees()
    is_even = all(d % 2 == 0 for d in degs)
    is_odd = all(d % 2 == 1 for d in degs)
    max_degree = max(degs, default=0)
    colored = _two_color(g)
    bireg = None
    if colored is not None and g.n > 0:
        bireg = _biregular_pair(g, *colored)
    return ClassReport(is_even, is_odd, max_degree, bireg)


def bfs_distances(g: Graph, source: int) -> list[Optional[int]]:
    """Shortest-path edge counts from source; None for unreachable vertices."""
    if not (0 <= source < g.n):
        raise ValueError(f"source {source} out of range")
    dist: list[Optional[int]] = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in g.adj[u]:
            if dist[v] is None:
                dist[v] = du + 1
                queue.append(v)
    return dist


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex lists per component, ordered by lowest member."""
    seen = [False] * g.n
    comps = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        members = [root]
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    members.append(v)
                    queue.append(v)
        comps.append(sorted(members))
    return comps


def embed_gadget(
    host: Graph,
    gadget: Graph,
    inputs: Sequence[int],
    attachments: Sequence[tuple[int, int]],
) -> tuple[Graph, int]:
    """Disjoint union of host and gadget plus the attachment edges.

    ``attachments`` are pairs (gadget input vertex, host vertex); only
    declared inputs may be attached.  Gadget vertex i becomes offset+i in
    the result, where offset = host.n (returned for role bookkeeping).
    """
    input_set = set(inputs)
    if len(input_set) != len(inputs):
        raise ValueError("duplicate vertices in input list")
    for w in inputs:
        if not (0 <= w < gadget.n):
            raise ValueError(f"input vertex {w} out of range")
    offset = host.n
    edges = host.edges()
    edges.extend((u + offset, v + offset) for u, v in gadget.edges())
    seen: set[tuple[int, int]] = set()
    for gv, hv in attachments:
        if gv not in input_set:
            raise NonInputAttachmentError(
                f"gadget vertex {gv} is not a declared input"
            )
        if not (0 <= hv < host.n):
            raise ValueError(f"host vertex {hv} out of range")
        key = (hv, gv + offset)
        if key in seen:
            raise DuplicateAttachmentError(f"attachment ({gv},{hv}) repeated")
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(host.n + gadget.n, edges), offset
