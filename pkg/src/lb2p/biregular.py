"""Constructive solver for bipartite graphs with one side of degree 2 and the
other of odd degree 2k+1 (k >= 1).

Contracting every degree-2 vertex x into a single edge between its two
neighbors yields a (2k+1)-regular multigraph on the high-degree side.  When
that multigraph is 2-colorable the graph admits a valid open-mode partition,
built from a [k,k+1]-factor plus a distance-mod-4 coloring; otherwise an odd
multigraph cycle lifts to a simple cycle of length ≡ 2 (mod 4), a
certificate that no valid partition exists.  Cycles of the original graph
alternate sides, so their length is twice the number of high-side vertices
they visit: length ≡ 2 (mod 4) exactly when that count is odd.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from .balance import TwoPartition, check
from .graphs import Bipartition, Graph, MultiGraph, bfs_distances, connected_components

__all__ = [
    "ReducedMultigraph",
    "FactorResult",
    "CycleCertificate",
    "Witness",
    "Certificate",
    "NotApplicable",
    "validate_2odd_biregular",
    "build_reduced",
    "kk1_factor",
    "solve_biregular",
    "has_bad_cycle",
    "extract_cycle_2mod4",
]


@dataclass(frozen=True)
class ReducedMultigraph:
    """Multigraph on the high-degree side; one edge per degree-2 vertex.

    ``y_vertices[i]`` is the original vertex behind local index i and
    ``x_of_edge[e]`` the degree-2 vertex contracted into edge e.
    """

    graph: MultiGraph
    y_vertices: tuple[int, ...]
    x_of_edge: tuple[int, ...]
    k: int


@dataclass(frozen=True)
class FactorResult:
    """Spanning subgraph (edge-index subset) with all degrees in [k, k+1]."""

    edges: frozenset[int]
    degrees: tuple[int, ...]


@dataclass(frozen=True)
class CycleCertificate:
    """Simple cycle, as a vertex sequence, of length ≡ 2 (mod 4)."""

    vertices: tuple[int, ...]


@dataclass(frozen=True)
class Witness:
    partition: TwoPartition


@dataclass(frozen=True)
class Certificate:
    cycle: CycleCertificate


@dataclass(frozen=True)
class NotApplicable:
    reason: str


def validate_2odd_biregular(
    g: Graph,
) -> Union[tuple[Bipartition, int], NotApplicable]:
    """Check membership in the class; side_x is the degree-2 side.

    Succeeds iff every vertex has degree 2 or a common odd degree 2k+1
    (k >= 1) and every edge joins the two degree classes.
    """
    if g.n == 0:
        return NotApplicable("empty graph")
    degs = g.degrees()
    high = sorted({d for d in degs if d != 2})
    if not high:
        return NotApplicable("degrees (2,2); 2 is not 2k+1 with k >= 1")
    if len(high) > 1:
        return NotApplicable(f"more than two degree values: {high}")
    b = high[0]
    if b % 2 == 0 or b < 3:
        return NotApplicable(f"high-side degree {b} is not 2k+1 with k >= 1")
    xs = frozenset(v for v in range(g.n) if degs[v] == 2)
    if not xs:
        return NotApplicable("no degree-2 side")
    for u, v in g.edges():
        if (u in xs) == (v in xs):
            return NotApplicable(f"edge ({u},{v}) stays inside one degree class")
    ys = frozenset(v for v in range(g.n) if degs[v] == b)
    return Bipartition(xs, ys), (b - 1) // 2


def build_reduced(g: Graph, bip: Bipartition, k: int) -> ReducedMultigraph:
    """Contract each degree-2 vertex into an edge between its two neighbors."""
    ys = sorted(bip.side_y)
    local = {y: i for i, y in enumerate(ys)}
    edges = []
    provenance = []
    for x in sorted(bip.side_x):
        u, v = g.adj[x]
        edges.append((local[u], local[v]))
        provenance.append(x)
    mg = MultiGraph(len(ys), tuple(edges))
    r = 2 * k + 1
    assert all(d == r for d in mg.degrees()), "reduced multigraph is not regular"
    return ReducedMultigraph(mg, tuple(ys), tuple(provenance), k)


def kk1_factor(m: MultiGraph, k: int) -> FactorResult:
    """A spanning subgraph with every degree in [k, k+1] of an r-regular
    multigraph (1 <= k < r); existence is guaranteed, search is exact.

    Edges are scanned in index order, exclusion tried first; per-vertex
    bounds (chosen <= k+1, chosen + undecided >= k) prune the search.
    """
    degs = list(m.degrees())
    if m.n == 0:
        raise ValueError("empty multigraph is not r-regular with r > k >= 1")
    r = degs[0]
    if any(d != r for d in degs):
        raise ValueError(f"multigraph is not regular (degrees {sorted(set(degs))})")
    if not 1 <= k < r:
        raise ValueError(f"need 1 <= k < r, got k={k}, r={r}")

    edges = m.edges
    n_edges = len(edges)
    if sys.getrecursionlimit() < 2 * n_edges + 200:  # bt() recurses per edge
        sys.setrecursionlimit(2 * n_edges + 200)
    deg_in = [0] * m.n
    undecided = list(degs)
    chosen: list[int] = []

    def bt(i: int) -> bool:
        if i == n_edges:
            return True
        u, v = edges[i]
        undecided[u] -= 1
        undecided[v] -= 1
        if (
            deg_in[u] + undecided[u] >= k
            and deg_in[v] + undecided[v] >= k
            and bt(i + 1)
        ):
            return True
        result = False
        if deg_in[u] < k + 1 and deg_in[v] < k + 1:
            deg_in[u] += 1
            deg_in[v] += 1
            chosen.append(i)
            if bt(i + 1):
                result = True
            else:
                chosen.pop()
                deg_in[u] -= 1
                deg_in[v] -= 1
        undecided[u] += 1
        undecided[v] += 1
        return result

    if not bt(0):
        raise RuntimeError("no [k,k+1]-factor found; input violated the precondition")
    picked = frozenset(chosen)
    final = [0] * m.n
    for i in picked:
        u, v = edges[i]
        final[u] += 1
        final[v] += 1
    assert all(k <= d <= k + 1 for d in final)
    return FactorResult(picked, tuple(final))


def _multigraph_odd_cycle(
    m: MultiGraph,
) -> Optional[tuple[list[int], list[int]]]:
    """First odd cycle under BFS 2-coloring, or None if 2-colorable.

    Returns (vertex list, edge-index list) with edge i joining vertex i to
    vertex i+1 (cyclically).  Parallel edges are even 2-cycles and never
    trigger a conflict.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(m.n)]
    for eid, (u, v) in enumerate(m.edges):
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    color = [-1] * m.n
    parent = [-1] * m.n
    parent_edge = [-1] * m.n
    depth = [0] * m.n
    for root in range(m.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, eid in adj[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    parent_edge[w] = eid
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return _lca_cycle(u, w, eid, parent, parent_edge, depth)
    return None


def _lca_cycle(u, w, closing_edge, parent, parent_edge, depth):
    path_u, path_w = [u], [w]
    edges_u: list[int] = []
    edges_w: list[int] = []
    pu, pw = u, w
    while depth[pu] > depth[pw]:
        edges_u.append(parent_edge[pu])
        pu = parent[pu]
        path_u.append(pu)
    while depth[pw] > depth[pu]:
        edges_w.append(parent_edge[pw])
        pw = parent[pw]
        path_w.append(pw)
    while pu != pw:
        edges_u.append(parent_edge[pu])
        pu = parent[pu]
        path_u.append(pu)
        edges_w.append(parent_edge[pw])
        pw = parent[pw]
        path_w.append(pw)
    verts = path_u + list(reversed(path_w[:-1]))
    edges = edges_u + list(reversed(edges_w)) + [closing_edge]
    assert len(verts) == len(edges) and len(verts) % 2 == 1
    return verts, edges


def extract_cycle_2mod4(walk: list[int]) -> list[int]:
    """Reduce a closed walk of length ≡ 2 (mod 4) in a bipartite graph to a
    simple cycle of the same length class.

    Splitting a closed walk at a repeated vertex yields two closed sub-walks
    of even length summing to the original, so exactly one is ≡ 2 (mod 4);
    recursing on it terminates in a simple cycle.
    """
    walk = list(walk)
    while True:
        assert len(walk) % 4 == 2
        pos: dict[int, int] = {}
        split = None
        for j, v in enumerate(walk):
            if v in pos:
                split = (pos[v], j)
                break
            pos[v] = j
        if split is None:
            return walk
        i, j = split
        inner = walk[i:j]
        outer = walk[:i] + walk[j:]
        pick = inner if len(inner) % 4 == 2 else outer
        assert len(pick) % 4 == 2 and len(pick) >= 6
        walk = pick


def _check_certificate(g: Graph, cycle: list[int]) -> CycleCertificate:
    length = len(cycle)
    assert length % 4 == 2 and length >= 6
    assert len(set(cycle)) == length, "certificate cycle is not simple"
    for i in range(length):
        u, v = cycle[i], cycle[(i + 1) % length]
        assert g.has_edge(u, v), f"certificate pair ({u},{v}) is not an edge"
    return CycleCertificate(tuple(cycle))


def _lift_walk(red: ReducedMultigraph, verts: list[int], edges: list[int]) -> list[int]:
    walk = []
    for i in range(len(verts)):
        walk.append(red.y_vertices[verts[i]])
        walk.append(red.x_of_edge[edges[i]])
    return walk


def has_bad_cycle(g: Graph) -> bool:
    """True iff the validated graph has a cycle of length ≡ 2 (mod 4).

    Equivalent to the reduced multigraph having an odd cycle; this
    equivalence depends on the degree-2 side and holds only for this class.
    """
    va = validate_2odd_biregular(g)
    if isinstance(va, NotApplicable):
        raise ValueError(f"not applicable: {va.reason}")
    bip, k = va
    red = build_reduced(g, bip, k)
    return _multigraph_odd_cycle(red.graph) is not None


def solve_biregular(g: Graph) -> Union[Witness, Certificate, NotApplicable]:
    """Witness partition or certificate cycle for a degree-(2,2k+1) graph.

    Exactly one of the two is returned on validated inputs; the witness is
    asserted against the open-mode checker before being released.
    """
    va = validate_2odd_biregular(g)
    if isinstance(va, NotApplicable):
        return va
    bip, k = va
    red = build_reduced(g, bip, k)

    odd = _multigraph_odd_cycle(red.graph)
    if odd is not None:
        verts, edges = odd
        walk = _lift_walk(red, verts, edges)
        cycle = extract_cycle_2mod4(walk)
        return Certificate(_check_certificate(g, cycle))

    factor = kk1_factor(red.graph, k)
    labels = [0] * g.n
    for eid, x in enumerate(red.x_of_edge):
        labels[x] = 1 if eid in factor.edges else 0
    for comp in connected_components(g):
        comp_ys = [v for v in comp if v in bip.side_y]
        ybar = comp_ys[0]
        dist = bfs_distances(g, ybar)
        for y in comp_ys:
            d = dist[y]
            assert d is not None and d % 2 == 0
            labels[y] = 1 if d % 4 == 0 else 0
    partition = TwoPartition(tuple(labels))
    assert not check(g, partition, "open"), "constructed witness failed the checker"
    return Witness(partition)
