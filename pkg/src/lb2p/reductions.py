"""Executable reductions from the four-occurrence monotone NAE-3-SAT problem
to locally-balanced 2-partition existence on four restricted graph classes:

* ``bireg``     open mode, (3,8r)-biregular bipartite, n + 2rk vertices
* ``even``      open mode, even bipartite with max degree 4, 16n + 3k vertices
* ``subcubic``  closed mode, bipartite with max degree 3, 30n + k vertices
* ``odd``       closed mode, all degrees odd, max degree 3, 30n + 10k vertices

Every constructor returns the graph plus a total role map (vertex -> tagged
role), verifies its gadget contracts first, and asserts its class
postconditions.  The role map supports the two directional maps: a
satisfying assignment lifts to a checker-valid partition, and a valid
partition projects back to a satisfying assignment.

Vertex layout is chosen so the exact solver's index-order branching performs
well: variable vertices (or whole gadget blocks, in the closed
constructions) come first, letting clause conflicts surface during
propagation before any free chain vertices are branched.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from .balance import TwoPartition, check, phi_star
from .gadgets import ensure_verified, gadget_f1, gadget_f4, gadget_forcing
from .graphs import Graph, bipartition, classify, parse_graph, serialize_graph
from .nae import NaeInstance, nae_eval, occurrence_slot

__all__ = [
    "ReductionArtifact",
    "UnsatAssignmentError",
    "InvalidPartitionError",
    "RoleMapError",
    "REDUCTION_NAMES",
    "reduce_open_biregular",
    "reduce_open_even",
    "reduce_closed_subcubic",
    "reduce_closed_odd",
    "reduce_by_name",
    "assignment_to_partition",
    "partition_to_assignment",
    "write_artifact",
    "read_artifact",
    "parse_assignment",
]

REDUCTION_NAMES = ("bireg", "even", "subcubic", "odd")

GAMMA_SIZE = 30
F1_SIZE = 16
F4_SIZE = 9


class UnsatAssignmentError(ValueError):
    """The assignment leaves some clause monochrome; no lift is defined."""


class InvalidPartitionError(ValueError):
    """The partition fails the balance checker in the artifact's mode."""


class RoleMapError(ValueError):
    """A role-map document is malformed or inconsistent."""


Role = tuple[str, tuple[int, ...]]


@dataclass(frozen=True)
class ReductionArtifact:
    """Reduction output: graph, total role map, and the instance shape."""

    name: str
    mode: str
    graph: Graph
    roles: tuple[Role, ...]
    n_vars: int
    n_clauses: int
    r: int = 0

    def role_index(self) -> dict[Role, int]:
        return {role: v for v, role in enumerate(self.roles)}


def parse_assignment(text: str, n: int) -> tuple[int, ...]:
    """One line of n characters from {0,1}, newline-terminated."""
    line = text.strip("\n")
    if "\n" in line or len(line) != n or any(c not in "01" for c in line):
        raise ValueError(f"expected one line of {n} characters from 0/1")
    return tuple(int(c) for c in line)


def reduce_open_biregular(inst: NaeInstance, r: int = 1) -> ReductionArtifact:
    """One vertex per variable, 2r per clause, complete joins on membership."""
    if r < 1:
        raise ValueError("r must be at least 1")
    n, k = inst.n, inst.k
    q = lambda j, l: n + 2 * r * j + (l - 1)
    edges = []
    for j, clause in enumerate(inst.clauses):
        for var in clause:
            for l in range(1, 2 * r + 1):
                edges.append((var, q(j, l)))
    roles: list[Role] = [("p", (i,)) for i in range(n)]
    for j in range(k):
        for l in range(1, 2 * r + 1):
            roles.append(("q", (j, l)))
    g = Graph.from_edges(n + 2 * r * k, edges)
    assert g.n == n + 2 * r * k
    rep = classify(g)
    assert rep.biregular == (3, 8 * r), f"expected (3,{8 * r})-biregular, got {rep.biregular}"
    return ReductionArtifact("bireg", "open", g, tuple(roles), n, k, r)


def reduce_open_even(inst: NaeInstance) -> ReductionArtifact:
    """Per variable a 16-cycle forcing gadget, per clause two degree-4
    vertices and one degree-2 absorber."""
    ensure_verified(gadget_f1())
    n, k = inst.n, inst.k
    p = lambda i, t: 4 * i + (t - 1)
    u = lambda i, j: 4 * n + 12 * i + (j - 1)
    q = lambda j, l: 16 * n + 2 * j + (l - 1)
    v = lambda j: 16 * n + 2 * k + j
    edges = []
    for i in range(n):
        for l in range(1, 5):
            edges.append((p(i, l), u(i, 3 * l - 2)))
            edges.append((u(i, 3 * l - 2), u(i, 3 * l - 1)))
            edges.append((u(i, 3 * l - 1), u(i, 3 * l)))
            edges.append((u(i, 3 * l), p(i, l % 4 + 1)))
    for j, clause in enumerate(inst.clauses):
        for var in clause:
            t = occurrence_slot(inst, var, j)
            edges.append((p(var, t), q(j, 1)))
            edges.append((p(var, t), q(j, 2)))
    for j in range(k):
        edges.append((q(j, 1), v(j)))
        edges.append((q(j, 2), v(j)))
    roles: list[Role] = []
    for i in range(n):
        for t in range(1, 5):
            roles.append(("p", (i, t)))
    for i in range(n):
        for j in range(1, 13):
            roles.append(("g", (i, j)))
    for j in range(k):
        roles.append(("q", (j, 1)))
        roles.append(("q", (j, 2)))
    for j in range(k):
        roles.append(("v", (j,)))
    g = Graph.from_edges(16 * n + 3 * k, edges)
    assert g.n == 16 * n + 3 * k
    rep = classify(g)
    assert rep.is_even and rep.max_degree == 4
    assert bipartition(g) is not None
    return ReductionArtifact("even", "open", g, tuple(roles), n, k)


def _gamma_edges(base: int, gamma) -> list[tuple[int, int]]:
    return [(base + a, base + b) for a, b in gamma.graph.edges()]


def reduce_closed_subcubic(inst: NaeInstance) -> ReductionArtifact:
    """Per variable one 30-vertex forcing gadget, per clause one degree-3
    vertex joined to the inputs that carry its variables' occurrences."""
    gamma = gadget_forcing()
    ensure_verified(gamma)
    n, k = inst.n, inst.k
    input_slot = {local: t for t, local in enumerate(gamma.inputs, start=1)}
    q = lambda j: GAMMA_SIZE * n + j
    edges = []
    for i in range(n):
        edges.extend(_gamma_edges(GAMMA_SIZE * i, gamma))
    for j, clause in enumerate(inst.clauses):
        for var in clause:
            t = occurrence_slot(inst, var, j)
            edges.append((GAMMA_SIZE * var + gamma.inputs[t - 1], q(j)))
    roles: list[Role] = []
    for i in range(n):
        for local in range(GAMMA_SIZE):
            if local in input_slot:
                roles.append(("p", (i, input_slot[local])))
            else:
                roles.append(("g", (i, local)))
    for j in range(k):
        roles.append(("q", (j,)))
    g = Graph.from_edges(GAMMA_SIZE * n + k, edges)
    assert g.n == GAMMA_SIZE * n + k
    rep = classify(g)
    assert rep.max_degree == 3
    assert bipartition(g) is not None
    return ReductionArtifact("subcubic", "closed", g, tuple(roles), n, k)


def reduce_closed_odd(inst: NaeInstance) -> ReductionArtifact:
    """Subcubic construction plus one triangle widget per clause, making
    every degree odd (each input gains a pendant strand)."""
    gamma = gadget_forcing()
    ensure_verified(gamma)
    f4 = gadget_f4()
    ensure_verified(f4)
    n, k = inst.n, inst.k
    input_slot = {local: t for t, local in enumerate(gamma.inputs, start=1)}
    q = lambda j: GAMMA_SIZE * n + j
    f4_base = lambda j: GAMMA_SIZE * n + k + F4_SIZE * j
    y = lambda j, t: f4_base(j) + 3 * (t - 1)
    edges = []
    for i in range(n):
        edges.extend(_gamma_edges(GAMMA_SIZE * i, gamma))
    for j, clause in enumerate(inst.clauses):
        for t, var in enumerate(clause, start=1):
            slot = occurrence_slot(inst, var, j)
            p_vertex = GAMMA_SIZE * var + gamma.inputs[slot - 1]
            edges.append((q(j), p_vertex))
            edges.append((y(j, t), p_vertex))
        edges.extend((f4_base(j) + a, f4_base(j) + b) for a, b in f4.graph.edges())
    roles: list[Role] = []
    for i in range(n):
        for local in range(GAMMA_SIZE):
            if local in input_slot:
                roles.append(("p", (i, input_slot[local])))
            else:
                roles.append(("g", (i, local)))
    for j in range(k):
        roles.append(("q", (j,)))
    for j in range(k):
        for t in range(1, 4):
            roles.append(("y", (j, t)))
            roles.append(("z", (j, t)))
            roles.append(("b", (j, t)))
    g = Graph.from_edges(GAMMA_SIZE * n + (1 + F4_SIZE) * k, edges)
    assert g.n == GAMMA_SIZE * n + 10 * k
    rep = classify(g)
    assert rep.is_odd and rep.max_degree == 3
    assert bipartition(g) is None, "triangle widgets should break bipartiteness"
    return ReductionArtifact("odd", "closed", g, tuple(roles), n, k)


def reduce_by_name(name: str, inst: NaeInstance, r: int = 1) -> ReductionArtifact:
    if name == "bireg":
        return reduce_open_biregular(inst, r)
    if name == "even":
        return reduce_open_even(inst)
    if name == "subcubic":
        return reduce_closed_subcubic(inst)
    if name == "odd":
        return reduce_closed_odd(inst)
    raise ValueError(f"unknown reduction {name!r}")


def _clause_pvars(artifact: ReductionArtifact) -> list[list[tuple[int, int]]]:
    """Per clause, the (p vertex, variable) pairs read off the role map."""
    index = artifact.role_index()
    out = []
    for j in range(artifact.n_clauses):
        qrole: Role = ("q", (j,)) if artifact.name in ("subcubic", "odd") else ("q", (j, 1))
        qv = index[qrole]
        members = []
        for w in artifact.graph.adj[qv]:
            tag, idx = artifact.roles[w]
            if tag == "p":
                members.append((w, idx[0]))
        members.sort()
        out.append(members)
    return out


def _clause_sign(pvars: Sequence[tuple[int, int]], assignment: Sequence[int]) -> int:
    s = sum(phi_star(assignment[var]) for _, var in pvars)
    assert s in (-1, 1)
    return s


def assignment_to_partition(
    artifact: ReductionArtifact, assignment: Sequence[int]
) -> TwoPartition:
    """Lift a satisfying assignment to a partition valid in the artifact's
    mode (asserted against the checker before returning).

    Raises UnsatAssignmentError when some clause is monochrome; the clause
    vertices' completion rule is undefined in that case.
    """
    if len(assignment) != artifact.n_vars:
        raise ValueError(f"assignment has {len(assignment)} entries for n={artifact.n_vars}")
    if any(x not in (0, 1) for x in assignment):
        raise ValueError("assignment entries must be 0 or 1")
    clause_pvars = _clause_pvars(artifact)
    for j, pvars in enumerate(clause_pvars):
        if len({assignment[var] for _, var in pvars}) == 1:
            raise UnsatAssignmentError(f"clause {j} is monochrome under the assignment")

    labels = [0] * artifact.graph.n
    name = artifact.name
    if name == "bireg":
        for v, (tag, idx) in enumerate(artifact.roles):
            if tag == "p":
                labels[v] = assignment[idx[0]]
            else:
                labels[v] = idx[1] % 2
    elif name == "even":
        qsign = {j: _clause_sign(pvars, assignment) for j, pvars in enumerate(clause_pvars)}
        for v, (tag, idx) in enumerate(artifact.roles):
            if tag == "p":
                labels[v] = assignment[idx[0]]
            elif tag == "g":
                i, j = idx
                labels[v] = assignment[i] if j % 3 == 1 else 1 - assignment[i]
            elif tag == "q":
                labels[v] = 1 if idx[1] == 1 else 0
            else:  # absorber: cancel the clause's variable surplus
                labels[v] = 0 if qsign[idx[0]] == 1 else 1
    else:
        gamma = gadget_forcing()
        completions = {beta: gamma.completion(beta) for beta in (0, 1)}
        qlab = {
            j: (1 if _clause_sign(pvars, assignment) == -1 else 0)
            for j, pvars in enumerate(clause_pvars)
        }
        strand_var = {}
        if name == "odd":
            index = artifact.role_index()
            for j, pvars in enumerate(clause_pvars):
                qv = index[("q", (j,))]
                for t in range(1, 4):
                    yv = index[("y", (j, t))]
                    pv = next(
                        w for w in artifact.graph.adj[yv] if artifact.roles[w][0] == "p"
                    )
                    strand_var[(j, t)] = artifact.roles[pv][1][0]
        for v, (tag, idx) in enumerate(artifact.roles):
            if tag == "p":
                labels[v] = assignment[idx[0]]
            elif tag == "g":
                labels[v] = completions[assignment[idx[0]]][idx[1]]
            elif tag == "q":
                labels[v] = qlab[idx[0]]
            elif tag == "y":
                labels[v] = 1 - qlab[idx[0]]
            elif tag == "z":
                labels[v] = qlab[idx[0]]
            elif tag == "b":
                labels[v] = 1 - assignment[strand_var[idx]]
    partition = TwoPartition(tuple(labels))
    assert not check(artifact.graph, partition, artifact.mode), "lifted partition failed the checker"
    return partition


def partition_to_assignment(
    artifact: ReductionArtifact, partition: TwoPartition
) -> tuple[int, ...]:
    """Read an assignment off the first input vertex of every variable.

    Raises InvalidPartitionError when the partition fails the checker; on
    valid partitions the gadget forcing makes all of a variable's inputs
    agree and the clause-vertex balance makes the result satisfying
    (asserted).
    """
    violations = check(artifact.graph, partition, artifact.mode)
    if violations:
        raise InvalidPartitionError(f"partition violates balance at {violations}")
    labels = partition.labels
    index = artifact.role_index()
    assignment = []
    for i in range(artifact.n_vars):
        first: Role = ("p", (i,)) if artifact.name == "bireg" else ("p", (i, 1))
        value = labels[index[first]]
        if artifact.name != "bireg":
            others = [labels[index[("p", (i, t))]] for t in range(1, 5)]
            assert all(x == value for x in others), "gadget forcing violated"
        assignment.append(value)
    for j, pvars in enumerate(_clause_pvars(artifact)):
        assert len({assignment[var] for _, var in pvars}) == 2, "clause balance violated"
    return tuple(assignment)


_HEADER_RE = re.compile(
    r"^reduction=(\w+) mode=(\w+) n=(\d+) k=(\d+) r=(\d+)$"
)


def write_artifact(artifact: ReductionArtifact, base: Union[str, Path]) -> tuple[Path, Path]:
    """Write <base>.graph (canonical edge list) and <base>.roles sidecar."""
    base = Path(base)
    graph_path = base.with_name(base.name + ".graph")
    roles_path = base.with_name(base.name + ".roles")
    graph_path.write_text(serialize_graph(artifact.graph), encoding="ascii")
    lines = [
        f"reduction={artifact.name} mode={artifact.mode} "
        f"n={artifact.n_vars} k={artifact.n_clauses} r={artifact.r}"
    ]
    for v, (tag, idx) in enumerate(artifact.roles):
        lines.append(" ".join([str(v), tag, *(str(x) for x in idx)]))
    roles_path.write_text("\n".join(lines) + "\n", encoding="ascii")
    return graph_path, roles_path


def read_artifact(base: Union[str, Path]) -> ReductionArtifact:
    base = Path(base)
    graph_path = base.with_name(base.name + ".graph")
    roles_path = base.with_name(base.name + ".roles")
    graph = parse_graph(graph_path.read_text(encoding="ascii"))
    lines = roles_path.read_text(encoding="ascii").splitlines()
    if not lines:
        raise RoleMapError("empty role map")
    m = _HEADER_RE.match(lines[0])
    if not m:
        raise RoleMapError(f"bad role-map header: {lines[0]!r}")
    name, mode, n, k, r = m.group(1), m.group(2), int(m.group(3)), int(m.group(4)), int(m.group(5))
    if name not in REDUCTION_NAMES:
        raise RoleMapError(f"unknown reduction {name!r}")
    roles: list[Role] = [("", ())] * graph.n
    seen = [False] * graph.n
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) < 2:
            raise RoleMapError(f"line {lineno}: expected 'vertex tag indices...'")
        try:
            v = int(parts[0])
            idx = tuple(int(x) for x in parts[2:])
        except ValueError:
            raise RoleMapError(f"line {lineno}: non-integer field") from None
        if not (0 <= v < graph.n) or seen[v]:
            raise RoleMapError(f"line {lineno}: bad or repeated vertex {parts[0]}")
        seen[v] = True
        roles[v] = (parts[1], idx)
    if not all(seen):
        missing = seen.index(False)
        raise RoleMapError(f"role map is not total (vertex {missing} missing)")
    return ReductionArtifact(name, mode, graph, tuple(roles), n, k, r)
