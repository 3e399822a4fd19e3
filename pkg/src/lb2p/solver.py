"""Exact existence decision and enumeration for locally-balanced 2-partitions.

The search branches on the lowest-index unassigned vertex (value 0 first)
and interleaves a forcing rule evaluated per constraint scope: with s the
phi-star sum of the assigned scope members and m the number unassigned, the
admissible totals A ({0} for even-size scopes, {-1,+1} for odd) leave the
unassigned part in T = {a - s : a in A, |a - s| <= m, a - s ≡ m (mod 2)}.
Empty T is a conflict; T = {+m} or {-m} fixes every unassigned scope member.
The degree-2 open rule (the two neighbors of a degree-2 vertex get distinct
labels) and the degree-1 closed rule (a leaf differs from its support) fall
out as instances.

Waived vertices have their own constraint dropped but still appear in other
scopes; this models gadget inputs whose external contributions are unknown.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional

import numpy as np

from .balance import MODES, TwoPartition, check
from .graphs import Graph

__all__ = [
    "ConstraintSystem",
    "PropagationResult",
    "SolveOutcome",
    "BudgetExceededError",
    "DEFAULT_NODE_BUDGET",
    "BRUTE_FORCE_CAP",
    "propagate",
    "decide",
    "enumerate_partitions",
    "brute_force",
]

DEFAULT_NODE_BUDGET = 10_000_000
BRUTE_FORCE_CAP = 25


class BudgetExceededError(RuntimeError):
    """Enumeration exceeded its node budget."""


@dataclass(frozen=True)
class ConstraintSystem:
    """Per-vertex balance scopes with admissible sums derived from parity."""

    n: int
    mode: str
    scopes: tuple[tuple[int, ...], ...]
    waived: frozenset[int]

    @classmethod
    def from_graph(cls, g: Graph, mode: str, waived: Iterable[int] = ()) -> "ConstraintSystem":
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        wv = frozenset(waived)
        if any(not (0 <= v < g.n) for v in wv):
            raise ValueError("waived vertex out of range")
        if mode == "open":
            scopes = g.adj
        else:
            scopes = tuple(tuple(sorted(g.adj[v] + (v,))) for v in range(g.n))
        return cls(g.n, mode, scopes, wv)

    def admissible(self, v: int) -> tuple[int, ...]:
        return (0,) if len(self.scopes[v]) % 2 == 0 else (-1, 1)


@dataclass(frozen=True)
class PropagationResult:
    """Fixpoint of the forcing rule, or the vertex whose scope conflicted."""

    assignment: tuple[Optional[int], ...]
    conflict: Optional[int]
    forced: int


@dataclass(frozen=True)
class SolveOutcome:
    """Decision result with search statistics.

    Any witness passes the balance checker in the requested mode
    (violations are confined to waived vertices).
    """

    status: str  # 'sat' | 'unsat' | 'timeout'
    witness: Optional[TwoPartition]
    nodes: int
    propagations: int


class _BudgetHit(Exception):
    pass


def _ensure_recursion_headroom(n: int) -> None:
    # search() recurses once per branch vertex
    needed = 2 * n + 200
    if sys.getrecursionlimit() < needed:
        sys.setrecursionlimit(needed)


_OK = -2
_CONFLICT = -1


class _Search:
    """Trail-based backtracking engine over a ConstraintSystem."""

    __slots__ = (
        "n", "scopes", "adm", "owners", "label", "asum", "left",
        "trail", "nodes", "propagations", "budget", "conflict_vertex",
    )

    def __init__(self, cs: ConstraintSystem, budget: int):
        n = cs.n
        self.n = n
        self.scopes = cs.scopes
        active = [v not in cs.waived for v in range(n)]
        self.adm = tuple(cs.admissible(v) if active[v] else () for v in range(n))
        owners: list[list[int]] = [[] for _ in range(n)]
        for v in range(n):
            if active[v]:
                for u in cs.scopes[v]:
                    owners[u].append(v)
        self.owners = tuple(tuple(o) for o in owners)
        self.label = [-1] * n
        self.asum = [0] * n
        self.left = [len(cs.scopes[v]) if active[v] else 0 for v in range(n)]
        self.trail: list[int] = []
        self.nodes = 0
        self.propagations = 0
        self.budget = budget
        self.conflict_vertex: Optional[int] = None

    def _set(self, u: int, val: int) -> None:
        self.label[u] = val
        self.trail.append(u)
        ph = 1 if val else -1
        asum = self.asum
        left = self.left
        for v in self.owners[u]:
            asum[v] += ph
            left[v] -= 1

    def undo_to(self, mark: int) -> None:
        trail = self.trail
        label = self.label
        asum = self.asum
        left = self.left
        while len(trail) > mark:
            u = trail.pop()
            ph = 1 if label[u] else -1
            label[u] = -1
            for v in self.owners[u]:
                asum[v] -= ph
                left[v] += 1

    def _eval(self, v: int) -> int:
        """_OK, _CONFLICT, or the value forced on all unassigned scope members."""
        m = self.left[v]
        s = self.asum[v]
        cand = 0
        count = 0
        for a in self.adm[v]:
            t = a - s
            if -m <= t <= m and (t + m) % 2 == 0:
                count += 1
                cand = t
        if count == 0:
            self.conflict_vertex = v
            return _CONFLICT
        if count == 1 and m > 0 and (cand == m or cand == -m):
            return 1 if cand > 0 else 0
        return _OK

    def flush(self, pending: list[int]) -> bool:
        """Run the forcing rule to fixpoint; False on conflict."""
        label = self.label
        while pending:
            v = pending.pop()
            r = self._eval(v)
            if r == _OK:
                continue
            if r == _CONFLICT:
                return False
            for w in self.scopes[v]:
                if label[w] == -1:
                    self.propagations += 1
                    self._set(w, r)
                    pending.extend(self.owners[w])
        return True

    def assign(self, u: int, val: int) -> bool:
        self._set(u, val)
        return self.flush(list(self.owners[u]))

    def initialize(self, fixed: Optional[Mapping[int, int]]) -> bool:
        pending = [v for v in range(self.n) if self.adm[v]]
        if fixed:
            for u, val in sorted(fixed.items()):
                if not (0 <= u < self.n):
                    raise ValueError(f"fixed vertex {u} out of range")
                if val not in (0, 1):
                    raise ValueError("fixed labels must be 0 or 1")
                if self.label[u] == -1:
                    self._set(u, val)
                    pending.extend(self.owners[u])
                elif self.label[u] != val:
                    return False
        return self.flush(pending)

    def search(self, lo: int, on_solution: Callable[[tuple[int, ...]], bool]) -> bool:
        """DFS in index order, value 0 first.  True means stop requested."""
        label = self.label
        n = self.n
        while lo < n and label[lo] != -1:
            lo += 1
        if lo == n:
            return on_solution(tuple(label))
        for val in (0, 1):
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetHit
            mark = len(self.trail)
            if self.assign(lo, val) and self.search(lo + 1, on_solution):
                return True
            self.undo_to(mark)
        return False


def propagate(cs: ConstraintSystem, partial) -> PropagationResult:
    """Run the forcing rule to fixpoint from a partial assignment.

    ``partial`` maps vertex index to 0, 1, or None (sequence form).
    """
    if len(partial) != cs.n:
        raise ValueError(f"partial assignment has {len(partial)} entries for n={cs.n}")
    eng = _Search(cs, budget=0)
    fixed = {v: x for v, x in enumerate(partial) if x is not None}
    ok = eng.initialize(fixed)
    assignment = tuple(x if x != -1 else None for x in eng.label)
    if not ok:
        return PropagationResult(assignment, eng.conflict_vertex, eng.propagations)
    return PropagationResult(assignment, None, eng.propagations)


def _assert_sound(g: Graph, witness: TwoPartition, mode: str, waived: frozenset[int]) -> None:
    bad = [v for v in check(g, witness, mode) if v not in waived]
    assert not bad, f"solver produced an invalid witness (violations at {bad})"


def decide(
    g: Graph,
    mode: str,
    waived: Iterable[int] = (),
    node_budget: int = DEFAULT_NODE_BUDGET,
    fixed: Optional[Mapping[int, int]] = None,
) -> SolveOutcome:
    """Complete search for a valid 2-partition; deterministic first witness.

    Returns status 'timeout' when the node budget is exhausted, never a
    wrong answer.
    """
    cs = ConstraintSystem.from_graph(g, mode, waived)
    _ensure_recursion_headroom(g.n)
    eng = _Search(cs, node_budget)
    if not eng.initialize(fixed):
        return SolveOutcome("unsat", None, eng.nodes, eng.propagations)
    found: list[tuple[int, ...]] = []

    def on_solution(labels: tuple[int, ...]) -> bool:
        found.append(labels)
        return True

    try:
        eng.search(0, on_solution)
    except _BudgetHit:
        return SolveOutcome("timeout", None, eng.nodes, eng.propagations)
    if found:
        witness = TwoPartition(found[0])
        _assert_sound(g, witness, mode, cs.waived)
        return SolveOutcome("sat", witness, eng.nodes, eng.propagations)
    return SolveOutcome("unsat", None, eng.nodes, eng.propagations)


def enumerate_partitions(
    g: Graph,
    mode: str,
    waived: Iterable[int] = (),
    node_budget: int = DEFAULT_NODE_BUDGET,
    fixed: Optional[Mapping[int, int]] = None,
) -> list[TwoPartition]:
    """All valid 2-partitions, duplicate-free, in lexicographic label order.

    Raises BudgetExceededError when the search would exceed the node budget.
    """
    cs = ConstraintSystem.from_graph(g, mode, waived)
    _ensure_recursion_headroom(g.n)
    eng = _Search(cs, node_budget)
    out: list[TwoPartition] = []
    if not eng.initialize(fixed):
        return out

    def on_solution(labels: tuple[int, ...]) -> bool:
        out.append(TwoPartition(labels))
        return False

    try:
        eng.search(0, on_solution)
    except _BudgetHit:
        raise BudgetExceededError(
            f"enumeration exceeded node budget {node_budget}"
        ) from None
    for p in out:
        _assert_sound(g, p, mode, cs.waived)
    return out


def brute_force(g: Graph, mode: str, cap: int = BRUTE_FORCE_CAP) -> SolveOutcome:
    """Oracle: evaluate every labeling directly (vectorized bit enumeration).

    Independent of the propagation search; agrees with ``decide`` on
    satisfiability.  Witness is the lexicographically first valid labeling.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    n = g.n
    if n > cap:
        raise ValueError(f"brute force capped at {cap} vertices, got {n}")
    if n == 0:
        return SolveOutcome("sat", TwoPartition(()), 0, 0)
    a = np.zeros((n, n), dtype=np.float32)
    for u in range(n):
        for v in g.adj[u]:
            a[u, v] = 1.0
    if mode == "closed":
        a += np.eye(n, dtype=np.float32)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    total = 1 << n
    chunk = 1 << 16
    scanned = 0
    for base in range(0, total, chunk):
        masks = np.arange(base, min(base + chunk, total), dtype=np.int64)
        bits = ((masks[:, None] >> shifts[None, :]) & 1).astype(np.float32)
        balances = (2.0 * bits - 1.0) @ a
        ok = np.all(np.abs(balances) <= 1.5, axis=1)
        scanned += len(masks)
        if ok.any():
            row = int(np.argmax(ok))
            labels = tuple(int(b) for b in bits[row])
            witness = TwoPartition(labels)
            _assert_sound(g, witness, mode, frozenset())
            return SolveOutcome("sat", witness, scanned, 0)
    return SolveOutcome("unsat", None, scanned, 0)
