"""Minimum vertex separators between vertex sets, by unit-capacity flow.

The flow network splits every candidate vertex v into an in/out arc of
capacity one; a super-source covers A and a super-sink covers B. Augmenting
paths are found by BFS with neighbors scanned in ascending id order, so both
the size and the canonical witness (the min cut closest to A) are
deterministic.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .graphs import DomainError, Graph, components, delete_vertices, reachable_from, vset

INFINITE = math.inf


@dataclass(frozen=True)
class SeparatorResult:
    """Outcome of a minimum-separator computation.

    ``size`` is an int when a separator avoiding both terminal sets exists,
    and ``INFINITE`` when none can (terminal sets overlap or touch). When a
    cap was given and the search stopped early, ``exceeds_cap`` is set and
    ``size`` is the lower bound reached (cap + 1); this is a distinct state
    from INFINITE.
    """
    size: float
    witness: tuple[int, ...] = ()
    source_side: tuple[int, ...] = ()
    exceeds_cap: bool = False

    @property
    def is_finite(self) -> bool:
        return not self.exceeds_cap and self.size != INFINITE

    @property
    def is_infinite(self) -> bool:
        return not self.exceeds_cap and self.size == INFINITE

    def within(self, budget: int) -> bool:
        return self.is_finite and self.size <= budget


_BIG = 1 << 30


def min_vertex_separator(G: Graph, A: Iterable[int], B: Iterable[int],
                         cap: Optional[int] = None) -> SeparatorResult:
    """Minimum set of vertices outside A and B separating A from B.

    Witness is canonical: the vertices whose in-copy is residual-reachable
    from the source while the out-copy is not (the cut closest to A). With
    ``cap`` given, the search stops as soon as the flow exceeds it.
    """
    A_s = set(G.check_vertices(A))
    B_s = set(G.check_vertices(B))
    if not A_s or not B_s:
        raise DomainError("terminal sets must be non-empty")
    if A_s & B_s:
        return SeparatorResult(INFINITE)
    for a in A_s:
        for w in G.adj[a]:
            if w in B_s:
                return SeparatorResult(INFINITE)

    # node encoding: 2v = in-copy, 2v+1 = out-copy, then source, sink
    source = 2 * G.n
    sink = 2 * G.n + 1
    arcs: dict[int, dict[int, int]] = {source: {}, sink: {}}

    def ensure(x):
        if x not in arcs:
            arcs[x] = {}

    def add_arc(x, y, c):
        ensure(x)
        ensure(y)
        arcs[x][y] = max(arcs[x].get(y, 0), c)
        arcs[y].setdefault(x, 0)

    inner = [v for v in range(G.n) if v not in A_s and v not in B_s]
    for v in inner:
        add_arc(2 * v, 2 * v + 1, 1)
    for u, v in G.edges():
        u_in, v_in = u in A_s or u in B_s, v in A_s or v in B_s
        if not u_in and not v_in:
            add_arc(2 * u + 1, 2 * v, _BIG)
            add_arc(2 * v + 1, 2 * u, _BIG)
        elif u_in and not v_in:
            if u in A_s:
                add_arc(source, 2 * v, _BIG)
            else:
                add_arc(2 * v + 1, sink, _BIG)
        elif v_in and not u_in:
            if v in A_s:
                add_arc(source, 2 * u, _BIG)
            else:
                add_arc(2 * u + 1, sink, _BIG)
        # A-A, B-B edges are irrelevant; A-B handled above

    flow = 0
    while True:
        if cap is not None and flow > cap:
            return SeparatorResult(cap + 1, exceeds_cap=True)
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            x = queue.popleft()
            for y in sorted(arcs[x]):
                if y not in parent and arcs[x][y] > 0:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            break
        y = sink
        while y != source:
            x = parent[y]
            arcs[x][y] -= 1
            arcs[y][x] += 1
            y = x
        flow += 1

    # residual reachability gives the source-closest min cut
    reach = {source}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in sorted(arcs[x]):
            if y not in reach and arcs[x][y] > 0:
                reach.add(y)
                queue.append(y)
    witness = tuple(v for v in inner if 2 * v in reach and 2 * v + 1 not in reach)
    assert len(witness) == flow
    side = reachable_from(G, A_s, witness)
    return SeparatorResult(flow, witness, side)


def is_separator(G: Graph, S: Iterable[int], A: Iterable[int], B: Iterable[int]) -> bool:
    """True iff no component of G minus S meets both A minus S and B minus S."""
    S_s = set(G.check_vertices(S))
    A_s = set(G.check_vertices(A)) - S_s
    B_s = set(G.check_vertices(B)) - S_s
    for comp in components(G, S_s):
        cs = set(comp)
        if cs & A_s and cs & B_s:
            return False
    return True


def minimalize_separator(G: Graph, S: Iterable[int], A: Iterable[int],
                         B: Iterable[int]) -> tuple[int, ...]:
    """Inclusion-minimal subset of S still separating A from B.

    Scans S ascending and drops every vertex whose removal keeps separation,
    so the result is deterministic.
    """
    S_s = vset(S)
    if not is_separator(G, S_s, A, B):
        raise DomainError("input set does not separate the terminal sets")
    current = set(S_s)
    for v in S_s:
        trial = current - {v}
        if is_separator(G, trial, A, B):
            current = trial
    return tuple(sorted(current))


def min_separator_containing(G: Graph, s: int, t: int, v: int) -> Optional[SeparatorResult]:
    """A minimum s-t separator containing v, if v lies in one.

    v is in a minimum s-t separator iff deleting it drops the minimum
    separator size by exactly one; the witness is then that smaller separator
    plus v.
    """
    G.check_vertices((s, t, v))
    if s == t or G.has_edge(s, t):
        raise DomainError("terminals must be distinct and non-adjacent")
    if v in (s, t):
        raise DomainError("candidate vertex must differ from the terminals")
    ell = min_vertex_separator(G, (s,), (t,)).size
    sub = delete_vertices(G, (v,))
    r = min_vertex_separator(sub.graph, (sub.to_new(s),), (sub.to_new(t),))
    if not r.is_finite or r.size != ell - 1:
        return None
    witness = tuple(sorted(sub.map_back(r.witness) + (v,)))
    side = reachable_from(G, (s,), witness)
    return SeparatorResult(int(ell), witness, side)
