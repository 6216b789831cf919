"""Immutable simple undirected graphs and the elementary operations on them.

Vertices are 0-based ints internally; the text format and the CLI use 1-based
ids. All operations are pure: anything that "edits" a graph returns a new one.
Neighbor lists are kept sorted so that every traversal in the package is
deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class GraphError(Exception):
    pass


class ParseError(GraphError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DomainError(GraphError):
    pass


def vset(vertices: Iterable[int]) -> tuple[int, ...]:
    """Normalize an iterable of vertex ids into a sorted duplicate-free tuple."""
    return tuple(sorted(set(vertices)))


class Graph:
    """Simple undirected graph: no loops, no parallel edges.

    ``adj[v]`` is a sorted tuple of neighbors. ``labels``, when present, carries
    one annotation per vertex (used to remember vertex origins across
    rewritings).
    """

    __slots__ = ("n", "adj", "_nbr_sets", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 labels: Optional[Sequence] = None):
        if n < 0:
            raise DomainError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in nbrs)
        self._nbr_sets = tuple(frozenset(s) for s in nbrs)
        if labels is not None and len(labels) != n:
            raise DomainError("labels length must equal vertex count")
        self.labels = tuple(labels) if labels is not None else None

    # -- basic queries ----------------------------------------------------

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (min, max) pairs, sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def check_vertices(self, X: Iterable[int]) -> tuple[int, ...]:
        xs = vset(X)
        if xs and (xs[0] < 0 or xs[-1] >= self.n):
            raise DomainError(f"vertex set {xs} not within 0..{self.n - 1}")
        return xs

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and self.n == other.n
                and self.adj == other.adj and self.labels == other.labels)

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- text format ----------------------------------------------------------
#
# `c <comment>` lines ignored, exactly one `p <n> <m>` header, then `e <u> <v>`
# with 1-based endpoints. Duplicate edge lines collapse; loops are rejected.

def parse_graph(text: str) -> Graph:
    n = None
    declared_m = 0
    header_line = 0
    edge_lines = 0
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(fields) != 3:
                raise ParseError("header must be 'p <n> <m>'", lineno)
            try:
                n, declared_m = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError("non-integer header field", lineno) from None
            if n < 0 or declared_m < 0:
                raise ParseError("negative count in header", lineno)
            header_line = lineno
        elif fields[0] == "e":
            if n is None:
                raise ParseError("edge before header", lineno)
            if len(fields) != 3:
                raise ParseError("edge must be 'e <u> <v>'", lineno)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError("non-integer endpoint", lineno) from None
            if u == v:
                raise ParseError(f"loop at vertex {u}", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex id out of range: {u} {v}", lineno)
            edge_lines += 1
            edges.add((min(u, v) - 1, max(u, v) - 1))
        else:
            raise ParseError(f"unknown line type {fields[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'p' header", 1)
    if edge_lines != declared_m:
        raise ParseError(
            f"header declares {declared_m} edges but {edge_lines} edge lines found",
            header_line)
    return Graph(n, edges)


def serialize_graph(G: Graph) -> str:
    lines = [f"p {G.n} {G.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


# -- elementary operations -------------------------------------------------

def boundary(G: Graph, X: Iterable[int]) -> tuple[int, ...]:
    """Vertices outside X with at least one neighbor in X."""
    xs = set(G.check_vertices(X))
    out = set()
    for v in xs:
        for w in G.adj[v]:
            if w not in xs:
                out.add(w)
    return tuple(sorted(out))


def components(G: Graph, removed: Iterable[int] = ()) -> list[tuple[int, ...]]:
    """Connected components of G minus ``removed``, each sorted, ordered by
    smallest member."""
    gone = set(G.check_vertices(removed))
    seen = set(gone)
    comps = []
    for start in range(G.n):
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in G.adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def reachable_from(G: Graph, sources: Iterable[int], removed: Iterable[int] = ()) -> tuple[int, ...]:
    """Vertices reachable from ``sources`` in G minus ``removed`` (sources not
    in ``removed`` are included)."""
    gone = set(removed)
    seen = set()
    queue = deque()
    for s in sorted(set(sources)):
        if s not in gone and s not in seen:
            seen.add(s)
            queue.append(s)
    while queue:
        v = queue.popleft()
        for w in G.adj[v]:
            if w not in gone and w not in seen:
                seen.add(w)
                queue.append(w)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class InducedSubgraph:
    graph: Graph
    orig: tuple[int, ...]          # new id -> original id

    def to_new(self, v: int) -> int:
        # orig is sorted, so binary search would do; linear is fine at our sizes
        return self.orig.index(v)

    def map_back(self, vs: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self.orig[v] for v in vs))


def induced_subgraph(G: Graph, X: Iterable[int]) -> InducedSubgraph:
    """G[X] relabeled 0..|X|-1 in ascending original order, plus the mapping."""
    xs = G.check_vertices(X)
    index = {v: i for i, v in enumerate(xs)}
    edges = [(index[u], index[v]) for u, v in G.edges() if u in index and v in index]
    labels = tuple(G.labels[v] for v in xs) if G.labels is not None else None
    return InducedSubgraph(Graph(len(xs), edges, labels), xs)


def delete_vertices(G: Graph, X: Iterable[int]) -> InducedSubgraph:
    xs = set(G.check_vertices(X))
    return induced_subgraph(G, [v for v in range(G.n) if v not in xs])


@dataclass(frozen=True)
class Contraction:
    """Result of collapsing two terminal sets onto fresh vertices a and b.

    Vertices 0..len(keep)-1 are the kept vertices in ascending original order;
    ``a`` and ``b`` are the last two ids. ``orig`` maps kept ids back.
    """
    graph: Graph
    a: int
    b: int
    orig: tuple[int, ...]

    def map_back(self, vs: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self.orig[v] for v in vs if v not in (self.a, self.b)))


def contract_terminal_sets(G: Graph, keep: Iterable[int], A: Iterable[int],
                           B: Iterable[int]) -> Contraction:
    keep_s = G.check_vertices(keep)
    A_s = set(G.check_vertices(A))
    B_s = set(G.check_vertices(B))
    if not A_s or not B_s:
        raise DomainError("terminal sets must be non-empty")
    if A_s & B_s:
        raise DomainError("terminal sets must be disjoint")
    if (A_s | B_s) & set(keep_s):
        raise DomainError("keep set must avoid both terminal sets")
    index = {v: i for i, v in enumerate(keep_s)}
    a = len(keep_s)
    b = a + 1
    edges = set()
    for u, v in G.edges():
        iu, iv = index.get(u), index.get(v)
        if iu is not None and iv is not None:
            edges.add((iu, iv))
        elif iu is not None:
            if v in A_s:
                edges.add((iu, a))
            elif v in B_s:
                edges.add((iu, b))
        elif iv is not None:
            if u in A_s:
                edges.add((iv, a))
            elif u in B_s:
                edges.add((iv, b))
        elif (u in A_s and v in B_s) or (u in B_s and v in A_s):
            edges.add((a, b))
    return Contraction(Graph(b + 1, edges), a, b, keep_s)


def two_coloring(G: Graph) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """A proper 2-coloring (B, W) if G is bipartite, else None.

    Per component, the smallest vertex goes to the B side.
    """
    color = [-1] * G.n
    for start in range(G.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in G.adj[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    black = tuple(v for v in range(G.n) if color[v] == 0)
    white = tuple(v for v in range(G.n) if color[v] == 1)
    return black, white


def is_bipartite(G: Graph) -> bool:
    return two_coloring(G) is not None


def shortest_odd_cycle(G: Graph) -> Optional[tuple[int, ...]]:
    """A minimum-length odd cycle, or None if G is bipartite.

    Runs a BFS in the bipartite double cover from (v, even) to (v, odd) for
    each v ascending; the best distance is the length of a shortest odd closed
    walk, which at the global minimum is a simple cycle.
    """
    best: Optional[tuple[int, int]] = None   # (length, start vertex)
    best_cycle: Optional[tuple[int, ...]] = None
    for v in range(G.n):
        if best is not None and best[0] == 3:
            break
        dist = {}
        parent = {}
        src = (v, 0)
        dist[src] = 0
        queue = deque([src])
        target = (v, 1)
        while queue:
            u, side = queue.popleft()
            if (u, side) == target:
                break
            for w in G.adj[u]:
                nxt = (w, 1 - side)
                if nxt not in dist:
                    dist[nxt] = dist[(u, side)] + 1
                    parent[nxt] = (u, side)
                    queue.append(nxt)
        if target in dist and (best is None or dist[target] < best[0]):
            best = (dist[target], v)
            walk = []
            cur = target
            while cur != src:
                walk.append(cur[0])
                cur = parent[cur]
            walk.append(v)
            walk.reverse()               # v ... v, length best[0]+1
            best_cycle = tuple(walk[:-1])
    if best_cycle is None:
        return None
    if __debug__:
        _assert_min_odd_cycle_shape(G, best_cycle)
    return best_cycle


def _assert_min_odd_cycle_shape(G: Graph, cyc: tuple[int, ...]) -> None:
    L = len(cyc)
    assert L % 2 == 1 and L >= 3
    assert len(set(cyc)) == L, "shortest odd closed walk must be simple"
    on_cycle = set(cyc)
    for i, u in enumerate(cyc):
        assert G.has_edge(u, cyc[(i + 1) % L])
    if L > 3:
        for i in range(L):
            for j in range(i + 2, L):
                if i == 0 and j == L - 1:
                    continue
                assert not G.has_edge(cyc[i], cyc[j]), "chord in minimum odd cycle"
        for v in range(G.n):
            if v not in on_cycle:
                assert sum(1 for w in G.adj[v] if w in on_cycle) <= 2
