"""Tree decompositions: min-fill heuristic, exact width for small graphs,
validation, nice form for the solver DP, and PACE-style text import/export.

Solver correctness relies only on decomposition validity; the heuristic width
just controls DP table sizes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .graphs import DomainError, Graph, ParseError

LEAF = "leaf"
INTRODUCE = "introduce"
FORGET = "forget"
JOIN = "join"


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[tuple[int, ...], ...]
    tree: tuple[tuple[int, int], ...]     # edges over bag indices

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for i, j in self.tree:
            adj[i].append(j)
            adj[j].append(i)
        return [sorted(a) for a in adj]


def _eliminate(adj: dict[int, set[int]], v: int) -> None:
    nbrs = adj.pop(v)
    for u in nbrs:
        adj[u].discard(v)
    for u in nbrs:
        for w in nbrs:
            if u < w:
                adj[u].add(w)
                adj[w].add(u)


def _fill_in(adj: dict[int, set[int]], v: int) -> int:
    nbrs = sorted(adj[v])
    count = 0
    for i, u in enumerate(nbrs):
        for w in nbrs[i + 1:]:
            if w not in adj[u]:
                count += 1
    return count


def _decomposition_from_order(G: Graph, order: list[int]) -> TreeDecomposition:
    """Standard bag construction: bag of v = v plus its neighbors at
    elimination time; each bag hangs off the bag of the earliest-eliminated
    vertex among those neighbors."""
    if G.n == 0:
        return TreeDecomposition(((),), ())
    adj = {v: set(G.adj[v]) for v in range(G.n)}
    position = {v: i for i, v in enumerate(order)}
    bags = []
    rest : list[list[int]] = []
    for v in order:
        bags.append(tuple(sorted(adj[v] | {v})))
        rest.append(sorted(adj[v], key=lambda u: position[u]))
        _eliminate(adj, v)
    edges = []
    for i, nbrs in enumerate(rest):
        if nbrs:
            edges.append((i, position[nbrs[0]]))
        elif i + 1 < len(order):
            edges.append((i, i + 1))
    return TreeDecomposition(tuple(bags), tuple(edges))


def min_fill_order(G: Graph) -> list[int]:
    adj = {v: set(G.adj[v]) for v in range(G.n)}
    order = []
    while adj:
        v = min(adj, key=lambda u: (_fill_in(adj, u), u))
        order.append(v)
        _eliminate(adj, v)
    return order


def exact_treewidth_order(G: Graph) -> tuple[int, list[int]]:
    """Exact treewidth with an optimal elimination order, by dynamic
    programming over vertex subsets (bitmask form). Intended for n <= 14."""
    n = G.n
    if n == 0:
        return -1, []
    if n > 16:
        raise DomainError(f"exact treewidth limited to n <= 16, got {n}")
    masks = [0] * n
    for u, v in G.edges():
        masks[u] |= 1 << v
        masks[v] |= 1 << u

    def q_degree(S: int, v: int) -> int:
        # neighbors of the component of v in G[S + v], outside S and v
        region = 1 << v
        frontier = 1 << v
        reach = 0
        while frontier:
            w = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            nb = masks[w]
            reach |= nb
            new = nb & S & ~region
            region |= new
            frontier |= new
        return bin(reach & ~S & ~(1 << v)).count("1")

    full = (1 << n) - 1
    f = [0] * (1 << n)
    for S in range(1, 1 << n):
        best = n
        T = S
        while T:
            v = (T & -T).bit_length() - 1
            T &= T - 1
            rest = S & ~(1 << v)
            best = min(best, max(f[rest], q_degree(rest, v)))
        f[S] = best

    order: list[int] = []
    S = full
    while S:
        for v in range(n):
            if not S & (1 << v):
                continue
            rest = S & ~(1 << v)
            if max(f[rest], q_degree(rest, v)) == f[S]:
                order.append(v)
                S = rest
                break
    order.reverse()
    return f[full], order


def exact_treewidth(G: Graph) -> int:
    return exact_treewidth_order(G)[0]


def decompose(G: Graph) -> TreeDecomposition:
    """Min-fill decomposition with ascending-id tie-breaking; small graphs with
    a poor heuristic width get the exact order instead."""
    td = _decomposition_from_order(G, min_fill_order(G))
    if G.n <= 12 and td.width > G.n / 2:
        width, order = exact_treewidth_order(G)
        if width < td.width:
            td = _decomposition_from_order(G, order)
    return td


def validate_decomposition(G: Graph, td: TreeDecomposition) -> bool:
    nb = len(td.bags)
    if nb == 0:
        return False
    if len(td.tree) != nb - 1:
        return False
    adj = td.neighbors()
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    if len(seen) != nb:
        return False
    holds = [[] for _ in range(G.n)]
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < G.n:
                return False
            holds[v].append(i)
    if any(not h for h in holds):
        return False
    for u, v in G.edges():
        if not any(u in td.bags[i] and v in td.bags[i] for i in holds[u]):
            return False
    for v in range(G.n):
        mine = set(holds[v])
        start = holds[v][0]
        seen_v = {start}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in adj[i]:
                if j in mine and j not in seen_v:
                    seen_v.add(j)
                    queue.append(j)
        if seen_v != mine:
            return False
    return True


# -- nice form --------------------------------------------------------------

@dataclass(frozen=True)
class NiceNode:
    kind: str
    vertex: Optional[int]
    bag: tuple[int, ...]
    children: tuple[int, ...]


@dataclass(frozen=True)
class NiceDecomposition:
    """Rooted nice decomposition in post-order (children precede parents);
    the last node is the root and has an empty bag."""
    nodes: tuple[NiceNode, ...]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1


class _NiceBuilder:
    def __init__(self):
        self.nodes: list[NiceNode] = []

    def add(self, kind, vertex, bag, children) -> int:
        self.nodes.append(NiceNode(kind, vertex, tuple(sorted(bag)), tuple(children)))
        return len(self.nodes) - 1

    def leaf(self) -> int:
        return self.add(LEAF, None, (), ())

    def chain_to(self, idx: int, have: tuple[int, ...], want: Iterable[int]) -> int:
        want_s = set(want)
        cur = set(have)
        for v in sorted(cur - want_s):
            cur.discard(v)
            idx = self.add(FORGET, v, cur, (idx,))
        for v in sorted(want_s - cur):
            cur.add(v)
            idx = self.add(INTRODUCE, v, cur, (idx,))
        return idx


def make_nice(td: TreeDecomposition, G: Graph, root_vertex: Optional[int] = None) -> NiceDecomposition:
    """Convert a valid decomposition to nice form, rooted at the first bag
    containing ``root_vertex`` (bag 0 otherwise). Width is preserved."""
    if not validate_decomposition(G, td):
        raise DomainError("invalid tree decomposition")
    root = 0
    if root_vertex is not None:
        for i, bag in enumerate(td.bags):
            if root_vertex in bag:
                root = i
                break
    adj = td.neighbors()
    b = _NiceBuilder()

    parent = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        i = queue.popleft()
        for j in adj[i]:
            if j not in parent:
                parent[j] = i
                order.append(j)
                queue.append(j)

    topped: dict[int, int] = {}
    for i in reversed(order):
        kids = [j for j in adj[i] if parent.get(j) == i]
        bag = td.bags[i]
        if not kids:
            idx = b.chain_to(b.leaf(), (), bag)
        else:
            tops = []
            for j in kids:
                tops.append(b.chain_to(topped[j], td.bags[j], bag))
            idx = tops[0]
            for other in tops[1:]:
                idx = b.add(JOIN, None, bag, (idx, other))
        topped[i] = idx
    final = b.chain_to(topped[root], td.bags[root], ())
    if b.nodes[final].bag:
        raise AssertionError("root bag must end empty")
    return NiceDecomposition(tuple(b.nodes))


def validate_nice(G: Graph, nice: NiceDecomposition) -> bool:
    """Shape and coverage checks for a nice decomposition of G."""
    seen_vertices = set()
    covered_edges = set()
    for idx, nd in enumerate(nice.nodes):
        if any(c >= idx for c in nd.children):
            return False
        bag = set(nd.bag)
        if nd.kind == LEAF:
            if nd.children or bag:
                return False
        elif nd.kind == INTRODUCE:
            (c,) = nd.children
            if set(nice.nodes[c].bag) | {nd.vertex} != bag or nd.vertex in nice.nodes[c].bag:
                return False
            seen_vertices.add(nd.vertex)
            for u in nice.nodes[c].bag:
                if G.has_edge(u, nd.vertex):
                    covered_edges.add((min(u, nd.vertex), max(u, nd.vertex)))
        elif nd.kind == FORGET:
            (c,) = nd.children
            if set(nice.nodes[c].bag) - {nd.vertex} != bag or nd.vertex not in nice.nodes[c].bag:
                return False
        elif nd.kind == JOIN:
            if len(nd.children) != 2:
                return False
            if any(nice.nodes[c].bag != nd.bag for c in nd.children):
                return False
        else:
            return False
    if nice.nodes[-1].bag:
        return False
    return seen_vertices == set(range(G.n)) and covered_edges == set(G.edges())


# -- PACE-style text format ---------------------------------------------------

def format_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append("b " + " ".join([str(i)] + [str(v + 1) for v in bag]))
    for i, j in td.tree:
        lines.append(f"{i + 1} {j + 1}")
    return "\n".join(lines) + "\n"


def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    header = None
    bags: dict[int, tuple[int, ...]] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "s":
            if header is not None or len(fields) != 5 or fields[1] != "td":
                raise ParseError("bad or duplicate 's td' header", lineno)
            header = tuple(int(x) for x in fields[2:])
        elif fields[0] == "b":
            idx = int(fields[1])
            if idx in bags:
                raise ParseError(f"duplicate bag {idx}", lineno)
            bags[idx] = tuple(sorted(int(x) - 1 for x in fields[2:]))
        else:
            if len(fields) != 2:
                raise ParseError("bad tree edge", lineno)
            edges.append((int(fields[0]) - 1, int(fields[1]) - 1))
    if header is None:
        raise ParseError("missing 's td' header", 1)
    nbags, _, n = header
    if sorted(bags) != list(range(1, nbags + 1)):
        raise ParseError("bag ids must be 1..#bags", 1)
    td = TreeDecomposition(tuple(bags[i] for i in range(1, nbags + 1)), tuple(edges))
    return td, n
