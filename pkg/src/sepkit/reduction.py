"""Torso graphs, the recursive cover-set construction, and the
bounded-treewidth replacement graph.

``cover_set(G, s, t, k)`` returns a vertex set containing s, t, and every
vertex of every minimal s-t separator of size at most k. At excess 0 the
chain boundaries suffice; for positive excess, each layer between consecutive
boundaries is handled by contracting boundary subsets onto two fresh
terminals and recursing with a smaller excess.

``reduce_instance`` unions the covers over all terminal pairs, takes the
torso, and replaces every torso-added edge by k+1 parallel two-edge paths
through fresh undeletable gadget vertices, so that small separators can never
use shortcuts that do not exist in the original graph.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from typing import Iterable, Optional

from .chains import SeparatorChain, build_chain
from .graphs import (DomainError, Graph, components, contract_terminal_sets,
                     vset)
from .separation import min_vertex_separator

GADGET = "gadget"
SATURATION_LIMIT = 2 ** 63 - 1


@dataclass(frozen=True)
class TreewidthBounds:
    ell: int
    excess: int
    g_value: int
    f_value: int
    saturated: bool = False
    reduced_width_bound: Optional[int] = None


def tw_bound(ell: int, excess: int) -> TreewidthBounds:
    """Width bound g and work bound f for the cover recursion.

    g(l, 0) = 6l and g(l, e) = 3 * (2l + 3^(2l) * (g(l, e-1) + 1));
    f(l, 0) = 1 and f(l, e) = f(l, e-1) * 3^(2l) + 1. Values beyond 2^63 - 1
    saturate with a warning.
    """
    if ell < 1 or excess < 0:
        raise DomainError("need ell >= 1 and excess >= 0")
    g, f = 6 * ell, 1
    branch = 3 ** (2 * ell)
    saturated = False
    for _ in range(excess):
        g = 3 * (2 * ell + branch * (g + 1))
        f = f * branch + 1
        if g > SATURATION_LIMIT or f > SATURATION_LIMIT:
            saturated = True
            g = min(g, SATURATION_LIMIT)
            f = min(f, SATURATION_LIMIT)
    if saturated:
        warnings.warn(f"treewidth bound saturated for ell={ell}, excess={excess}",
                      stacklevel=2)
    return TreewidthBounds(ell, excess, g, f, saturated)


@dataclass(frozen=True)
class TorsoResult:
    graph: Graph                       # on C, relabeled ascending
    orig: tuple[int, ...]              # new id -> original id
    added_edges: tuple[tuple[int, int], ...]   # original ids, absent from G

    def to_new(self, v: int) -> int:
        return self.orig.index(v)


def torso(G: Graph, C: Iterable[int]) -> TorsoResult:
    """Graph on C with an edge for each original adjacency or each path whose
    internal vertices avoid C."""
    cs = G.check_vertices(C)
    index = {v: i for i, v in enumerate(cs)}
    edges = {(index[u], index[v]) for u, v in G.edges()
             if u in index and v in index}
    original = set(edges)
    for comp in components(G, cs):
        attach = sorted({index[w] for v in comp for w in G.adj[v] if w in index})
        for i, u in enumerate(attach):
            for v in attach[i + 1:]:
                edges.add((u, v))
    added = tuple(sorted((cs[u], cs[v]) for u, v in edges - original))
    return TorsoResult(Graph(len(cs), edges), cs, added)


@dataclass(frozen=True)
class LayerSystem:
    """Layers L_i between consecutive chain boundaries, with the boundary pool
    each layer may touch."""
    chain: SeparatorChain
    layers: tuple[tuple[int, ...], ...]
    pools: tuple[tuple[int, ...], ...]


def layer_system(chain: SeparatorChain) -> LayerSystem:
    xs = chain.sets_with_sentinels()
    ss = chain.boundaries_with_sentinels()
    layers = []
    pools = []
    for i in range(1, len(xs)):
        prev = set(xs[i - 1]) | set(ss[i - 1])
        layers.append(tuple(v for v in xs[i] if v not in prev))
        pools.append(vset(set(ss[i]) | set(ss[i - 1])))
    return LayerSystem(chain, tuple(layers), tuple(pools))


def _disjoint_subset_pairs(pool: tuple[int, ...]):
    """Unordered pairs (A, B) of disjoint non-empty subsets of pool.

    Each element takes one of three states; the lowest selected element is
    normalized into A, which enumerates every unordered pair exactly once.
    """
    n = len(pool)
    for code in range(3 ** n):
        A, B = [], []
        c = code
        for v in pool:
            c, r = divmod(c, 3)
            if r == 1:
                A.append(v)
            elif r == 2:
                B.append(v)
        if A and B and min(A) < min(B):
            yield tuple(A), tuple(B)


def cover_set(G: Graph, s: int, t: int, k: int) -> tuple[int, ...]:
    """All vertices on minimal s-t separators of size <= k, plus s and t.

    Degrades to {s, t} when the terminals are adjacent or no separator of
    size <= k exists.
    """
    G.check_vertices((s, t))
    if s == t:
        raise DomainError("terminals must be distinct")
    if G.has_edge(s, t):
        return vset((s, t))
    r = min_vertex_separator(G, (s,), (t,), cap=k)
    if not r.within(k):
        return vset((s, t))
    ell = int(r.size)
    excess = k - ell

    chain = build_chain(G, s, t)
    cover: set[int] = {s, t}
    for S in chain.boundaries:
        cover.update(S)
    if excess == 0:
        return tuple(sorted(cover))

    system = layer_system(chain)
    for layer, pool in zip(system.layers, system.pools):
        if not layer:
            continue
        for A, B in _disjoint_subset_pairs(pool):
            con = contract_terminal_sets(G, layer, A, B)
            rr = min_vertex_separator(con.graph, (con.a,), (con.b,), cap=k)
            if not rr.within(k):
                continue
            sub_budget = min(k, int(rr.size) + excess - 1)
            sub = cover_set(con.graph, con.a, con.b, sub_budget)
            cover.update(con.map_back(sub))
    return tuple(sorted(cover))


@dataclass(frozen=True)
class ReducedInstance:
    """Replacement graph preserving the minimal terminal-pair separators of
    size <= k, with bookkeeping to map answers back."""
    gstar: Graph
    cover: tuple[int, ...]                   # C', original ids
    terminals: tuple[int, ...]               # original ids
    k: int
    origin: tuple                            # per gstar vertex: orig id or GADGET
    undeletable: tuple[int, ...]             # gstar ids of gadget vertices
    width_bound: int

    def to_gstar(self, v: int) -> int:
        return self.cover.index(v)

    def map_back(self, vs: Iterable[int]) -> tuple[int, ...]:
        out = []
        for v in vs:
            o = self.origin[v]
            if o == GADGET:
                raise DomainError("gadget vertex has no original id")
            out.append(o)
        return tuple(sorted(out))

    def to_jsonable(self) -> dict:
        return {
            "n": self.gstar.n,
            "edges": [[u + 1, v + 1] for u, v in self.gstar.edges()],
            "cover": [v + 1 for v in self.cover],
            "terminals": [v + 1 for v in self.terminals],
            "k": self.k,
            "origin": [GADGET if o == GADGET else o + 1 for o in self.origin],
            "width_bound": self.width_bound,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), sort_keys=True)


def reduce_instance(G: Graph, terminals: Iterable[int], k: int) -> ReducedInstance:
    """Build the replacement graph for the given terminal set and budget."""
    terms = G.check_vertices(terminals)
    if len(terms) < 2:
        raise DomainError("need at least two terminals")
    cover: set[int] = set(terms)
    contributing = 0
    g_max = 0
    for i, s in enumerate(terms):
        for t in terms[i + 1:]:
            if G.has_edge(s, t):
                continue
            r = min_vertex_separator(G, (s,), (t,), cap=k)
            if not r.within(k):
                continue
            cover.update(cover_set(G, s, t, k))
            contributing += 1
            if r.size >= 1:
                g_max = max(g_max, tw_bound(int(r.size), k - int(r.size)).g_value)
    # one extra for the degree-2 gadget attachments
    width_bound = 3 * contributing * (g_max + 1) + 1

    tor = torso(G, cover)
    added_new = {(tor.to_new(u), tor.to_new(v)) for u, v in tor.added_edges}
    base = len(tor.orig)
    edges = [e for e in tor.graph.edges() if e not in added_new]
    origin: list = list(tor.orig)
    gadgets = []
    nxt = base
    for u, v in sorted(added_new):
        for _ in range(k + 1):
            edges.append((u, nxt))
            edges.append((v, nxt))
            origin.append(GADGET)
            gadgets.append(nxt)
            nxt += 1
    gstar = Graph(nxt, edges)
    return ReducedInstance(gstar, tor.orig, terms, k, tuple(origin),
                           tuple(gadgets), width_bound)
