import pytest

from sepkit.graphs import DomainError, Graph
from sepkit.oracle import (FIXTURES, bf_edge_induced_vertex_cut,
                           bf_exact_stable_bipartization, bf_g_mincut,
                           bf_odd_cycle_transversal, bf_separator_union,
                           bf_stable_bipartization, complete_graph, cycle_graph,
                           path_graph, _bipartite_after, _independent)
from sepkit.oracle import enumerate_minimal_separators
from sepkit.problems import (AnnotatedInstance, EdgeCutWitness,
                             bipartite_max_independent_set,
                             bipartization_branches, edge_induced_vertex_cut,
                             exact_separator_union, exact_stable_bipartization,
                             odd_cycle_transversal, stable_bipartization,
                             stable_st_cut)
from sepkit.separation import is_separator
from sepkit.solver import MATCH_DEFICIENCY

from strategies import nonadjacent_pair, seeded_graphs

P3 = FIXTURES["P3"].graph
C4 = FIXTURES["C4"].graph
D4 = FIXTURES["D4"].graph
PP = FIXTURES["PP"].graph


def test_stable_st_cut_examples():
    assert stable_st_cut(C4, 0, 2, 2) == (1, 3)
    assert stable_st_cut(D4, 0, 2, 2) is None
    assert stable_st_cut(Graph(2), 0, 1, 0) == ()


def test_oct_examples():
    assert odd_cycle_transversal(C4, 0) == ()
    out = odd_cycle_transversal(cycle_graph(5), 1)
    assert out is not None and len(out) == 1
    assert odd_cycle_transversal(complete_graph(4), 1) is None
    out = odd_cycle_transversal(complete_graph(4), 2)
    assert out is not None and len(out) == 2


def test_oct_returns_minimum_size():
    # two triangles sharing a vertex: greedy compression alone would settle
    # on two vertices, the minimum transversal is the shared one
    shared = Graph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    assert odd_cycle_transversal(shared, 3) == (0,)
    for G, rng in seeded_graphs(80, seed=79, n_lo=4, n_hi=12,
                                ps=(0.25, 0.45, 0.65)):
        k = rng.randint(0, 4)
        fast = odd_cycle_transversal(G, k)
        slow = bf_odd_cycle_transversal(G, k)
        assert (fast is None) == (slow is None)
        if fast is not None:
            assert len(fast) == len(slow)


def test_stable_bipartization_examples():
    out = stable_bipartization(complete_graph(3), 1)
    assert out is not None and len(out) == 1
    for k in range(5):
        assert stable_bipartization(complete_graph(4), k) is None
    assert stable_bipartization(C4, 0) == ()


def test_exact_stable_bipartization_examples():
    out = exact_stable_bipartization(cycle_graph(5), 2)
    assert out is not None and len(out) == 2
    assert _independent(cycle_graph(5), out) and _bipartite_after(cycle_graph(5), out)
    assert exact_stable_bipartization(complete_graph(3), 2) is None
    out = exact_stable_bipartization(P3, 1)
    assert out is not None and len(out) == 1


def test_exact_stable_bipartization_split_branch():
    # odd cycles longer than 3k+1 with every vertex allowed go through the
    # split-and-extend route
    for n, k in ((5, 1), (11, 3), (13, 2)):
        G = cycle_graph(n)
        out = exact_stable_bipartization(G, k)
        assert out is not None and len(out) == k
        assert _independent(G, out) and _bipartite_after(G, out)


def test_exact_stable_bipartization_annotated():
    c5 = cycle_graph(5)
    assert exact_stable_bipartization(c5, 1, allowed=(0,)) == (0,)
    assert exact_stable_bipartization(c5, 2, allowed=(0, 1)) is None
    assert exact_stable_bipartization(c5, 2, allowed=(0, 2)) == (0, 2)
    assert exact_stable_bipartization(c5, 1, allowed=()) is None


def test_exact_stable_bipartization_negative_k():
    with pytest.raises(DomainError):
        exact_stable_bipartization(P3, -1)


def test_bipartite_max_independent_set():
    assert set(bipartite_max_independent_set(C4)) in ({0, 2}, {1, 3})
    assert len(bipartite_max_independent_set(path_graph(5))) == 3
    assert len(bipartite_max_independent_set(Graph(4))) == 4
    with pytest.raises(DomainError):
        bipartite_max_independent_set(cycle_graph(3))


def test_eivc_examples():
    p4 = path_graph(4)
    wit = edge_induced_vertex_cut(p4, 0, 3, 1)
    assert wit == EdgeCutWitness(((1, 2),), (1, 2))
    assert edge_induced_vertex_cut(C4, 0, 2, 1) is None
    wit = edge_induced_vertex_cut(C4, 0, 2, 2)
    assert wit is not None and wit.deleted == (1, 3) and len(wit.edges) == 2
    assert edge_induced_vertex_cut(Graph(2, [(0, 1)]), 0, 1, 9) is None


def test_eivc_witness_semantics():
    for G, rng in seeded_graphs(60, seed=53, n_lo=4, n_hi=10):
        s, t = rng.sample(range(G.n), 2)
        k = rng.randint(0, 3)
        wit = edge_induced_vertex_cut(G, s, t, k)
        if wit is None:
            continue
        assert len(wit.edges) <= k
        for u, v in wit.edges:
            assert G.has_edge(u, v)
        deleted = {v for e in wit.edges for v in e} - {s, t}
        assert tuple(sorted(deleted)) == wit.deleted
        assert is_separator(G, deleted, (s,), (t,))


def test_eivc_agrees_with_matching_deficiency_reduction():
    for G, rng in seeded_graphs(60, seed=59, n_lo=4, n_hi=9):
        s, t = rng.sample(range(G.n), 2)
        k = rng.randint(0, 2)
        direct = bf_edge_induced_vertex_cut(G, s, t, k)
        reduced = bf_g_mincut(G, s, t, 2 * k, MATCH_DEFICIENCY(k).membership)
        fast = edge_induced_vertex_cut(G, s, t, k)
        assert (direct is None) == (reduced is None) == (fast is None)


def test_exact_separator_union_examples():
    assert exact_separator_union(P3, 0, 2, 1) == (1,)
    assert exact_separator_union(PP, 0, 5, 2) == (1, 2, 3, 4)
    assert exact_separator_union(C4, 0, 2, 1) == ()


def test_exact_separator_union_adjacent_error():
    with pytest.raises(DomainError):
        exact_separator_union(Graph(2, [(0, 1)]), 0, 1, 1)


def test_problem_decisions_match_oracle():
    for G, rng in seeded_graphs(60, seed=61, n_lo=4, n_hi=11):
        k = rng.randint(0, 3)
        assert (odd_cycle_transversal(G, k) is None) == \
            (bf_odd_cycle_transversal(G, k) is None)
        assert (stable_bipartization(G, k) is None) == \
            (bf_stable_bipartization(G, k) is None)
        assert (exact_stable_bipartization(G, k) is None) == \
            (bf_exact_stable_bipartization(G, k) is None)


def test_exact_separator_union_matches_oracle():
    checked = 0
    for G, rng in seeded_graphs(40, seed=67, n_lo=4, n_hi=10):
        pair = nonadjacent_pair(G, rng)
        if pair is None:
            continue
        s, t = pair
        k = rng.randint(1, 3)
        assert exact_separator_union(G, s, t, k) == bf_separator_union(G, s, t, k)
        checked += 1
    assert checked >= 30


def test_every_branch_separator_contains_r():
    G = cycle_graph(5)
    S0 = odd_cycle_transversal(G, 2)
    saw_nonempty_r = False
    for br in bipartization_branches(G, S0):
        assert _independent(G, br.B0) and _independent(G, br.W0)
        if not br.R:
            continue
        saw_nonempty_r = True
        r_ids = {i for i, o in enumerate(br.orig) if o in br.R}
        for S in enumerate_minimal_separators(br.graph, br.s, br.t, br.graph.n):
            assert r_ids <= set(S)
    assert saw_nonempty_r


def test_annotated_instance_pick_updates_allowed():
    inst = AnnotatedInstance(cycle_graph(5), (0, 1, 2, 3, 4), 2)
    nxt = inst.pick(0)
    assert nxt.chosen == (0,) and nxt.budget == 1
    assert set(nxt.allowed) == {2, 3}   # 0 and its neighbors 1, 4 removed


def test_oct_witnesses_verify():
    for G, rng in seeded_graphs(40, seed=71, n_lo=4, n_hi=11):
        k = rng.randint(0, 4)
        out = odd_cycle_transversal(G, k)
        if out is not None:
            assert len(out) <= k and _bipartite_after(G, out)
        sb = stable_bipartization(G, k)
        if sb is not None:
            assert len(sb) <= k and _independent(G, sb) and _bipartite_after(G, sb)
        ex = exact_stable_bipartization(G, k)
        if ex is not None:
            assert len(ex) == k and _independent(G, ex) and _bipartite_after(G, ex)
