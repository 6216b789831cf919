import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepkit.graphs import DomainError, Graph
from sepkit.oracle import (FIXTURES, bf_max_disjoint_paths,
                           bf_min_separator_size, enumerate_minimal_separators)
from sepkit.separation import (INFINITE, is_separator, min_separator_containing,
                               min_vertex_separator, minimalize_separator)

from strategies import graphs, seeded_graphs

P3 = FIXTURES["P3"].graph
C4 = FIXTURES["C4"].graph
D4 = FIXTURES["D4"].graph
PP = FIXTURES["PP"].graph


def test_min_separator_examples():
    r = min_vertex_separator(P3, (0,), (2,))
    assert r.size == 1 and r.witness == (1,)
    r = min_vertex_separator(Graph(2, [(0, 1)]), (0,), (1,))
    assert r.is_infinite and r.size == INFINITE
    r = min_vertex_separator(PP, (0,), (5,))
    assert r.size == 2 and r.witness == (1, 3)


def test_min_separator_overlapping_sets_infinite():
    assert min_vertex_separator(C4, (0, 1), (1, 2)).is_infinite


def test_min_separator_cap():
    r = min_vertex_separator(PP, (0,), (5,), cap=1)
    assert r.exceeds_cap and not r.is_finite and not r.is_infinite
    assert r.size == 2   # lower bound reached
    r = min_vertex_separator(PP, (0,), (5,), cap=2)
    assert r.is_finite and r.size == 2


def test_min_separator_set_terminals():
    r = min_vertex_separator(PP, (0, 1), (4, 5,))
    assert r.is_finite
    assert is_separator(PP, r.witness, (0, 1), (4, 5))


def test_min_separator_empty_terminals_error():
    with pytest.raises(DomainError):
        min_vertex_separator(P3, (), (2,))


def test_witness_is_source_closest():
    # both {a1,b1} and {a2,b2} are minimum: canonical pick is nearest the source
    assert min_vertex_separator(PP, (0,), (5,)).witness == (1, 3)
    assert min_vertex_separator(PP, (5,), (0,)).witness == (2, 4)


def test_source_side_field():
    r = min_vertex_separator(PP, (0,), (5,))
    assert r.source_side == (0,)


def test_is_separator_examples():
    assert is_separator(P3, (1,), (0,), (2,))
    assert not is_separator(C4, (1,), (0,), (2,))
    # A and B share a vertex not in S: never separated
    assert not is_separator(C4, (), (1,), (1,))


def test_minimalize_examples():
    assert minimalize_separator(P3, (1,), (0,), (2,)) == (1,)
    assert minimalize_separator(C4, (1, 3), (0,), (2,)) == (1, 3)
    # ascending scan drops a1 first, then keeps a2 and b1
    assert minimalize_separator(PP, (1, 2, 3), (0,), (5,)) == (2, 3)


def test_minimalize_requires_separator():
    with pytest.raises(DomainError):
        minimalize_separator(C4, (1,), (0,), (2,))


def test_min_separator_containing_examples():
    assert min_separator_containing(P3, 0, 2, 1).witness == (1,)
    assert min_separator_containing(PP, 0, 5, 2).witness == (2, 3)
    assert min_separator_containing(D4, 0, 2, 1).witness == (1, 3)


def test_min_separator_containing_absent():
    # a2 is in no minimum separator of D4's companion: take C4 plus chords
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
    # vertex 3 and 4 form the only size-2 separators between 0 and 2? sanity via oracle
    r = min_separator_containing(g, 1, 4, 3)
    oracle_seps = enumerate_minimal_separators(g, 1, 4, 99)
    ell = min(len(S) for S in oracle_seps)
    in_minimum = any(3 in S for S in oracle_seps if len(S) == ell)
    assert (r is not None) == in_minimum


def test_min_separator_containing_adjacent_error():
    with pytest.raises(DomainError):
        min_separator_containing(Graph(3, [(0, 1)]), 0, 1, 2)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=8), st.data())
def test_flow_size_matches_subset_enumeration(G, data):
    s = data.draw(st.integers(0, G.n - 1))
    t = data.draw(st.integers(0, G.n - 1).filter(lambda v: v != s))
    fast = min_vertex_separator(G, (s,), (t,))
    assert fast.size == bf_min_separator_size(G, (s,), (t,))
    if fast.is_finite:
        assert is_separator(G, fast.witness, (s,), (t,))
        assert len(fast.witness) == fast.size


def test_menger_duality_on_random_graphs():
    # max internally disjoint paths equals the flow answer (n <= 10, sparse,
    # denser cases covered up to n = 8 to keep path packing affordable)
    checked = 0
    for G, rng in seeded_graphs(60, seed=5, n_lo=4, n_hi=10, ps=(0.2, 0.3)):
        s, t = 0, G.n - 1
        if G.has_edge(s, t):
            continue
        assert min_vertex_separator(G, (s,), (t,)).size == bf_max_disjoint_paths(G, s, t)
        checked += 1
    for G, rng in seeded_graphs(30, seed=6, n_lo=4, n_hi=8, ps=(0.5, 0.7)):
        s, t = 0, G.n - 1
        if G.has_edge(s, t):
            continue
        assert min_vertex_separator(G, (s,), (t,)).size == bf_max_disjoint_paths(G, s, t)
        checked += 1
    assert checked > 40


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=3, max_n=8), st.data())
def test_minimalize_is_minimal(G, data):
    s = data.draw(st.integers(0, G.n - 1))
    t = data.draw(st.integers(0, G.n - 1).filter(lambda v: v != s))
    r = min_vertex_separator(G, (s,), (t,))
    if not r.is_finite:
        return
    extra = [v for v in range(G.n) if v not in (s, t)]
    S = set(r.witness) | set(extra[:2]) - {s, t}
    if not is_separator(G, S, (s,), (t,)):
        return
    out = minimalize_separator(G, S, (s,), (t,))
    assert is_separator(G, out, (s,), (t,))
    for v in out:
        assert not is_separator(G, set(out) - {v}, (s,), (t,))


def test_membership_test_agrees_with_enumeration():
    for G, rng in seeded_graphs(40, seed=7, n_lo=4, n_hi=9):
        pairs = [(i, j) for i in range(G.n) for j in range(i + 1, G.n)
                 if not G.has_edge(i, j)]
        if not pairs:
            continue
        s, t = pairs[0]
        r = min_vertex_separator(G, (s,), (t,))
        ell = int(r.size) if r.is_finite else None
        if ell is None or ell == 0:
            continue
        minimum = [S for S in enumerate_minimal_separators(G, s, t, ell) if len(S) == ell]
        for v in range(G.n):
            if v in (s, t):
                continue
            got = min_separator_containing(G, s, t, v)
            assert (got is not None) == any(v in S for S in minimum)
            if got is not None:
                assert got.size == ell and v in got.witness
                assert is_separator(G, got.witness, (s,), (t,))
