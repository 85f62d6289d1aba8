import itertools
import random

from hypothesis import given, settings, strategies as st

from npsim.graph import (MARKER, CellArray, DynamicGraph, case, edge_index,
                         filter_with_path_backward, filter_with_path_forward,
                         forward_weak_ceiling_adjacent, ipred_case)
from npsim.machines import render_instance
from npsim.tm import run_direct

from conftest import fixture_text, graph_of, random_cnf, universe_for

SMALL_SAT = "1_-2&2_#"


def test_cell_array_grows_left_without_losing_cells():
    a = CellArray(list)
    a[0].append("x")
    a[-1].append("y")
    assert a[0] == ["x"] and a[-1] == ["y"] and -1 in a and 0 in a


def test_start_node_and_idempotent_materialization():
    u, _ = universe_for("sat-fixed", SMALL_SAT)
    v0 = u.start_node()
    assert v0[:4] == (0, 0, u.spec.q_init, "1")
    before = u.materialized
    assert u.start_node() is v0 and u.materialized == before
    assert u.materialize_node(3, 0, "Check.S", "not-a-symbol") is None


def test_floor_edge_counts():
    u, _ = universe_for("sat-fixed", fixture_text("sat", "I4"))
    assert len(u.floor_next_edges(u.start_node())) == 1
    walk = u.trace_walk(["T"] * 10)
    first_cert = u.schema.region_start
    into_cert = next(e for e in walk if e[1][0] == first_cert)
    assert len(u.floor_next_edges(into_cert[0])) == 2

    u, _ = universe_for("subset-sum", "3_@_1_2#")
    start = u.schema.region_start
    # first visit of the "_" after a "3", in a state that moves right
    tail = u.materialize_node(start + 1, 0, "Forward", "_")
    syms = {w[3] for _, w in u.floor_next_edges(tail)}
    assert syms == set("0123456789") | {";"}


def test_edge_set_semantics_and_copy():
    u, _ = universe_for("sat-fixed", SMALL_SAT)
    walk = u.trace_walk(["T", "T"])
    g = DynamicGraph(u)
    assert g.add_edge(walk[0]) and not g.add_edge(walk[0]) and len(g) == 1
    g.remove_edge(walk[0])
    assert not g.has_edge(walk[0]) and not g
    g = graph_of(u, walk)
    h = g.copy()
    assert h.edge_set() == g.edge_set()
    h.remove_edge(walk[3])
    assert len(g) == len(h) + 1 and g.has_edge(walk[3])
    assert not DynamicGraph(u).copy()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_trace_walk_matches_direct_run(seed):
    rng = random.Random(seed)
    inst = random_cnf(rng, max_vars=3, max_clauses=3)
    text = render_instance(inst)
    u, _ = universe_for(rng.choice(["sat-id", "sat-fixed"]), text)
    bits = [rng.choice("TF") for _ in range(inst.k)]
    walk = u.trace_walk(bits)
    res = run_direct(u.spec, u.tape + bits)
    assert len(walk) == len(res.trace)
    assert walk[-1][1][2] == res.final.state
    for (t, h), step in zip(walk, res.trace):
        assert (t[0], t[2], t[3]) == (step.head, step.state, step.read)
    # tiers count prior visits, so they increase by one per cell
    seen = {}
    for t, _ in walk:
        assert t[1] == seen.get(t[0], -1) + 1
        seen[t[0]] = t[1]


def walk_graph():
    u, _ = universe_for("sat-fixed", SMALL_SAT)
    walk = u.trace_walk(["T", "T"])
    return u, walk, graph_of(u, walk)


def test_relations_on_a_single_walk():
    u, walk, g = walk_graph()
    for e in walk:
        t, h = e
        if h[1] == 0:
            assert g.iprec_edges(e) == [] and g.count_precedents(e) == 0
        else:
            assert g.count_precedents(e) == 1
        for s in g.isucc_nodes(h):
            assert s[3] == u.output(h)
        assert abs(t[0] - h[0]) == 1
        assert edge_index(e) == min(t[0], h[0])
    # a revisit edge is an index successor of the earlier crossing it follows
    pos = {e: i for i, e in enumerate(walk)}
    for e in walk:
        for f in g.isucc_edges(e):
            assert pos[f] > pos[e] and edge_index(f) == edge_index(e)
            assert e in g.iprec_edges(f)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_counts_equal_relation_sizes(seed):
    rng = random.Random(seed)
    u, walk, g = walk_graph()
    others = [u.trace_walk(bits) for bits in (["F", "T"], ["T", "F"], ["F", "F"])]
    pool = walk + [e for w in others for e in w]
    g = graph_of(u, rng.sample(pool, rng.randint(1, len(pool))))
    for e in g.edges():
        assert g.count_precedents(e) == len(g.iprec_edges(e))
        assert g.count_succedents(e) == len(g.isucc_edges(e))


def test_merging_splitting_and_folding():
    u, _ = universe_for("sat-fixed", SMALL_SAT)
    walks = [u.trace_walk(bits) for bits in itertools.product("TF", repeat=2)]
    g = graph_of(u, [e for w in walks for e in w])
    merging = [e for e in g.edges() if g.is_merging(e)]
    splitting = [e for e in g.edges() if g.is_splitting(e)]
    assert merging and splitting
    for e in merging:
        assert g.in_degree(e[1]) >= 2
    for e in g.edges():
        flags = g.classify(e)
        assert flags["floor"] == (e[1][1] == 0)
    # a node the walk enters from the right and leaves to the right folds
    folds = [n for n in g.nodes() if g.is_folding(n)]
    assert folds
    for n in folds:
        side = g.out_edges(n)[0][1][0]
        assert any(t[0] == side for t, _ in g.in_edges(n))


def test_combining_patterns():
    """Two visits of one case reached from different tail cases combine."""
    u, _ = universe_for("sat-fixed", SMALL_SAT)
    walks = [u.trace_walk(bits) for bits in itertools.product("TF", repeat=2)]
    g = graph_of(u, [e for w in walks for e in w])
    combining = [e for e in g.edges() if g.is_combining(e)]
    for e in combining:
        t, h = e
        peers = [w for w in g.by_case.get(case(h), ()) if w != h]
        assert peers
    for e in g.edges():
        if g.is_pseudo_combining(e):
            assert not g.is_folding(e[1])
            assert any(g.is_folding(s) for s in g.isucc_nodes(e[1]))


def test_next_edges_above_ipreds():
    u, walk, g = walk_graph()
    v = walk[0][0]
    assert u.next_edges_above_ipreds(v, [MARKER]) == u.floor_next_edges(v)
    # the singleton continuation reproduces the direct run at every revisit
    last = {}
    for e in walk:
        t, h = e
        if h[1] > 0:
            prec = last[min(t[0], h[0])]
            assert u.next_edges_above_ipreds(t, [prec]) == [e]
        last[edge_index(e)] = e


def test_forward_weak_ceiling_adjacent():
    u, walk, g = walk_graph()
    assert forward_weak_ceiling_adjacent(g, walk[-1]) == []     # halting head
    first = walk[0]
    assert forward_weak_ceiling_adjacent(g, first) == [MARKER]
    for e in walk[:-1]:
        for c in forward_weak_ceiling_adjacent(g, e):
            assert c is MARKER or g.has_edge(c)


def test_path_filters():
    u, walk, g = walk_graph()
    anchor = walk[len(walk) // 2]
    assert filter_with_path_backward(g, anchor, []) == []
    assert filter_with_path_forward(g, anchor, []) == []
    assert MARKER in filter_with_path_backward(g, anchor, [MARKER])
    before = walk[: len(walk) // 2]
    kept = filter_with_path_backward(g, anchor, before)
    assert set(kept) <= set(before)
    assert filter_with_path_backward(g, anchor, [walk[len(walk) // 2 - 1]])


def test_ipred_case_of_floor_node_is_none():
    u, walk, _ = walk_graph()
    assert ipred_case(walk[0][0]) is None
