import itertools
import warnings

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from genrank.catalog import (GRID_JOIN, GRID_MAX, GRID_MIN_BOTTOM, GRID_MIN_LEFT, diamond_poset,
                             grid_poset, nonfull_diamond_embedding)
from genrank.errors import InputError, RedundantRelationWarning
from genrank.gen import random_poset
from genrank.minimal import worst_case_poset
from genrank.poset import (Poset, PosetMap, SubposetEmbedding, comma_fiber, comma_fiber_down,
                           finality_failures, finality_witness, identity_embedding,
                           initiality_witness, is_final_embedding, is_initial_embedding,
                           poset_from_covers, top_finality_witness)


def chain(*xs):
    return Poset(xs, list(zip(xs, xs[1:])))


def graph_of(P):
    g = nx.DiGraph()
    g.add_nodes_from(P.elements)
    g.add_edges_from(P.relations)
    return g


def bfs_connected(nodes, edges):
    nodes = set(nodes)
    if not nodes:
        return False
    adj = {v: set() for v in nodes}
    for a, b in edges:
        if a in nodes and b in nodes:
            adj[a].add(b)
            adj[b].add(a)
    start = next(iter(nodes))
    seen, todo = {start}, [start]
    while todo:
        for w in adj[todo.pop()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen == nodes


posets = st.builds(random_poset, st.integers(0, 10 ** 6), st.integers(1, 9),
                   st.sampled_from([0.0, 0.2, 0.4, 0.7, 1.0]), st.booleans())


# --- construction ------------------------------------------------------------------


def test_cycle_rejected():
    with pytest.raises(InputError):
        Poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_unknown_and_duplicate_ids():
    with pytest.raises(InputError):
        Poset(["a", "a"])
    with pytest.raises(InputError):
        chain("a", "b").upset(["z"])


def test_redundant_cover_warns():
    with pytest.warns(RedundantRelationWarning):
        poset_from_covers(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        poset_from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])


@settings(max_examples=150, deadline=None)
@given(posets)
def test_closure_and_covers_match_networkx(P):
    g = graph_of(P)
    closure = nx.transitive_closure_dag(g)
    assert set(P.relations) == set(closure.edges())
    assert set(P.covers) == set(nx.transitive_reduction(g).edges())
    for a in P:
        assert P.leq(a, a)


# --- sets ------------------------------------------------------------------------------


def test_upset_of_maximum():
    P = chain("a", "b", "c")
    assert P.upset(["c"]) == ["c"]
    assert P.maxima() == ["c"]
    assert Poset(["x", "y"]).maxima() == ["x", "y"]


def test_grid_upsets_and_downsets():
    P = grid_poset()
    both = set(P.upset([GRID_MIN_LEFT])) & set(P.upset([GRID_MIN_BOTTOM]))
    assert both == set(P.upset([GRID_JOIN]))
    assert P.minima() == [GRID_MIN_BOTTOM, GRID_MIN_LEFT]
    assert P.maxima() == [GRID_MAX]
    assert set(P.downset([GRID_MIN_LEFT, GRID_MIN_BOTTOM])) == {GRID_MIN_LEFT, GRID_MIN_BOTTOM}


def test_worst_case_maxima():
    assert worst_case_poset(3).maxima() == ["p1", "p2", "p3"]


@settings(max_examples=100, deadline=None)
@given(posets, st.data())
def test_upset_is_union(P, data):
    S = data.draw(st.lists(st.sampled_from(P.elements), unique=True))
    union = set()
    for s in S:
        union |= {q for q in P if P.leq(s, q)}
    assert set(P.upset(S)) == union
    mx = set(P.maxima(S))
    assert mx == {s for s in S if not any(P.lt(s, t) for t in S)}
    assert bool(mx) == bool(S)


def test_connectivity_basics():
    P = Poset(["a", "b"])
    assert P.is_connected(["a"])
    assert not P.is_connected(["a", "b"])
    assert not P.is_connected([])


def test_induced_connectivity_in_diamond():
    # ↑p3 ∩ {p1, p2, p4} = {p4} is connected in the ambient order
    P = diamond_poset()
    assert P.is_connected([q for q in P.upset(["p3"]) if q in {"p1", "p2", "p4"}])


@settings(max_examples=100, deadline=None)
@given(posets, st.data())
def test_components_match_bfs(P, data):
    S = data.draw(st.lists(st.sampled_from(P.elements), unique=True))
    assert P.is_connected(S) == bfs_connected(S, P.relations)
    comps = P.components(S)
    assert sorted(x for c in comps for x in c) == sorted(S)
    for c in comps:
        assert bfs_connected(c, P.relations)


def test_convexity():
    P = chain("a", "b", "c")
    assert not P.is_convex(["a", "c"])
    assert P.is_interval(P.elements)
    assert P.convex_hull(["a", "c"]) == ["a", "b", "c"]


@settings(max_examples=100, deadline=None)
@given(posets, st.data())
def test_up_meet_down_is_convex(P, data):
    a = data.draw(st.sampled_from(P.elements))
    b = data.draw(st.sampled_from(P.elements))
    S = set(P.upset([a])) & set(P.downset([b]))
    assert P.is_convex(S)
    T = data.draw(st.lists(st.sampled_from(P.elements), unique=True))
    brute = all(c in T for s in T for t in T for c in P if P.leq(s, c) and P.leq(c, t))
    assert P.is_convex(T) == brute


# --- maps and embeddings ---------------------------------------------------------------


def test_non_monotone_map_rejected():
    with pytest.raises(InputError):
        PosetMap(chain("a", "b"), chain("x", "y"), {"a": "y", "b": "x"})


def test_embedding_relation_must_hold():
    with pytest.raises(InputError):
        SubposetEmbedding(diamond_poset(), ["p1", "p2"], [("p1", "p2")])


def test_full_flag():
    assert identity_embedding(diamond_poset()).full
    assert not nonfull_diamond_embedding().full
    assert nonfull_diamond_embedding(True).full


def test_fiber_of_maximum_in_image():
    P = diamond_poset()
    E = SubposetEmbedding(P, ["p3", "p4"])
    assert comma_fiber(E, "p4").elements == ("p4",)


def test_nonfull_diamond_fiber():
    E = nonfull_diamond_embedding()
    fib = comma_fiber(E, "p3")
    assert set(fib.elements) == {"p3", "p4"}
    assert not fib.is_connected()
    assert not is_final_embedding(E)
    assert finality_failures(E) == ["p1", "p3"]
    assert top_finality_witness(E) == "p3"
    assert finality_witness(E) == "p1"
    assert is_final_embedding(nonfull_diamond_embedding(True))


def test_identity_is_final_and_initial():
    for P in (diamond_poset(), grid_poset(), worst_case_poset(4)):
        E = identity_embedding(P)
        assert is_final_embedding(E) and is_initial_embedding(E)


def test_grid_maximum_is_final():
    E = SubposetEmbedding(grid_poset(), [GRID_MAX])
    assert is_final_embedding(E)
    assert not is_initial_embedding(E)


def _fiber_brute(E, p, up=True):
    P = E.target
    S = E.source
    pts = [s for s in S if (P.leq(p, E(s)) if up else P.leq(E(s), p))]
    return pts, [(a, b) for a in pts for b in pts if a != b and S.leq(a, b)]


@settings(max_examples=100, deadline=None)
@given(posets, st.data())
def test_finality_by_definition(P, data):
    carrier = data.draw(st.lists(st.sampled_from(P.elements), unique=True, min_size=1))
    full = data.draw(st.booleans())
    if full:
        E = SubposetEmbedding(P, carrier)
    else:
        rels = [r for r in P.relations if r[0] in carrier and r[1] in carrier]
        keep = data.draw(st.lists(st.sampled_from(rels), unique=True)) if rels else []
        E = SubposetEmbedding(P, carrier, keep)
    for p in P:
        pts, rel = _fiber_brute(E, p)
        assert set(comma_fiber(E, p).elements) == set(pts)
        assert comma_fiber(E, p).is_connected() == bfs_connected(pts, rel)
        pts, rel = _fiber_brute(E, p, up=False)
        assert set(comma_fiber_down(E, p).elements) == set(pts)
    final = all(bfs_connected(*_fiber_brute(E, p)) for p in P)
    initial = all(bfs_connected(*_fiber_brute(E, p, False)) for p in P)
    assert is_final_embedding(E) == final
    assert is_initial_embedding(E) == initial
    assert (finality_witness(E) is None) == final
    assert (initiality_witness(E) is None) == initial


def test_compose_and_preimage():
    P = diamond_poset()
    E = SubposetEmbedding(P, ["p3", "p4"])
    I = identity_embedding(P)
    G = I.compose(E)
    assert G.mapping == E.mapping
    assert E.preimage(["p4", "p1"]) == ["p4"]


def test_opposite_swaps_order():
    P = diamond_poset()
    Pop = P.opposite()
    for a, b in itertools.product(P, P):
        assert P.leq(a, b) == Pop.leq(b, a)
