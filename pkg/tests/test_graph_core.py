from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from almostplanar.core.canon import (
    canonical_form,
    canonical_labeling,
    enumerate_graphs,
    find_isomorphism,
    is_isomorphic,
)
from almostplanar.core.connectivity import (
    Separation,
    is_internally_4_connected,
    is_k_connected,
    is_strongly_connected3,
    separations_of_order,
    vertex_connectivity,
)
from almostplanar.core.decompose import (
    CycleInputError,
    DegreeOneError,
    ParallelEdgeError,
    g_delta,
    g_y,
    suppress_degree2,
)
from almostplanar.core.graph import (
    Graph,
    GraphError,
    complete_bipartite,
    complete_graph,
    contract_edge,
    cycle_graph,
    delete_edge,
    delete_vertex,
    path_graph,
    star_graph,
    subdivide_edge,
)
from almostplanar.core.graph6 import Graph6Error, decode, encode
from almostplanar.families import (
    K5,
    K33,
    WClassSpec,
    double_wheel,
    mobius_ladder,
    pendant_addition,
    three_sum,
    wheel,
    w_class,
)
from almostplanar.planarity import planar

import oracles


@st.composite
def graphs(draw, max_n: int = 8):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


def shuffled(g: Graph, seed: int) -> Graph:
    perm = list(range(g.order))
    random.Random(seed).shuffle(perm)
    return g.relabel(perm)


# -- construction and editing ---------------------------------------------------


def test_graph_rejects_loops_and_out_of_range():
    with pytest.raises(GraphError):
        Graph(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 3)])


def test_edges_are_unordered_and_merged():
    g = Graph(3, [(0, 1), (1, 0), (2, 1)])
    assert g.size == 2 and g.has_edge(1, 0) and g.has_edge(1, 2)


def test_delete_edge():
    h = delete_edge(K5, (0, 1))
    assert (h.order, h.size) == (5, 9) and planar(h)
    assert delete_edge(path_graph(2), (0, 1)).size == 0
    assert planar(delete_edge(double_wheel(4), (0, 1)))
    with pytest.raises(GraphError):
        delete_edge(path_graph(3), (0, 2))


def test_contract_edge():
    tri = cycle_graph(3)
    h = contract_edge(tri, (0, 1))
    assert (h.order, h.size) == (2, 1)
    k4 = contract_edge(K5, (2, 4))
    assert is_isomorphic(k4, complete_graph(4))
    assert planar(contract_edge(mobius_ladder(3), (0, 3)))
    with pytest.raises(GraphError):
        contract_edge(tri, (0, 3))


def test_delete_vertex():
    assert is_isomorphic(delete_vertex(complete_graph(4), 2), complete_graph(3))
    assert delete_vertex(star_graph(3), 0).size == 0
    assert is_isomorphic(delete_vertex(pendant_addition(K33), 6), K33)
    with pytest.raises(GraphError):
        delete_vertex(K5, 5)


@given(graphs())
def test_contraction_drops_one_vertex(g):
    for e in g.sorted_edges():
        assert contract_edge(g, e).order == g.order - 1


@given(graphs(7), st.data())
def test_disjoint_operations_commute(g, data):
    es = g.sorted_edges()
    if len(es) < 2:
        return
    e, f = data.draw(st.sampled_from(es)), data.draw(st.sampled_from(es))
    if e == f:
        return
    assert delete_edge(delete_edge(g, e), f) == delete_edge(delete_edge(g, f), e)
    if set(e) & set(f):
        return
    a = contract_edge(g, e)
    b = contract_edge(g, f)
    # contract the image of the other edge in each
    def image(x, edge):
        u, v = edge
        x = u if x == v else x
        return x - 1 if x > v else x

    ab = contract_edge(a, (image(f[0], e), image(f[1], e)))
    ba = contract_edge(b, (image(e[0], f), image(e[1], f)))
    assert is_isomorphic(ab, ba)


# -- canonical form and enumeration ------------------------------------------------


def test_canonical_form_is_relabelling_invariant():
    c5 = cycle_graph(5)
    assert canonical_form(c5) == canonical_form(shuffled(c5, 3))
    k5_minus_matching = delete_edge(delete_edge(K5, (0, 1)), (2, 3))
    assert canonical_form(K33) != canonical_form(k5_minus_matching)


@settings(max_examples=200)
@given(graphs(9), st.integers(0, 10**6))
def test_canonical_form_random_relabellings(g, seed):
    h = shuffled(g, seed)
    assert canonical_form(g) == canonical_form(h)
    phi = find_isomorphism(g, h)
    assert phi is not None and all(h.has_edge(phi[u], phi[v]) for u, v in g.edges)


def test_canonical_labeling_is_a_permutation():
    g = mobius_ladder(5)
    assert sorted(canonical_labeling(g)) == list(range(10))


def test_isomorphism_examples():
    assert is_isomorphic(mobius_ladder(3), K33)
    assert is_isomorphic(double_wheel(3), K5)
    assert not is_isomorphic(wheel(4), wheel(5))


@pytest.mark.parametrize("n", range(1, 7))
def test_canonical_classes_match_orbits(n):
    """Canonical-form classes of all labelled graphs coincide with permutation orbits."""
    best = oracles.orbit_classes(n)
    by_orbit: dict[int, set[bytes]] = {}
    by_form: dict[bytes, set[int]] = {}
    for mask in range(len(best)):
        form = canonical_form(Graph(n, oracles.mask_edges(n, mask)))
        by_orbit.setdefault(int(best[mask]), set()).add(form)
        by_form.setdefault(form, set()).add(int(best[mask]))
    assert all(len(v) == 1 for v in by_orbit.values())
    assert all(len(v) == 1 for v in by_form.values())


@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_counts(n):
    gs = list(enumerate_graphs(n))
    assert len(gs) == oracles.burnside_graph_count(n)
    assert len({canonical_form(g) for g in gs}) == len(gs)


def test_enumeration_small_examples():
    assert len(list(enumerate_graphs(4))) == 11
    assert len(list(enumerate_graphs(1))) == 1
    six = list(enumerate_graphs(6, lambda g: not planar(g) and is_k_connected(g, 3)))
    assert any(is_isomorphic(g, K33) for g in six)
    assert all(g.order == 6 for g in six)


def test_enumeration_refuses_large_n():
    with pytest.raises(ValueError, match="limited to"):
        list(enumerate_graphs(11))


# -- connectivity and separations ---------------------------------------------------


def test_vertex_connectivity_examples():
    assert vertex_connectivity(K5) == 4
    assert vertex_connectivity(wheel(5)) == 3
    assert vertex_connectivity(pendant_addition(K33)) == 1


@pytest.mark.parametrize("n", range(1, 8))
def test_vertex_connectivity_matches_brute_force(n):
    for g in enumerate_graphs(n):
        assert vertex_connectivity(g) == oracles.connectivity(n, g.sorted_edges()), encode(g)


def test_separations_examples():
    assert all(separations_of_order(K5, k) == [] for k in range(4))
    k33p = pendant_addition(K33)  # pendant 6 on vertex 0
    seps = separations_of_order(k33p, 1)
    assert any({0, 6} in (set(s.side_a), set(s.side_b)) for s in seps)
    g, parts = _three_w4()
    tri = frozenset({0, 1, 2})
    assert any(s.boundary == tri for s in separations_of_order(g, 3))
    with pytest.raises(ValueError):
        separations_of_order(K5, 4)


@given(graphs(7))
def test_separations_satisfy_invariants(g):
    for k in range(4):
        for s in separations_of_order(g, k):
            assert s.order == k and s.is_valid(g)


def _three_w4():
    from almostplanar.families import w_class_parts

    return w_class_parts(WClassSpec.of((4, 0), (4, 1), (4, 2)))


def test_internally_4_connected():
    assert is_internally_4_connected(mobius_ladder(4))
    assert not is_internally_4_connected(wheel(5))
    assert is_internally_4_connected(K5)


def test_strong_3_cut_condition():
    assert is_strongly_connected3(K5)
    assert is_strongly_connected3(double_wheel(6))
    g, _ = _three_w4()
    assert not is_strongly_connected3(g)
    with pytest.raises(GraphError):
        is_strongly_connected3(path_graph(4))


# -- suppression and completions -------------------------------------------------------


def test_suppress_degree2_examples():
    tc = suppress_degree2(subdivide_edge(K33, (0, 3)))
    assert is_isomorphic(tc.core, K33) and len(tc.subdivided_edges()) == 1
    tc = suppress_degree2(complete_graph(4))
    assert tc.subdivided_edges() == []
    m4 = mobius_ladder(4)
    g = m4
    for i in range(8):
        g = subdivide_edge(g, (i, (i + 1) % 8), 2)
    tc = suppress_degree2(g)
    assert is_isomorphic(tc.core, m4)
    assert is_isomorphic(tc.expand(), g)


def test_suppress_degree2_errors():
    with pytest.raises(CycleInputError):
        suppress_degree2(cycle_graph(5))
    with pytest.raises(DegreeOneError):
        suppress_degree2(pendant_addition(K33))
    theta = Graph(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])  # K_{2,3}: degree-2 paths collide
    with pytest.raises(ParallelEdgeError) as info:
        suppress_degree2(theta)
    assert info.value.vertex in (2, 3, 4)


@settings(max_examples=60)
@given(st.sampled_from([K5, K33, mobius_ladder(4), wheel(5)]), st.data())
def test_suppression_round_trip(core, data):
    g = core
    for e in data.draw(st.lists(st.sampled_from(core.sorted_edges()), unique=True, max_size=4)):
        g = subdivide_edge(g, e, data.draw(st.integers(1, 3)))
    tc = suppress_degree2(g)
    assert is_isomorphic(tc.core, core)
    assert is_isomorphic(tc.expand(), g)


def test_g_delta_and_g_y():
    w3 = wheel(3)
    g = three_sum(K5, (0, 1, 2), w3, (0, 1, 2), keep=[])
    sep = next(s for s in separations_of_order(g, 3) if s.boundary == frozenset({0, 1, 2}))
    side = "a" if 3 in sep.side_a else "b"
    assert is_isomorphic(g_delta(g, sep, side), K5)
    h = g_y(g, sep, side)
    assert h.order == len(sep.side(side)) + 1 and h.degree(h.order - 1) == 3
    with pytest.raises(GraphError):
        g_delta(g, Separation(frozenset({0, 1}), frozenset({0, 1, 2})), "a")


def test_g_delta_on_triangle_boundary_is_induced():
    g, _ = _three_w4()
    sep = next(s for s in separations_of_order(g, 3) if s.boundary == frozenset({0, 1, 2}))
    side = sep.side("a")
    assert g_delta(g, sep, "a") == g.subgraph(sorted(side))


@settings(max_examples=60)
@given(graphs(7))
def test_three_separations_reassemble(g):
    for sep in separations_of_order(g, 3)[:6]:
        b = sorted(sep.boundary)
        a_side, b_side = sorted(sep.side_a), sorted(sep.side_b)
        ga, gb = g_delta(g, sep, "a"), g_delta(g, sep, "b")
        ta = [a_side.index(x) for x in b]
        tb = [b_side.index(x) for x in b]
        keep = [(ta[i], ta[j]) for i in range(3) for j in range(i + 1, 3) if g.has_edge(b[i], b[j])]
        assert is_isomorphic(three_sum(ga, ta, gb, tb, keep), g)


# -- graph6 ---------------------------------------------------------------


def test_graph6_examples():
    assert decode("D~{") == K5
    assert encode(Graph(1)) == "@"
    assert decode(encode(K33)) == K33
    assert decode(">>graph6<<D~{") == K5


@given(graphs(12))
def test_graph6_round_trip(g):
    s = encode(g)
    assert decode(s) == g and encode(decode(s)) == s


@pytest.mark.parametrize(
    "text, offset",
    [("D~", 1), ("D~{{", 1), ("D~|", 2), ("D\x7f{", 1), ("~??", 0), ("", 0)],
)
def test_graph6_errors(text, offset):
    with pytest.raises(Graph6Error) as info:
        decode(text)
    assert info.value.offset == offset
