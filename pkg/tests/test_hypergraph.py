import pytest
from hypothesis import given
from hypothesis import strategies as st

from gorigidity import corpus
from gorigidity.hypergraph import (
    Hypergraph,
    HypergraphError,
    Incidence,
    dual,
    incidence_graph,
    incidence_set,
    is_connected,
    split_components,
)


@st.composite
def hypergraphs(draw):
    nv = draw(st.integers(1, 6))
    verts = [f"v{i}" for i in range(nv)]
    ne = draw(st.integers(0, 5))
    edges = []
    for j in range(ne):
        members = draw(st.lists(st.sampled_from(verts), min_size=1, max_size=nv, unique=True))
        edges.append((f"e{j}", members))
    return Hypergraph.build(verts, edges)


def test_incidence_counts():
    assert len(incidence_set(corpus.k3())) == 6
    assert incidence_set(Hypergraph.build(["v"], [])) == []
    assert len(incidence_set(Hypergraph.build("abc", {"e": "abc"}))) == 3


def test_incidence_order_and_str():
    h = Hypergraph.build("ab", {"e": ("b", "a")})
    assert [str(i) for i in incidence_set(h)] == ["b*e", "a*e"]


def test_dual_of_path():
    h = Hypergraph.build(["v1", "v2", "v3"], {"e1": ("v1", "v2"), "e2": ("v2", "v3")})
    d = dual(h)
    assert d.vertices == ("e1", "e2")
    assert [set(vs) for _, vs in d.edges] == [{"e1"}, {"e1", "e2"}, {"e2"}]


def test_dual_of_single_edge_keeps_duplicates():
    d = dual(Hypergraph.graph(["v1", "v2"], [("v1", "v2")]))
    assert d.vertices == ("e0",)
    assert [vs for _, vs in d.edges] == [("e0",), ("e0",)]


def test_dual_of_triangle_is_triangle():
    d = dual(corpus.k3())
    assert len(d.vertices) == 3 and d.is_graph() and len(d.edges) == 3


def test_dual_of_isolated_vertex_has_empty_edge():
    d = dual(Hypergraph.build(["v"], []))
    assert d.vertices == () and d.edges == (("E_v", ()),)


def test_dual_names_avoid_collisions():
    h = Hypergraph.build(["v", "E_v"], {"e": ("v", "E_v")})
    names = [e for e, _ in dual(h).edges]
    assert len(set(names)) == 2 and "E_v" not in h.edge_ids


@given(hypergraphs())
def test_dual_preserves_incidence_count(h):
    assert len(incidence_set(dual(h))) == len(incidence_set(h))


@given(hypergraphs())
def test_double_dual_matches_up_to_names(h):
    dd = dual(dual(h))
    assert len(dd.vertices) == len(h.vertices)
    assert sorted(len(vs) for _, vs in dd.edges) == sorted(len(vs) for _, vs in h.edges)


@given(hypergraphs())
def test_incidence_graph_is_bipartite_on_incidences(h):
    ig = incidence_graph(h)
    for inc in ig.links:
        assert inc.vertex in ig.vertex_nodes and inc.edge not in ig.vertex_nodes


def test_split_double_banana():
    h = corpus.double_banana().hypergraph
    s = split_components(h, ["v", "w"])
    assert s.disconnecting
    assert sorted(len(c) for c in s.components) == [3, 3]


def test_split_triangle():
    h = corpus.k3()
    assert not split_components(h, ["a"]).disconnecting
    assert len(split_components(h).components) == 1
    assert is_connected(h)


@given(hypergraphs(), st.data())
def test_split_partitions_remaining(h, data):
    removed = data.draw(st.lists(st.sampled_from(h.vertices), unique=True))
    s = split_components(h, removed)
    flat = [v for c in s.components for v in c]
    assert sorted(flat) == sorted(set(h.vertices) - set(removed))
    for e, k in s.edge_component.items():
        assert set(h.members(e)) <= set(s.components[k])


@pytest.mark.parametrize(
    "verts, edges",
    [
        (["a", "a"], []),
        (["a"], [("a", ["a"])]),
        (["a"], [("e", ["b"])]),
        (["a"], [("e", [])]),
        (["a", "b"], [("e", ["a", "a"])]),
        (["a", "b"], [("e", ["a"]), ("e", ["b"])]),
    ],
)
def test_invalid_hypergraphs(verts, edges):
    with pytest.raises(HypergraphError):
        Hypergraph.build(verts, edges)


def test_json_round_trip():
    h = corpus.double_banana().hypergraph
    assert Hypergraph.from_json(h.to_json()) == h


def test_incidence_is_hashable():
    assert len({Incidence("a", "e"), Incidence("a", "e")}) == 1
