import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from gorigidity import corpus
from gorigidity.errors import InstanceError
from gorigidity.hypergraph import Hypergraph, Incidence, dual_names
from gorigidity.liemodels import (
    AffineSubspace,
    GroupModel,
    Hyperplane,
    ProjectiveSubspace,
    ScenePoint,
    commutator,
    stabiliser,
)
from gorigidity.motionspace import motion_space
from gorigidity.realisation import (
    ALGEBRA_MAPS,
    BarJoint,
    Constrained,
    Custom,
    Parallel,
    ProjectiveConfig,
    Scene,
    build,
    map_algebra,
    polar_hyperplane,
    projective_dual_instance,
    pushforward,
    scene_to_parallel_instance,
)

from .strategies import seeds


def test_triangle_algebra_dimensions():
    r = build(corpus.triangle())
    assert all(r.algebras[v].dim == 1 for v in r.hypergraph.vertices)
    assert all(r.algebras[e].dim == 0 for e in r.hypergraph.edge_ids)
    assert all(a.dim == 0 for a in r.incidence_algebras.values())


def test_point_line_dimensions():
    r = build(corpus.point_line())
    assert r.algebras["p"].dim == 6 and r.algebras["l"].dim == 6
    assert r.incidence_algebras[Incidence("p", "l")].dim == 5


def test_scene_vertex_on_one_edge():
    h = Hypergraph.build(["a"], {"f": ("a",)})
    r = build(Scene(h, 2, {"a": ScenePoint((1, 2, 1))}))
    assert r.algebras["a"].dim == 2
    # a single point imposes one linear condition on the 3-dimensional algebra
    assert r.incidence_algebras[Incidence("a", "f")].dim == 2


def test_default_rule_is_intersection():
    for inst in corpus.mixed_corpus(per_kind=3):
        r = build(inst)
        for inc, a in r.incidence_algebras.items():
            assert a == r.algebras[inc.vertex] & r.algebras[inc.edge]


def test_all_constructed_algebras_are_closed():
    for inst in corpus.mixed_corpus(per_kind=4):
        r = build(inst)
        for x in r.elements():
            assert r.algebra(x).is_bracket_closed()
        for t in (r.constraints or {}).values():
            assert t.is_bracket_closed()


def test_bar_joint_edge_is_endpoint_intersection():
    r = build(corpus.double_banana())
    for e, (a, b) in r.hypergraph.edges:
        assert r.algebras[e] == r.algebras[a] & r.algebras[b]


@pytest.mark.parametrize(
    "make",
    [
        lambda: BarJoint(Hypergraph.graph("ab", [("a", "b")]), 2, {"a": (F(0), F(0)), "b": (F(0), F(0))}),
        lambda: BarJoint(Hypergraph.build("abc", {"e": "abc"}), 2, {v: (F(i), F(0)) for i, v in enumerate("abc")}),
        lambda: BarJoint(Hypergraph.graph("ab", [("a", "b")]), 2, {"a": (F(0), F(0))}),
        lambda: BarJoint(Hypergraph.graph("ab", [("a", "b")]), 2, {"a": (F(0),), "b": (F(1),)}),
        lambda: ProjectiveConfig(
            Hypergraph.build(["p"], {"l": ("p",)}),
            3, 1, 2,
            {"p": ProjectiveSubspace([(0, 0, 1)])},
            {"l": ProjectiveSubspace([(1, 0, 0), (0, 1, 0)])},
        ),
        lambda: Scene(Hypergraph.build(["a"], []), 2, {"a": ScenePoint((0, 0, 1))}),
        lambda: Scene(
            Hypergraph.build("abc", {"f": "abc"}),
            2,
            {"a": ScenePoint((1, 0, 0)), "b": ScenePoint((0, 1, 0)), "c": ScenePoint((1, 1, 1))},
        ),
        lambda: Parallel(Hypergraph.build(["a"], {"h": ("a",)}), 2, {"a": (F(0), F(0))}, {"h": Hyperplane((1, 0), 1)}),
        lambda: Constrained(
            Hypergraph.build(["a"], []), 2, {"a": (F(0), F(1))}, {"a": AffineSubspace((0, 0), [(1, 0)])}
        ),
    ],
    ids=[
        "coincident-endpoints",
        "hyperedge-bar",
        "missing-coords",
        "wrong-dimension",
        "point-off-line",
        "projection-centre",
        "scene-edge-not-planar",
        "point-off-hyperplane",
        "vertex-off-constraint",
    ],
)
def test_invalid_instances(make):
    with pytest.raises(InstanceError):
        build(make())


def test_parallel_isolated_vertex_is_pinned():
    h = Hypergraph.build(["a", "b"], {"h": ("a",)})
    inst = Parallel(h, 2, {"a": (F(1), F(0)), "b": (F(2), F(2))}, {"h": Hyperplane((1, 0), 1)})
    r = build(inst)
    assert r.notes and "b" in r.notes[0]
    assert r.algebras["b"].dim == 1


def test_custom_matches_bar_joint():
    ref = build(corpus.triangle())
    h = ref.hypergraph
    inst = Custom(h, ref.model, {x: ref.algebras[x] for x in h.vertices + h.edge_ids})
    r = build(inst)
    assert motion_space(r).dim_piA == motion_space(ref).dim_piA


def test_custom_rejects_non_subalgebra():
    p3 = GroupModel.projective(3)
    # two generators whose bracket leaves their span
    x = ((0, 1, 0), (0, 0, 0), (0, 0, 0))
    y = ((0, 0, 0), (1, 0, 0), (0, 0, 0))
    a = p3.span([x, y])
    h = Hypergraph.build(["v"], [])
    with pytest.raises(InstanceError):
        build(Custom(h, p3, {"v": a}))


def test_custom_rejects_bad_incidence_algebra():
    e2 = GroupModel.euclidean(2)
    h = Hypergraph.build(["v"], {"e": ("v",)})
    zero, full = e2.zero(), e2.full()
    with pytest.raises(InstanceError):
        build(Custom(h, e2, {"v": zero, "e": full}, {Incidence("v", "e"): full}))


def test_pushforward_identity():
    r = build(corpus.double_banana())
    p = pushforward(r)
    assert p.algebras == r.algebras and p.incidence_algebras == r.incidence_algebras


def test_pushforward_rejects_wrong_model():
    with pytest.raises(InstanceError):
        pushforward(build(corpus.triangle()), "projective-dual")
    with pytest.raises(InstanceError):
        pushforward(build(corpus.triangle()), "no-such-map")


@pytest.mark.parametrize("name", list(ALGEBRA_MAPS))
def test_algebra_maps_preserve_brackets(name):
    src_kind, _, fn = ALGEBRA_MAPS[name]
    for param in (2, 3):
        src = GroupModel(src_kind, param + (1 if src_kind == "projective" else 0))
        _, dst_kind, _ = ALGEBRA_MAPS[name]
        dst = GroupModel(dst_kind, src.param)
        for a in src.basis:
            for b in src.basis:
                lhs = fn(commutator(a, b))
                rhs = commutator(fn(a), fn(b))
                assert dst.coords(lhs) == dst.coords(rhs)


def test_projective_dual_twice_is_identity():
    inst = corpus.projective_triangle()
    twice = projective_dual_instance(projective_dual_instance(inst))
    once = dual_names(inst.hypergraph)
    twice_names = dual_names(projective_dual_instance(inst).hypergraph)
    for v in inst.hypergraph.vertices:
        assert twice.edge_subspaces.get(v) is None
        new_v = once[v]
        assert twice.vertex_subspaces[new_v].space(3) == inst.vertex_subspaces[v].space(3)
    for e in inst.hypergraph.edge_ids:
        assert twice.edge_subspaces[twice_names[e]].space(3) == inst.edge_subspaces[e].space(3)


@given(seeds)
def test_projective_dual_preserves_motions(seed):
    inst = corpus.random_projective(random.Random(seed))
    r = build(inst)
    d = build(projective_dual_instance(inst))
    assert motion_space(r).dim_piA == motion_space(d).dim_piA
    p = pushforward(r, "projective-dual", relabel=True)
    assert p.algebras == d.algebras


@given(seeds)
def test_scene_to_parallel_matches_transport(seed):
    inst = corpus.random_scene(random.Random(seed))
    r = build(inst)
    d = build(scene_to_parallel_instance(inst))
    p = pushforward(r, "scene-to-parallel", relabel=True)
    assert p.algebras == d.algebras
    assert p.incidence_algebras == d.incidence_algebras
    assert motion_space(r).dim_piA == motion_space(d).dim_piA


@given(seeds)
def test_polar_stabilisers_correspond(seed):
    rng = random.Random(seed)
    d = rng.choice([2, 3])
    s = corpus.random_scene(rng, d)
    for point in s.points.values():
        src = stabiliser(GroupModel.scenes(d), point)
        dst = stabiliser(GroupModel.dilation(d), polar_hyperplane(point))
        assert map_algebra(src, "scene-to-parallel") == dst


def test_scene_dual_needs_affine_points():
    h = Hypergraph.build("ab", {"f": "ab"})
    # polar lines x = 0 and x = -1 are parallel, so the edge has no affine dual point
    inst = Scene(h, 2, {"a": ScenePoint((1, 0, 0)), "b": ScenePoint((1, 0, 1))})
    with pytest.raises(InstanceError):
        scene_to_parallel_instance(inst)
