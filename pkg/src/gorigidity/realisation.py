"""Graph-of-groups realisations built from geometric instances.

A :class:`Realisation` assigns a subalgebra to every vertex, edge and
incidence of a hypergraph. Builders below turn each instance kind into one;
:func:`pushforward` transports a realisation along one of the built-in
algebra isomorphisms, optionally swapping to the dual hypergraph.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import InstanceError
from .hypergraph import Hypergraph, Incidence, dual, dual_names, incidence_set
from .linalg import Subspace, orthogonal_complement_rows, rank, solve
from .liemodels import (
    AffineSubspace,
    EuclideanPoint,
    GroupModel,
    Hyperplane,
    Matrix,
    ProjectiveSubspace,
    ScenePoint,
    Subalgebra,
    freeze,
    incidence_algebra,
    intersect_algebras,
    stabiliser,
    tangency_algebra_affine,
    transpose,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Realisation:
    hypergraph: Hypergraph
    model: GroupModel
    algebras: Mapping[str, Subalgebra]
    incidence_algebras: Mapping[Incidence, Subalgebra]
    constraints: Mapping[str, Subalgebra] | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        h = self.hypergraph
        for x in h.vertices + h.edge_ids:
            if x not in self.algebras:
                raise InstanceError(f"no subalgebra for {x!r}")
        for inc in incidence_set(h):
            if inc not in self.incidence_algebras:
                raise InstanceError(f"no subalgebra for incidence {inc}")
        for a in list(self.algebras.values()) + list(self.incidence_algebras.values()):
            if a.model != self.model:
                raise InstanceError(f"realisation mixes group models ({a.model} vs {self.model})")

    @property
    def incidences(self) -> list[Incidence]:
        return incidence_set(self.hypergraph)

    def elements(self) -> list[str | Incidence]:
        """V, then E, then I; the variable order used by the solver."""
        h = self.hypergraph
        return list(h.vertices) + list(h.edge_ids) + self.incidences

    def algebra(self, x: str | Incidence) -> Subalgebra:
        if isinstance(x, Incidence):
            return self.incidence_algebras[x]
        return self.algebras[x]

    def check_containment(self) -> None:
        for inc, a in self.incidence_algebras.items():
            if not a.issubalgebra(self.algebras[inc.vertex]) or not a.issubalgebra(self.algebras[inc.edge]):
                raise InstanceError(f"incidence algebra of {inc} is not contained in both endpoint algebras")

    def dims(self) -> dict[str, int]:
        out = {x: a.dim for x, a in self.algebras.items()}
        out.update({str(i): a.dim for i, a in self.incidence_algebras.items()})
        return out


def default_incidences(h: Hypergraph, model: GroupModel, algebras: Mapping[str, Subalgebra]) -> dict[Incidence, Subalgebra]:
    return {
        inc: incidence_algebra(model, algebras[inc.vertex], algebras[inc.edge]) for inc in incidence_set(h)
    }


# -- instances ------------------------------------------------------------


def _require_all(h: Hypergraph, keys: Mapping, ids: Sequence[str], what: str) -> None:
    missing = [x for x in ids if x not in keys]
    if missing:
        raise InstanceError(f"missing {what} for {missing}")
    extra = sorted(set(keys) - set(ids))
    if extra:
        raise InstanceError(f"{what} given for unknown ids {extra}")


@dataclass(frozen=True)
class BarJoint:
    hypergraph: Hypergraph
    d: int
    coords: Mapping[str, tuple[Fraction, ...]]

    kind = "bar_joint"

    @property
    def model(self) -> GroupModel:
        return GroupModel.euclidean(self.d)


@dataclass(frozen=True)
class ProjectiveConfig:
    """Vertices as ``k``-dimensional and edges as ``l``-dimensional linear
    subspaces of R^n, with ``W_v`` inside ``U_e`` whenever ``v`` is in ``e``."""

    hypergraph: Hypergraph
    n: int
    k: int
    l: int
    vertex_subspaces: Mapping[str, ProjectiveSubspace]
    edge_subspaces: Mapping[str, ProjectiveSubspace]

    kind = "projective"

    @property
    def model(self) -> GroupModel:
        return GroupModel.projective(self.n)


@dataclass(frozen=True)
class Scene:
    hypergraph: Hypergraph
    d: int
    points: Mapping[str, ScenePoint]

    kind = "scene"

    @property
    def model(self) -> GroupModel:
        return GroupModel.scenes(self.d)


@dataclass(frozen=True)
class Parallel:
    hypergraph: Hypergraph
    d: int
    points: Mapping[str, tuple[Fraction, ...]]
    hyperplanes: Mapping[str, Hyperplane]

    kind = "parallel"

    @property
    def model(self) -> GroupModel:
        return GroupModel.dilation(self.d)


@dataclass(frozen=True)
class Constrained:
    """Bar-joint framework whose vertices may only move inside affine spaces.
    Vertices missing from ``constraints`` move freely."""

    hypergraph: Hypergraph
    d: int
    coords: Mapping[str, tuple[Fraction, ...]]
    constraints: Mapping[str, AffineSubspace]

    kind = "constrained"

    @property
    def model(self) -> GroupModel:
        return GroupModel.euclidean(self.d)

    def constraint_dim(self, v: str) -> int:
        c = self.constraints.get(v)
        return self.d if c is None else c.dim


@dataclass(frozen=True)
class Custom:
    hypergraph: Hypergraph
    group: GroupModel
    algebras: Mapping[str, Subalgebra]
    incidence_algebras: Mapping[Incidence, Subalgebra] = field(default_factory=dict)

    kind = "custom"

    @property
    def model(self) -> GroupModel:
        return self.group


Instance = BarJoint | ProjectiveConfig | Scene | Parallel | Constrained | Custom


# -- builders -------------------------------------------------------------


def _bar_joint_algebras(h: Hypergraph, d: int, coords: Mapping) -> dict[str, Subalgebra]:
    model = GroupModel.euclidean(d)
    _require_all(h, coords, h.vertices, "coordinates")
    for v, p in coords.items():
        if len(p) != d:
            raise InstanceError(f"vertex {v!r} has {len(p)} coordinates, expected {d}")
    algebras = {v: stabiliser(model, EuclideanPoint(coords[v])) for v in h.vertices}
    for e, vs in h.edges:
        if len(vs) != 2:
            raise InstanceError(f"bar {e!r} must join exactly two vertices")
        a, b = vs
        if tuple(coords[a]) == tuple(coords[b]):
            raise InstanceError(f"bar {e!r} has coincident endpoints")
        algebras[e] = incidence_algebra(model, algebras[a], algebras[b])
    return algebras


def _build_bar_joint(inst: BarJoint) -> Realisation:
    h = inst.hypergraph
    algebras = _bar_joint_algebras(h, inst.d, inst.coords)
    return Realisation(h, inst.model, algebras, default_incidences(h, inst.model, algebras))


def _build_constrained(inst: Constrained) -> Realisation:
    h = inst.hypergraph
    model = inst.model
    algebras = _bar_joint_algebras(h, inst.d, inst.coords)
    unknown = sorted(set(inst.constraints) - set(h.vertices))
    if unknown:
        raise InstanceError(f"constraint for unknown vertices {unknown}")
    constraints = {}
    for v in h.vertices:
        flat = inst.constraints.get(v)
        if flat is None:
            constraints[v] = model.full()
            continue
        if not flat.contains(inst.coords[v]):
            raise InstanceError(f"vertex {v!r} does not lie on its constraint space")
        constraints[v] = tangency_algebra_affine(model, flat)
    return Realisation(h, model, algebras, default_incidences(h, model, algebras), constraints)


def _build_projective(inst: ProjectiveConfig) -> Realisation:
    h, n = inst.hypergraph, inst.n
    model = inst.model
    if not (1 <= inst.k <= inst.l < n):
        raise InstanceError("projective instances need 1 <= k <= l < n")
    _require_all(h, inst.vertex_subspaces, h.vertices, "vertex subspaces")
    _require_all(h, inst.edge_subspaces, h.edge_ids, "edge subspaces")
    spaces: dict[str, Subspace] = {}
    for ids, table, dim in ((h.vertices, inst.vertex_subspaces, inst.k), (h.edge_ids, inst.edge_subspaces, inst.l)):
        for x in ids:
            sub = table[x]
            if any(len(b) != n for b in sub.basis):
                raise InstanceError(f"subspace of {x!r} must live in R^{n}")
            s = sub.space(n)
            if s.dim != dim or len(sub.basis) != dim:
                raise InstanceError(f"subspace of {x!r} must have dimension {dim} with an independent basis")
            spaces[x] = s
    for inc in incidence_set(h):
        if not spaces[inc.vertex].issubspace(spaces[inc.edge]):
            raise InstanceError(f"incidence {inc} violated: vertex subspace not inside edge subspace")
    algebras = {x: stabiliser(model, ProjectiveSubspace(s.basis)) for x, s in spaces.items()}
    return Realisation(h, model, algebras, default_incidences(h, model, algebras))


def _build_scene(inst: Scene) -> Realisation:
    h, d = inst.hypergraph, inst.d
    model = inst.model
    _require_all(h, inst.points, h.vertices, "scene points")
    algebras = {v: stabiliser(model, inst.points[v]) for v in h.vertices}
    for e, vs in h.edges:
        pts = [inst.points[v].coords for v in vs]
        if pts and rank(pts, d + 1) > d:
            raise InstanceError(f"scene points of edge {e!r} do not lie on a common hyperplane")
        algebras[e] = intersect_algebras(model, [algebras[v] for v in vs]) if vs else model.full()
    return Realisation(h, model, algebras, default_incidences(h, model, algebras))


def _build_parallel(inst: Parallel) -> Realisation:
    h, d = inst.hypergraph, inst.d
    model = inst.model
    _require_all(h, inst.points, h.vertices, "points")
    _require_all(h, inst.hyperplanes, h.edge_ids, "hyperplanes")
    algebras: dict[str, Subalgebra] = {}
    for e, vs in h.edges:
        plane = inst.hyperplanes[e]
        for v in vs:
            if len(inst.points[v]) != d:
                raise InstanceError(f"point of {v!r} must have {d} coordinates")
            if not plane.contains(inst.points[v]):
                raise InstanceError(f"incidence {v}*{e} violated: point not on hyperplane")
        algebras[e] = stabiliser(model, plane)
    notes = []
    for v in h.vertices:
        at = h.edges_at(v)
        if at:
            algebras[v] = intersect_algebras(model, [algebras[e] for e in at])
        else:
            # pinning rule for isolated vertices: keep them at their point
            algebras[v] = stabiliser(model, EuclideanPoint(inst.points[v]))
            notes.append(f"isolated vertex {v!r} pinned to the stabiliser of its point")
    for msg in notes:
        log.warning(msg)
    ordered = {x: algebras[x] for x in h.vertices + h.edge_ids}
    return Realisation(h, model, ordered, default_incidences(h, model, ordered), notes=tuple(notes))


def _build_custom(inst: Custom) -> Realisation:
    h, model = inst.hypergraph, inst.group
    _require_all(h, inst.algebras, h.vertices + h.edge_ids, "subalgebras")
    for x, a in inst.algebras.items():
        if a.model != model:
            raise InstanceError(f"subalgebra of {x!r} belongs to {a.model}, not {model}")
        if not a.is_bracket_closed():
            raise InstanceError(f"subspace given for {x!r} is not closed under the bracket")
    algebras = {x: inst.algebras[x] for x in h.vertices + h.edge_ids}
    incs = default_incidences(h, model, algebras)
    for inc, a in inst.incidence_algebras.items():
        if inc not in incs:
            raise InstanceError(f"{inc} is not an incidence of the hypergraph")
        if not a.is_bracket_closed():
            raise InstanceError(f"subspace given for {inc} is not closed under the bracket")
        incs[inc] = a
    r = Realisation(h, model, algebras, incs)
    r.check_containment()
    return r


_BUILDERS: dict[type, Callable[..., Realisation]] = {
    BarJoint: _build_bar_joint,
    ProjectiveConfig: _build_projective,
    Scene: _build_scene,
    Parallel: _build_parallel,
    Constrained: _build_constrained,
    Custom: _build_custom,
}


def build(inst: Instance) -> Realisation:
    try:
        builder = _BUILDERS[type(inst)]
    except KeyError:
        raise InstanceError(f"unsupported instance type {type(inst).__name__}") from None
    return builder(inst)


# -- transport along algebra isomorphisms ---------------------------------


def _neg_transpose(x: Matrix) -> Matrix:
    return freeze([[-t for t in row] for row in transpose(x)])


def _scene_to_dilation(x: Matrix) -> Matrix:
    # -X^T lands in gl(d+1); shifting by a scalar (trivial in pgl) clears the corner
    y = [[-t for t in row] for row in transpose(x)]
    m = len(y)
    corner = y[m - 1][m - 1]
    for i in range(m):
        y[i][i] -= corner
    return freeze(y)


ALGEBRA_MAPS: dict[str, tuple[str, str, Callable[[Matrix], Matrix]]] = {
    # name: (source kind, target kind, matrix map)
    "projective-dual": ("projective", "projective", _neg_transpose),
    "scene-to-parallel": ("scenes", "dilation", _scene_to_dilation),
}


def _target_model(source: GroupModel, phi: str) -> tuple[GroupModel, Callable[[Matrix], Matrix]]:
    if phi == "identity":
        return source, lambda x: x
    try:
        src_kind, dst_kind, fn = ALGEBRA_MAPS[phi]
    except KeyError:
        raise InstanceError(f"unknown algebra map {phi!r}") from None
    if source.kind != src_kind:
        raise InstanceError(f"map {phi!r} applies to {src_kind} realisations, not {source.kind}")
    return GroupModel(dst_kind, source.param), fn


def map_algebra(a: Subalgebra, phi: str) -> Subalgebra:
    target, fn = _target_model(a.model, phi)
    return Subalgebra(target, Subspace.span([target.coords(fn(x)) for x in a.matrices()], target.dim))


def check_isomorphism(source: GroupModel, phi: str) -> None:
    target, fn = _target_model(source, phi)
    images = [target.coords(fn(b)) for b in source.basis]
    if source.dim != target.dim or rank(images, target.dim) != target.dim:
        raise InstanceError(f"{phi!r} is not an isomorphism from {source} onto {target}")


def pushforward(r: Realisation, phi: str = "identity", relabel: bool = False) -> Realisation:
    """Apply an algebra isomorphism to every subalgebra of ``r``.

    With ``relabel`` the result lives on the dual hypergraph: old edges
    become vertices, old vertex ``v`` becomes the edge ``E_v``, and the
    incidence ``v*e`` becomes ``e*E_v``.
    """
    check_isomorphism(r.model, phi)
    target, _ = _target_model(r.model, phi)
    mapped = {x: map_algebra(a, phi) for x, a in r.algebras.items()}
    mapped_inc = {i: map_algebra(a, phi) for i, a in r.incidence_algebras.items()}
    constraints = None
    if r.constraints is not None:
        constraints = {v: map_algebra(a, phi) for v, a in r.constraints.items()}
    if not relabel:
        return Realisation(r.hypergraph, target, mapped, mapped_inc, constraints, r.notes)
    if constraints is not None:
        raise InstanceError("vertex constraints cannot be moved onto the dual hypergraph")
    h = r.hypergraph
    hd = dual(h)
    names = dual_names(h)
    algebras = {e: mapped[e] for e in h.edge_ids}
    algebras.update({names[v]: mapped[v] for v in h.vertices})
    incs = {Incidence(i.edge, names[i.vertex]): a for i, a in mapped_inc.items()}
    return Realisation(hd, target, algebras, incs, None, r.notes)


# -- dual instances -------------------------------------------------------


def _perp(space: Subspace) -> ProjectiveSubspace:
    return ProjectiveSubspace(Subspace.span(orthogonal_complement_rows(space), space.n).basis)


def projective_dual_instance(inst: ProjectiveConfig) -> ProjectiveConfig:
    """Replace every subspace by its orthogonal complement on the dual hypergraph."""
    h, n = inst.hypergraph, inst.n
    names = dual_names(h)
    vertex_subspaces = {e: _perp(inst.edge_subspaces[e].space(n)) for e in h.edge_ids}
    edge_subspaces = {names[v]: _perp(inst.vertex_subspaces[v].space(n)) for v in h.vertices}
    return ProjectiveConfig(dual(h), n, n - inst.l, n - inst.k, vertex_subspaces, edge_subspaces)


def polar_hyperplane(p: ScenePoint) -> Hyperplane:
    """Hyperplane ``x . p[:d] = -p[d]``, i.e. the points x with ``p . (x, 1) = 0``."""
    return Hyperplane(p.coords[:-1], -p.coords[-1])


def scene_to_parallel_instance(inst: Scene) -> Parallel:
    """Parallel-redrawing instance on the dual hypergraph.

    Each scene point becomes its polar hyperplane; each scene edge becomes a
    point lying on the polars of its vertices.
    """
    h, d = inst.hypergraph, inst.d
    names = dual_names(h)
    hyperplanes = {names[v]: polar_hyperplane(inst.points[v]) for v in h.vertices}
    points = {}
    for e, vs in h.edges:
        rows = [inst.points[v].coords[:d] for v in vs]
        rhs = [-inst.points[v].coords[d] for v in vs]
        x = solve(rows, rhs, d)
        if x is None:
            raise InstanceError(f"edge {e!r} spans a plane through the projection centre; no affine dual point")
        points[e] = tuple(x)
    return Parallel(dual(h), d, points, hyperplanes)


def dualize(inst: Instance, target: str) -> Instance:
    if target == "projective-dual":
        if not isinstance(inst, ProjectiveConfig):
            raise InstanceError("projective-dual needs a projective instance")
        return projective_dual_instance(inst)
    if target == "scene-to-parallel":
        if not isinstance(inst, Scene):
            raise InstanceError("scene-to-parallel needs a scene instance")
        return scene_to_parallel_instance(inst)
    raise InstanceError(f"unknown dualisation target {target!r}")
