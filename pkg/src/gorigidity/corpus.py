"""Worked fixtures and seeded random instances shared by tests, scripts
and ``selftest``."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .hypergraph import Hypergraph
from .linalg import nullspace
from .liemodels import AffineSubspace, Hyperplane, ProjectiveSubspace, ScenePoint
from .oracles import proper_colourings
from .realisation import BarJoint, Constrained, Parallel, ProjectiveConfig, Scene

F = Fraction


def _pts(coords: dict) -> dict:
    return {v: tuple(F(c) for c in p) for v, p in coords.items()}


# -- fixtures -------------------------------------------------------------


def triangle() -> BarJoint:
    h = Hypergraph.graph(["v1", "v2", "v3"], [("v1", "v2"), ("v2", "v3"), ("v1", "v3")])
    return BarJoint(h, 2, _pts({"v1": (0, 0), "v2": (1, 0), "v3": (0, 1)}))


def single_vertex(d: int = 2) -> BarJoint:
    return BarJoint(Hypergraph.build(["v"], []), d, _pts({"v": (0,) * d}))


def single_bar(d: int = 2) -> BarJoint:
    h = Hypergraph.graph(["v", "w"], [("v", "w")])
    return BarJoint(h, d, _pts({"v": (0,) * d, "w": (1,) + (0,) * (d - 1)}))


def unit_square() -> BarJoint:
    h = Hypergraph.graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    return BarJoint(h, 2, _pts({"a": (0, 0), "b": (1, 0), "c": (1, 1), "d": (0, 1)}))


def two_triangles() -> BarJoint:
    """Two triangles glued at the vertex ``s``."""
    h = Hypergraph.graph(
        ["s", "a1", "a2", "b1", "b2"],
        [("s", "a1"), ("a1", "a2"), ("s", "a2"), ("s", "b1"), ("b1", "b2"), ("s", "b2")],
    )
    return BarJoint(h, 2, _pts({"s": (0, 0), "a1": (2, 1), "a2": (1, 3), "b1": (-2, 1), "b2": (-1, -3)}))


def double_banana() -> BarJoint:
    """Two copies of K5 minus the pole edge vw, glued along the poles."""
    coords = {
        "v": (0, 0, 5),
        "w": (1, 2, -4),
        "a1": (3, 1, 1),
        "a2": (-1, 4, 2),
        "a3": (2, -3, 1),
        "b1": (-4, -1, 0),
        "b2": (-2, -5, 1),
        "b3": (-5, 3, 2),
    }
    pairs = []
    for ring in (["a1", "a2", "a3"], ["b1", "b2", "b3"]):
        pairs += list(combinations(ring, 2))
        pairs += [(p, x) for x in ring for p in ("v", "w")]
    return BarJoint(Hypergraph.graph(list(coords), pairs), 3, _pts(coords))


def projective_triangle() -> ProjectiveConfig:
    """Three points and the three lines joining them in the projective plane."""
    pts = {"p1": (1, 0, 0), "p2": (0, 1, 0), "p3": (0, 0, 1)}
    h = Hypergraph.build(pts, {"l12": ("p1", "p2"), "l23": ("p2", "p3"), "l13": ("p1", "p3")})
    lines = {e: ProjectiveSubspace([pts[a], pts[b]]) for e, (a, b) in h.edges}
    return ProjectiveConfig(h, 3, 1, 2, {v: ProjectiveSubspace([p]) for v, p in pts.items()}, lines)


def point_line() -> ProjectiveConfig:
    h = Hypergraph.build(["p"], {"l": ("p",)})
    return ProjectiveConfig(
        h, 3, 1, 2, {"p": ProjectiveSubspace([(1, 0, 0)])}, {"l": ProjectiveSubspace([(1, 0, 0), (0, 1, 0)])}
    )


def scene_pair() -> Scene:
    """A small scene whose edge planes avoid the projection centre, so its
    parallel-redrawing dual exists."""
    pts = {
        "a": (1, 0, 1),
        "b": (0, 1, 1),
        "c": (1, 1, 2),
        "d": (2, -1, 1),
    }
    h = Hypergraph.build(pts, {"f1": ("a", "b", "c"), "f2": ("a", "d"), "f3": ("b", "d")})
    return Scene(h, 2, {v: ScenePoint(p) for v, p in pts.items()})


def constrained_pair() -> Constrained:
    """Two vertices on parallel horizontal lines joined by a bar."""
    h = Hypergraph.graph(["u", "v"], [("u", "v")])
    cons = {"u": AffineSubspace((0, 0), [(1, 0)]), "v": AffineSubspace((0, 1), [(1, 0)])}
    return Constrained(h, 2, _pts({"u": (0, 0), "v": (1, 1)}), cons)


def constrained_single() -> Constrained:
    h = Hypergraph.build(["v"], [])
    return Constrained(h, 2, _pts({"v": (0, 0)}), {"v": AffineSubspace((0, 0), [(1, 0)])})


# graphs for the finite module
def k3() -> Hypergraph:
    return Hypergraph.graph("abc", [("a", "b"), ("b", "c"), ("a", "c")])


def c5() -> Hypergraph:
    return Hypergraph.graph("abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])


def k4_minus_edge() -> Hypergraph:
    return Hypergraph.graph("abcd", [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")])


def k2() -> Hypergraph:
    return Hypergraph.graph("ab", [("a", "b")])


# -- random generators ----------------------------------------------------


def _random_graph(rng: random.Random, nv: int, p: float) -> list[tuple[str, str]]:
    names = [f"v{i}" for i in range(nv)]
    pairs = [(a, b) for a, b in combinations(names, 2) if rng.random() < p]
    return pairs


def random_bar_joint(rng: random.Random, d: int | None = None, nv: int | None = None) -> BarJoint:
    """Random graph with small integer coordinates; about one in five
    instances puts every vertex on a common line (distinct points)."""
    d = d or rng.choice([2, 3])
    nv = nv or rng.randint(2, 8)
    names = [f"v{i}" for i in range(nv)]
    pairs = _random_graph(rng, nv, rng.choice([0.3, 0.5, 0.7, 0.9]))
    coords: dict[str, tuple] = {}
    if rng.random() < 0.2:
        base = [rng.randint(-3, 3) for _ in range(d)]
        direction = [rng.randint(-2, 2) for _ in range(d)]
        if not any(direction):
            direction[0] = 1
        ts = rng.sample(range(-10, 11), nv)
        for v, t in zip(names, ts):
            coords[v] = tuple(F(b + t * c) for b, c in zip(base, direction))
    else:
        used = set()
        for v in names:
            while True:
                p = tuple(F(rng.randint(-6, 6), rng.choice([1, 1, 2, 3])) for _ in range(d))
                if p not in used:
                    used.add(p)
                    coords[v] = p
                    break
    return BarJoint(Hypergraph.graph(names, pairs), d, coords)


def _random_vector(rng: random.Random, n: int, lo: int = -5, hi: int = 5) -> list[Fraction]:
    while True:
        v = [F(rng.randint(lo, hi)) for _ in range(n)]
        if any(v):
            return v


def _incidence_pattern(rng: random.Random, nv: int, ne: int, max_deg: int) -> dict[str, list[str]]:
    """Edge membership where every edge is nonempty and no vertex lies on
    more than ``max_deg`` edges."""
    edges = {f"e{j}": [] for j in range(ne)}
    names = [f"v{i}" for i in range(nv)]
    deg = dict.fromkeys(names, 0)
    for j, e in enumerate(edges):
        v = names[j % nv]
        edges[e].append(v)
        deg[v] += 1
    for v in names:
        for e in rng.sample(list(edges), ne):
            if deg[v] >= max_deg:
                break
            if v not in edges[e] and rng.random() < 0.5:
                edges[e].append(v)
                deg[v] += 1
    return {e: [v for v in names if v in vs] for e, vs in edges.items()}


class _Resample(Exception):
    pass


def _point_in(rng: random.Random, normals: list[list[Fraction]], n: int, avoid) -> list[Fraction]:
    """Random nonzero vector orthogonal to all ``normals`` passing ``avoid``."""
    ker = nullspace(normals, n).basis if normals else [[F(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(200):
        coeffs = [F(rng.randint(-3, 3)) for _ in ker]
        v = [sum((c * b[j] for c, b in zip(coeffs, ker)), F(0)) for j in range(n)]
        if any(v) and avoid(v):
            return v
    raise _Resample


def random_projective(rng: random.Random, n: int | None = None) -> ProjectiveConfig:
    """Points on hyperplanes of R^n (k=1, l=n-1); n=3 is the plane case."""
    n = n or rng.choice([3, 3, 4])
    nv, ne = rng.randint(2, 5), rng.randint(1, 4)
    pattern = _incidence_pattern(rng, nv, ne, n - 1)
    normals = {e: _random_vector(rng, n) for e in pattern}
    names = [f"v{i}" for i in range(nv)]
    h = Hypergraph.build(names, pattern)
    vsub = {}
    for v in names:
        at = [normals[e] for e in h.edges_at(v)]
        vsub[v] = ProjectiveSubspace([_point_in(rng, at, n, lambda x: True)])
    esub = {e: ProjectiveSubspace(nullspace([normals[e]], n).basis) for e in pattern}
    return ProjectiveConfig(h, n, 1, n - 1, vsub, esub)


def random_scene(rng: random.Random, d: int | None = None) -> Scene:
    """Scene points in homogeneous coordinates; each edge plane has a
    nonzero last normal entry so the affine dual point exists."""
    d = d or rng.choice([2, 3])
    while True:
        try:
            return _random_scene(rng, d)
        except _Resample:
            continue


def _random_scene(rng: random.Random, d: int) -> Scene:
    nv, ne = rng.randint(2, 5), rng.randint(1, 4)
    pattern = _incidence_pattern(rng, nv, ne, d)
    normals = {}
    for e in pattern:
        a = _random_vector(rng, d + 1)
        if a[d] == 0:
            a[d] = F(1)
        normals[e] = a
    names = [f"v{i}" for i in range(nv)]
    h = Hypergraph.build(names, pattern)
    pts = {}
    for v in names:
        at = [normals[e] for e in h.edges_at(v)]
        pts[v] = ScenePoint(_point_in(rng, at, d + 1, lambda x: any(x[:d])))
    return Scene(h, d, pts)


def random_parallel(rng: random.Random, d: int | None = None) -> Parallel:
    d = d or rng.choice([2, 3])
    while True:
        try:
            return _random_parallel(rng, d)
        except _Resample:
            continue


def _random_parallel(rng: random.Random, d: int) -> Parallel:
    nv, ne = rng.randint(2, 5), rng.randint(1, 4)
    pattern = _incidence_pattern(rng, nv, ne, d)
    planes = {e: Hyperplane(_random_vector(rng, d), F(rng.randint(-4, 4))) for e in pattern}
    names = [f"v{i}" for i in range(nv)]
    h = Hypergraph.build(names, pattern)
    pts = {}
    for v in names:
        # homogeneous point [x;1] orthogonal to (normal, -offset) of each plane
        rows = [list(planes[e].homogeneous()) for e in h.edges_at(v)]
        y = _point_in(rng, rows, d + 1, lambda x: x[d] != 0)
        pts[v] = tuple(c / y[d] for c in y[:d])
    return Parallel(h, d, pts, planes)


def random_constrained(rng: random.Random) -> Constrained:
    d = 2
    base = random_bar_joint(rng, d=d, nv=rng.randint(2, 5))
    cons = {}
    for v, p in base.coords.items():
        kind = rng.choice(["line", "line", "point", "free"])
        if kind == "line":
            cons[v] = AffineSubspace(p, [_random_vector(rng, d, -2, 2)])
        elif kind == "point":
            cons[v] = AffineSubspace(p, [])
    return Constrained(base.hypergraph, d, base.coords, cons)


def bar_joint_corpus(seed: int = 2024, size: int = 50) -> list[BarJoint]:
    rng = random.Random(seed)
    return [random_bar_joint(rng, d=2 if k % 2 == 0 else 3) for k in range(size)]


def mixed_corpus(seed: int = 7, per_kind: int = 8) -> list:
    rng = random.Random(seed)
    out: list = []
    for _ in range(per_kind):
        out.append(random_bar_joint(rng))
        out.append(random_projective(rng))
        out.append(random_scene(rng))
        out.append(random_parallel(rng))
        out.append(random_constrained(rng))
    return out


def duality_corpus(seed: int = 11, size: int = 20) -> list:
    rng = random.Random(seed)
    return [random_projective(rng) if k % 2 == 0 else random_scene(rng) for k in range(size)]


def small_graphs(seed: int = 5, extra: int = 12) -> list[Hypergraph]:
    """Named small graphs plus seeded random graphs on 2 to 6 vertices."""
    graphs = [k2(), k3(), c5(), k4_minus_edge(), Hypergraph.graph("abcd", list(combinations("abcd", 2)))]
    graphs.append(Hypergraph.graph("abcd", [("a", "b"), ("b", "c"), ("c", "d")]))
    graphs.append(Hypergraph.build("ab", []))
    rng = random.Random(seed)
    for _ in range(extra):
        nv = rng.randint(2, 6)
        graphs.append(Hypergraph.graph([f"v{i}" for i in range(nv)], _random_graph(rng, nv, 0.5)))
    return graphs


def first_colouring(h: Hypergraph, n: int) -> dict[str, int] | None:
    cols = proper_colourings(h, n)
    return cols[0] if cols else None
