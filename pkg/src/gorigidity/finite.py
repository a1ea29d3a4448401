"""Realisations in finite permutation groups.

Permutations of ``{1..m}`` are tuples ``p`` with ``p[i-1]`` the image of
``i``; products compose right to left. Groups are explicit element sets,
which keeps everything desk scale (symmetric groups up to degree 10).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .errors import InstanceError, InvariantError
from .hypergraph import Hypergraph, Incidence, incidence_graph, incidence_set

Perm = tuple[int, ...]
DEFAULT_CAP = math.factorial(10)


def identity(m: int) -> Perm:
    return tuple(range(1, m + 1))


def compose(g: Perm, h: Perm) -> Perm:
    """``g h``: apply ``h`` first."""
    return tuple(g[x - 1] for x in h)


def inverse(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, x in enumerate(g, start=1):
        out[x - 1] = i
    return tuple(out)


def check_perm(p: Sequence[int], m: int) -> Perm:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(1, m + 1)):
        raise InstanceError(f"{p} is not a permutation of 1..{m}")
    return p


@dataclass(frozen=True)
class PermGroup:
    degree: int
    elements: frozenset[Perm]

    @classmethod
    def symmetric(cls, n: int, cap: int = DEFAULT_CAP) -> "PermGroup":
        if n < 1:
            raise InstanceError("symmetric group needs degree >= 1")
        if math.factorial(n) > cap:
            raise InstanceError(f"S_{n} has {math.factorial(n)} elements, above the cap {cap}")
        return cls(n, frozenset(permutations(range(1, n + 1))))

    @classmethod
    def generated(cls, degree: int, gens: Iterable[Sequence[int]], cap: int = DEFAULT_CAP) -> "PermGroup":
        gens = [check_perm(g, degree) for g in gens]
        return cls(degree, closure(degree, gens, cap))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return tuple(g) in self.elements

    def sorted(self) -> list[Perm]:
        return sorted(self.elements)


def closure(degree: int, gens: Iterable[Perm], cap: int = DEFAULT_CAP) -> frozenset[Perm]:
    gens = list(gens)
    e = identity(degree)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise InstanceError(f"group exceeds the cap of {cap} elements")
                queue.append(y)
    return frozenset(seen)


def is_subgroup(h: Iterable[Perm], degree: int) -> bool:
    h = set(h)
    if identity(degree) not in h:
        return False
    # finite: closure under products suffices
    return all(compose(a, b) in h for a in h for b in h)


def stabiliser_of_point(g: PermGroup, point: int) -> frozenset[Perm]:
    return frozenset(p for p in g.elements if p[point - 1] == point)


def fix_of_subgroup(g: PermGroup, h: Iterable[Perm]) -> set[int]:
    h = frozenset(tuple(p) for p in h)
    if not h <= g.elements:
        raise InstanceError("subgroup is not contained in the group")
    if not is_subgroup(h, g.degree):
        raise InstanceError("not a subgroup")
    return {x for x in range(1, g.degree + 1) if all(p[x - 1] == x for p in h)}


# -- realisations ---------------------------------------------------------


@dataclass(frozen=True)
class FiniteRealisation:
    hypergraph: Hypergraph
    group: PermGroup
    subgroups: Mapping[str, frozenset[Perm]]
    incidence_subgroups: Mapping[Incidence, frozenset[Perm]]
    colouring: Mapping[str, int] | None = None

    def __post_init__(self):
        h = self.hypergraph
        for x in h.vertices + h.edge_ids:
            sub = self.subgroups.get(x)
            if sub is None:
                raise InstanceError(f"no subgroup for {x!r}")
            if not sub <= self.group.elements or not is_subgroup(sub, self.group.degree):
                raise InstanceError(f"subgroup of {x!r} is not a subgroup of the group")
        for inc in incidence_set(h):
            sub = self.incidence_subgroups.get(inc)
            if sub is None:
                raise InstanceError(f"no subgroup for incidence {inc}")
            if not (sub <= self.subgroups[inc.vertex] and sub <= self.subgroups[inc.edge]):
                raise InstanceError(f"incidence subgroup of {inc} not inside both endpoint subgroups")

    def subgroup(self, x) -> frozenset[Perm]:
        if isinstance(x, Incidence):
            return self.incidence_subgroups[x]
        return self.subgroups[x]


def from_colouring(h: Hypergraph, colouring: Mapping[str, int], n: int, cap: int = DEFAULT_CAP) -> FiniteRealisation:
    """Vertex ``v`` gets the stabiliser of its colour in ``S_n``; edges and
    incidences get intersections."""
    if n < 3:
        raise InstanceError("colour realisations need n >= 3")
    if not h.is_graph():
        raise InstanceError("colour realisations need a graph (2-element edges)")
    missing = [v for v in h.vertices if v not in colouring]
    if missing:
        raise InstanceError(f"no colour for {missing}")
    for v, c in colouring.items():
        if v not in h.vertices:
            raise InstanceError(f"colour given for unknown vertex {v!r}")
        if not isinstance(c, int) or isinstance(c, bool) or not 1 <= c <= n:
            raise InstanceError(f"colour of {v!r} must be an integer in 1..{n}")
    for e, (a, b) in h.edges:
        if colouring[a] == colouring[b]:
            raise InstanceError(f"improper colouring: both ends of {e!r} have colour {colouring[a]}")
    g = PermGroup.symmetric(n, cap)
    subs: dict[str, frozenset[Perm]] = {v: stabiliser_of_point(g, colouring[v]) for v in h.vertices}
    for e, vs in h.edges:
        subs[e] = frozenset.intersection(*(subs[v] for v in vs))
    incs = {i: subs[i.vertex] & subs[i.edge] for i in incidence_set(h)}
    return FiniteRealisation(h, g, subs, incs, dict(colouring))


# -- coset graph ----------------------------------------------------------

Node = tuple[str, Perm]


@dataclass
class CosetGraph:
    realisation: FiniteRealisation
    fibres: dict[str, list[Perm]]
    rep_of: dict[str, dict[Perm, Perm]]
    links: dict[tuple[Node, Node], Perm]  # (vertex node, edge node) -> incidence coset rep
    adjacency: dict[Node, set[Node]] = field(default_factory=dict)

    @property
    def nodes(self) -> list[Node]:
        return [(x, rep) for x, reps in self.fibres.items() for rep in reps]

    @property
    def edges(self) -> list[tuple[Node, Node]]:
        return list(self.links)

    def fibre_size(self, x: str) -> int:
        return len(self.fibres[x])

    def coset(self, node: Node) -> frozenset[Perm]:
        x, rep = node
        return frozenset(compose(rep, h) for h in self.realisation.subgroup(x))


def left_cosets(g: PermGroup, h: frozenset[Perm]) -> dict[Perm, Perm]:
    """Element -> least element of its left coset ``g H``."""
    rep: dict[Perm, Perm] = {}
    for x in g.sorted():
        if x in rep:
            continue
        coset = [compose(x, y) for y in h]
        r = min(coset)
        for y in coset:
            rep[y] = r
    return rep


def coset_graph(r: FiniteRealisation, cap: int = DEFAULT_CAP) -> CosetGraph:
    if r.group.order > cap:
        raise InstanceError(f"group order {r.group.order} exceeds the cap {cap}")
    h = r.hypergraph
    rep_of = {x: left_cosets(r.group, r.subgroups[x]) for x in h.vertices + h.edge_ids}
    fibres = {x: sorted(set(m.values())) for x, m in rep_of.items()}
    links: dict[tuple[Node, Node], Perm] = {}
    adjacency: dict[Node, set[Node]] = {(x, rep): set() for x, reps in fibres.items() for rep in reps}
    for inc in incidence_set(h):
        for g, ri in left_cosets(r.group, r.incidence_subgroups[inc]).items():
            if g != ri:
                continue
            a = (inc.vertex, rep_of[inc.vertex][g])
            b = (inc.edge, rep_of[inc.edge][g])
            if (a, b) in links:
                raise InvariantError(f"two incidence cosets of {inc} join the same pair of nodes")
            links[(a, b)] = ri
            adjacency[a].add(b)
            adjacency[b].add(a)
    for x, reps in fibres.items():
        if len(reps) * len(r.subgroups[x]) != r.group.order:
            raise InvariantError(f"fibre over {x!r} has the wrong size")
    return CosetGraph(r, fibres, rep_of, links, adjacency)


def section_order(h: Hypergraph) -> list[str]:
    """Breadth-first over the incidence graph, restarting from the unvisited
    node of largest degree."""
    ig = incidence_graph(h)
    nbrs = ig.neighbours()
    order: list[str] = []
    seen: set[str] = set()
    for start in sorted(ig.nodes, key=lambda x: (-len(nbrs[x]), ig.nodes.index(x))):
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in nbrs[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return order


def enumerate_sections(x: CosetGraph) -> list[dict[str, Perm]]:
    h = x.realisation.hypergraph
    order = section_order(h)
    nbrs = incidence_graph(h).neighbours()
    out: list[dict[str, Perm]] = []
    chosen: dict[str, Perm] = {}

    def candidates(node: str) -> list[Perm]:
        placed = [y for y in nbrs[node] if y in chosen]
        if not placed:
            return x.fibres[node]
        first = placed[0]
        cands = sorted(rep for (z, rep) in x.adjacency[(first, chosen[first])] if z == node)
        return [c for c in cands if all((y, chosen[y]) in x.adjacency[(node, c)] for y in placed[1:])]

    def walk(k: int) -> None:
        if k == len(order):
            out.append(dict(chosen))
            return
        node = order[k]
        for c in candidates(node):
            chosen[node] = c
            walk(k + 1)
            del chosen[node]

    walk(0)
    keys = list(h.vertices) + list(h.edge_ids)
    out.sort(key=lambda s: [s[k] for k in keys])
    return out


def section_to_motion(x: CosetGraph, s: Mapping[str, Perm]) -> dict:
    """Group elements per element of V, E and I realising the section."""
    motion: dict = {k: rep for k, rep in s.items()}
    for inc in incidence_set(x.realisation.hypergraph):
        key = ((inc.vertex, s[inc.vertex]), (inc.edge, s[inc.edge]))
        if key not in x.links:
            raise InvariantError(f"section does not follow a coset-graph edge over {inc}")
        motion[inc] = x.links[key]
    return motion


def is_motion(r: FiniteRealisation, motion: Mapping) -> bool:
    for inc in incidence_set(r.hypergraph):
        si = inverse(motion[inc])
        for end in (inc.vertex, inc.edge):
            if compose(si, motion[end]) not in r.subgroups[end]:
                return False
    return True


def section_is_congruent(x: CosetGraph, s: Mapping[str, Perm]) -> bool:
    """Whether one group element ``g`` has ``s(x) = g rho(x)`` for every x."""
    r = x.realisation
    keys = list(s)
    if not keys:
        return True
    cands = x.coset((keys[0], s[keys[0]]))
    for k in keys[1:]:
        rep_inv = inverse(s[k])
        sub = r.subgroups[k]
        cands = frozenset(g for g in cands if compose(rep_inv, g) in sub)
        if not cands:
            return False
    return True


def edge_bound_holds(h: Hypergraph, n: int) -> bool:
    return len(h.edge_ids) >= (n - 1) * len(h.vertices) - math.comb(n, 2)


@dataclass
class FiniteReport:
    sections: int
    globally_rigid: bool
    group_order: int
    fibre_sizes: dict[str, int]

    def to_json(self) -> dict:
        return {
            "sections": self.sections,
            "globally_rigid": self.globally_rigid,
            "group_order": self.group_order,
            "fibre_sizes": self.fibre_sizes,
        }


def analyse_finite(r: FiniteRealisation, cap: int = DEFAULT_CAP) -> FiniteReport:
    x = coset_graph(r, cap)
    sections = enumerate_sections(x)
    for s in sections:
        if not is_motion(r, section_to_motion(x, s)):
            raise InvariantError("reconstructed motion violates the incidence conditions")
    rigid = all(section_is_congruent(x, s) for s in sections)
    if rigid and r.colouring is not None and not edge_bound_holds(r.hypergraph, r.group.degree):
        raise InvariantError("globally rigid verdict contradicts the edge-count bound")
    return FiniteReport(len(sections), rigid, r.group.order, {k: len(v) for k, v in x.fibres.items()})


def is_globally_rigid_finite(r: FiniteRealisation, cap: int = DEFAULT_CAP) -> bool:
    return analyse_finite(r, cap).globally_rigid


# -- tensor products ------------------------------------------------------


def _adjacency(h: Hypergraph) -> dict[str, set[str]]:
    if not h.is_graph():
        raise InstanceError("tensor products need simple graphs")
    adj: dict[str, set[str]] = {v: set() for v in h.vertices}
    for _, (a, b) in h.edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def tensor_product(gamma: Hypergraph, lam: Hypergraph) -> dict[tuple[str, str], set[tuple[str, str]]]:
    ga, la = _adjacency(gamma), _adjacency(lam)
    prod = {(a, x): set() for a in gamma.vertices for x in lam.vertices}
    for a in gamma.vertices:
        for b in ga[a]:
            for x in lam.vertices:
                for y in la[x]:
                    prod[(a, x)].add((b, y))
    return prod


def tensor_sections(gamma: Hypergraph, lam: Hypergraph) -> int:
    """Sections of the projection from the tensor product onto ``gamma``:
    choose a vertex over each vertex of ``gamma`` so adjacent choices stay
    adjacent in the product."""
    prod = tensor_product(gamma, lam)
    ga = _adjacency(gamma)
    order = section_order(gamma)
    order = [v for v in order if v in ga]  # vertices only
    chosen: dict[str, tuple[str, str]] = {}

    def walk(k: int) -> int:
        if k == len(order):
            return 1
        a = order[k]
        total = 0
        for x in lam.vertices:
            node = (a, x)
            if all(chosen[b] in prod[node] for b in ga[a] if b in chosen):
                chosen[a] = node
                total += walk(k + 1)
                del chosen[a]
        return total

    return walk(0)
