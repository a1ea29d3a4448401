"""Hypergraphs, their incidences, duals and vertex-removal components."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InstanceError


class HypergraphError(InstanceError):
    pass


@dataclass(frozen=True)
class Incidence:
    vertex: str
    edge: str

    def __str__(self) -> str:
        return f"{self.vertex}*{self.edge}"


@dataclass(frozen=True)
class Hypergraph:
    """Vertices in input order plus ``(edge id, member tuple)`` pairs.

    Vertex and edge ids share one namespace (a realisation is keyed by
    both), so they must be disjoint. Repeated member sets are allowed.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, tuple[str, ...]], ...]
    allow_empty_edges: bool = False
    _members: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise HypergraphError("duplicate vertex id")
        vset = set(self.vertices)
        seen: set[str] = set()
        members = {}
        for eid, verts in self.edges:
            if eid in seen:
                raise HypergraphError(f"duplicate edge id {eid!r}")
            if eid in vset:
                raise HypergraphError(f"id {eid!r} used for both a vertex and an edge")
            seen.add(eid)
            if len(set(verts)) != len(verts):
                raise HypergraphError(f"edge {eid!r} lists a vertex twice")
            for v in verts:
                if v not in vset:
                    raise HypergraphError(f"edge {eid!r} uses unknown vertex {v!r}")
            if not verts and not self.allow_empty_edges:
                raise HypergraphError(f"edge {eid!r} is empty")
            members[eid] = frozenset(verts)
        object.__setattr__(self, "_members", members)

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        edges: Mapping[str, Sequence[str]] | Iterable[tuple[str, Sequence[str]]],
        allow_empty_edges: bool = False,
    ) -> "Hypergraph":
        items = edges.items() if isinstance(edges, Mapping) else edges
        return cls(
            tuple(str(v) for v in vertices),
            tuple((str(e), tuple(str(v) for v in vs)) for e, vs in items),
            allow_empty_edges,
        )

    @classmethod
    def graph(cls, vertices: Iterable[str], pairs: Iterable[tuple[str, str]], prefix: str = "e") -> "Hypergraph":
        """Simple graph; edges are named ``{prefix}{i}`` in input order."""
        return cls.build(vertices, [(f"{prefix}{i}", (a, b)) for i, (a, b) in enumerate(pairs)])

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e for e, _ in self.edges)

    def members(self, edge: str) -> frozenset[str]:
        return self._members[edge]

    def edge_members(self) -> dict[str, tuple[str, ...]]:
        return {e: vs for e, vs in self.edges}

    def edges_at(self, vertex: str) -> list[str]:
        return [e for e, vs in self.edges if vertex in vs]

    def is_isolated(self, vertex: str) -> bool:
        return not self.edges_at(vertex)

    def is_graph(self) -> bool:
        return all(len(vs) == 2 for _, vs in self.edges)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "vertices": list(vs)} for e, vs in self.edges],
        }

    @classmethod
    def from_json(cls, doc: Mapping, allow_empty_edges: bool = False) -> "Hypergraph":
        return cls.build(
            doc["vertices"],
            [(e["id"], e["vertices"]) for e in doc["edges"]],
            allow_empty_edges=allow_empty_edges or bool(doc.get("allow_empty_edges", False)),
        )


def incidence_set(h: Hypergraph) -> list[Incidence]:
    """Incidences in edge order, then in the vertex order inside each edge."""
    return [Incidence(v, e) for e, vs in h.edges for v in vs]


@dataclass(frozen=True)
class IncidenceGraph:
    nodes: tuple[str, ...]
    vertex_nodes: frozenset[str]
    links: tuple[Incidence, ...]

    def neighbours(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {x: [] for x in self.nodes}
        for inc in self.links:
            adj[inc.vertex].append(inc.edge)
            adj[inc.edge].append(inc.vertex)
        return adj


def incidence_graph(h: Hypergraph) -> IncidenceGraph:
    return IncidenceGraph(h.vertices + h.edge_ids, frozenset(h.vertices), tuple(incidence_set(h)))


def dual_names(h: Hypergraph) -> dict[str, str]:
    """Map from a vertex of ``h`` to the id of its edge in ``dual(h)``.

    The id is ``E_<vertex>``, with extra ``E_`` prefixes until it clashes
    with no id of ``h`` and no id handed out before it.
    """
    taken = set(h.vertices) | set(h.edge_ids)
    names = {}
    for v in h.vertices:
        name = f"E_{v}"
        while name in taken:
            name = "E_" + name
        taken.add(name)
        names[v] = name
    return names


def dual(h: Hypergraph) -> Hypergraph:
    """Dual hypergraph: edges become vertices, each vertex becomes the edge
    of edges containing it (duplicates kept, named after their vertex)."""
    names = dual_names(h)
    edges = [(names[v], tuple(h.edges_at(v))) for v in h.vertices]
    return Hypergraph.build(h.edge_ids, edges, allow_empty_edges=True)


@dataclass(frozen=True)
class Split:
    components: tuple[tuple[str, ...], ...]
    edge_component: dict[str, int]
    disconnecting: bool
    removed: tuple[str, ...]


def split_components(h: Hypergraph, removed: Iterable[str] = ()) -> Split:
    """Connected components of the hypergraph induced on ``V \\ removed``.

    Only edges lying inside the remaining vertices survive; each is filed
    under the component holding its vertices. Components are listed in
    order of their first vertex.
    """
    removed_set = set(removed)
    unknown = removed_set - set(h.vertices)
    if unknown:
        raise HypergraphError(f"unknown vertices {sorted(unknown)}")
    remaining = [v for v in h.vertices if v not in removed_set]
    surviving = [(e, vs) for e, vs in h.edges if vs and not (set(vs) & removed_set)]
    adj: dict[str, set[str]] = {v: set() for v in remaining}
    for _, vs in surviving:
        for a in vs:
            adj[a].update(vs)
    comp_of: dict[str, int] = {}
    comps: list[tuple[str, ...]] = []
    for start in remaining:
        if start in comp_of:
            continue
        idx = len(comps)
        order = []
        queue = deque([start])
        comp_of[start] = idx
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in adj[x]:
                if y not in comp_of:
                    comp_of[y] = idx
                    queue.append(y)
        comps.append(tuple(v for v in remaining if v in set(order)))
    edge_component = {e: comp_of[vs[0]] for e, vs in surviving}
    return Split(tuple(comps), edge_component, len(comps) > 1, tuple(v for v in h.vertices if v in removed_set))


def is_connected(h: Hypergraph) -> bool:
    return len(split_components(h).components) <= 1
