"""Classical computations used to cross-check the engine.

Nothing here calls into the motion solver or its elimination routines: the
rank below is a separate fraction-free integer elimination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Mapping, Sequence

from .errors import InstanceError
from .hypergraph import Hypergraph


def _integerise(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = math.lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss_rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    """Rank over Q by Bareiss fraction-free elimination on an integer copy."""
    a = _integerise(rows)
    m = len(a)
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, m):
            for j in range(c + 1, ncols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == m:
            break
    return r


def rigidity_matrix(h: Hypergraph, coords: Mapping[str, Sequence], d: int) -> list[list[Fraction]]:
    idx = {v: k for k, v in enumerate(h.vertices)}
    rows = []
    for e, vs in h.edges:
        if len(vs) != 2:
            raise InstanceError(f"edge {e!r} is not a bar")
        a, b = vs
        pa = [Fraction(x) for x in coords[a]]
        pb = [Fraction(x) for x in coords[b]]
        if pa == pb:
            raise InstanceError(f"bar {e!r} has coincident endpoints")
        row = [Fraction(0)] * (d * len(h.vertices))
        for j in range(d):
            row[idx[a] * d + j] = pa[j] - pb[j]
            row[idx[b] * d + j] = pb[j] - pa[j]
        rows.append(row)
    return rows


def affine_span_dim(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    base = [Fraction(x) for x in points[0]]
    diffs = [[Fraction(x) - y for x, y in zip(p, base)] for p in points[1:]]
    return bareiss_rank(diffs, len(base)) if diffs else 0


@dataclass
class RigidityOracle:
    nullity: int
    trivial: int
    rigid: bool
    affine_dim: int

    def to_json(self) -> dict:
        return {"nullity": self.nullity, "trivial": self.trivial, "rigid": self.rigid, "affine_dim": self.affine_dim}


def rigidity_nullity(h: Hypergraph, coords: Mapping[str, Sequence], d: int) -> RigidityOracle:
    rows = rigidity_matrix(h, coords, d)
    ncols = d * len(h.vertices)
    nullity = ncols - bareiss_rank(rows, ncols)
    k = max(affine_span_dim([coords[v] for v in h.vertices]), 0)
    trivial = math.comb(d + 1, 2) - math.comb(d - k, 2)
    return RigidityOracle(nullity, trivial, nullity == trivial, k)


def constrained_rigidity_nullity(
    h: Hypergraph, coords: Mapping[str, Sequence], d: int, directions: Mapping[str, Sequence[Sequence]]
) -> int:
    """Velocities in the direction space of each vertex's constraint, killed
    by the rigidity matrix. Vertices absent from ``directions`` move freely."""
    rows = rigidity_matrix(h, coords, d)
    blocks = []
    for v in h.vertices:
        dirs = directions.get(v)
        blocks.append([[Fraction(int(i == j)) for j in range(d)] for i in range(d)] if dirs is None else [[Fraction(x) for x in u] for u in dirs])
    ncols = sum(len(b) for b in blocks)
    reduced = []
    for row in rows:
        new = []
        for k, b in enumerate(blocks):
            for u in b:
                new.append(sum((row[k * d + j] * u[j] for j in range(d)), Fraction(0)))
        reduced.append(new)
    return ncols - bareiss_rank(reduced, ncols)


@dataclass
class MaxwellReport:
    edges: int
    count: int
    equality: bool
    violating_subsets: list[list[str]]

    def to_json(self) -> dict:
        return {
            "edges": self.edges,
            "d|V|-C(d+1,2)": self.count,
            "equality": self.equality,
            "violating_subsets": self.violating_subsets,
        }


def classical_maxwell(h: Hypergraph, d: int, max_edges: int = 16) -> MaxwellReport:
    """|E| against d|V| - C(d+1,2), and edge subsets F with |V(F)| >= d
    breaking |F| <= d|V(F)| - C(d+1,2); skipped above ``max_edges`` edges."""
    c = math.comb(d + 1, 2)
    members = h.edge_members()
    bad = []
    if len(h.edge_ids) <= max_edges:
        for size in range(1, len(h.edge_ids) + 1):
            for f in combinations(h.edge_ids, size):
                vs = {v for e in f for v in members[e]}
                if len(vs) >= d and size > d * len(vs) - c:
                    bad.append(list(f))
    count = d * len(h.vertices) - c
    return MaxwellReport(len(h.edge_ids), count, len(h.edge_ids) == count, bad)


# -- colourings and homomorphisms -----------------------------------------


def _pairs(h: Hypergraph) -> list[tuple[str, str]]:
    if not h.is_graph():
        raise InstanceError("expected a simple graph")
    return [tuple(vs) for _, vs in h.edges]


def proper_colourings(h: Hypergraph, n: int) -> list[dict[str, int]]:
    pairs = _pairs(h)
    out = []
    for colours in product(range(1, n + 1), repeat=len(h.vertices)):
        c = dict(zip(h.vertices, colours))
        if all(c[a] != c[b] for a, b in pairs):
            out.append(c)
    return out


def unique_colourability_bruteforce(h: Hypergraph, n: int) -> bool:
    cols = proper_colourings(h, n)
    if not cols:
        return False
    first = cols[0]
    orbit = set()
    for p in permutations(range(1, n + 1)):
        orbit.add(tuple(p[first[v] - 1] for v in h.vertices))
    return all(tuple(c[v] for v in h.vertices) in orbit for c in cols)


def homomorphism_count(gamma: Hypergraph, lam: Hypergraph) -> int:
    gp = _pairs(gamma)
    lp = set(_pairs(lam))
    lp |= {(b, a) for a, b in lp}
    total = 0
    for image in product(lam.vertices, repeat=len(gamma.vertices)):
        f = dict(zip(gamma.vertices, image))
        if all((f[a], f[b]) in lp for a, b in gp):
            total += 1
    return total
