"""Maxwell-type counts, the subset sparsity condition, and flex certificates
from disconnecting vertex sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InstanceError, InvariantError
from .hypergraph import Incidence, split_components
from .linalg import format_fraction
from .liemodels import intersect_algebras
from .motionspace import is_in_A, is_trivial_motion
from .realisation import Realisation

DEFAULT_FREE_CAP = 20


@dataclass(frozen=True)
class SparsityProfile:
    k1: int
    k2: int
    lam: int

    def to_json(self) -> dict:
        return {"k1": self.k1, "k2": self.k2, "lambda": self.lam}


@dataclass
class BoundReport:
    bound: int
    profile: SparsityProfile | None
    closed_form: int | None
    constrained_bound: int | None = None

    def to_json(self) -> dict:
        out = {
            "maxwell_bound": self.bound,
            "profile": self.profile.to_json() if self.profile else None,
            "closed_form": self.closed_form,
        }
        if self.constrained_bound is not None:
            out["constrained_bound"] = self.constrained_bound
        return out


def sparsity_profile(r: Realisation) -> SparsityProfile | None:
    """Constant codimensions, or None when they vary or a class is empty."""
    h = r.hypergraph
    if not h.vertices or not h.edge_ids or not r.incidences:
        return None
    kv = {r.algebras[v].codim for v in h.vertices}
    ke = {r.algebras[e].codim for e in h.edge_ids}
    ki = {r.incidence_algebras[i].codim for i in r.incidences}
    if len(kv) != 1 or len(ke) != 1 or len(ki) != 1:
        return None
    k1, k2, ki_ = kv.pop(), ke.pop(), ki.pop()
    return SparsityProfile(k1, k2, k1 + k2 - ki_)


def maxwell_bound(r: Realisation) -> BoundReport:
    h = r.hypergraph
    total = sum(r.algebras[x].codim for x in h.vertices + h.edge_ids)
    for inc in r.incidences:
        total += r.incidence_algebras[inc].codim - r.algebras[inc.vertex].codim - r.algebras[inc.edge].codim
    profile = sparsity_profile(r)
    closed = None
    if profile is not None:
        closed = profile.k1 * len(h.vertices) + profile.k2 * len(h.edge_ids) - profile.lam * len(r.incidences)
        if closed != total:
            raise InvariantError(f"profile form {closed} disagrees with the direct count {total}")
    cb = None
    if r.constraints is not None:
        dims = {v: t.dim - (t & r.algebras[v]).dim for v, t in r.constraints.items()}
        cb = sum(dims[v] for v in h.vertices) - len(h.edge_ids)
    return BoundReport(total, profile, closed, cb)


# -- sparsity -------------------------------------------------------------


@dataclass
class SparsityVerdict:
    status: str  # pass | violation | precondition fails | not applicable
    subset: list[str]
    lhs: int | None = None
    rhs: int | None = None

    def to_json(self) -> dict:
        return {"status": self.status, "subset": self.subset, "lhs": self.lhs, "rhs": self.rhs}


def _global_equality(r: Realisation, p: SparsityProfile) -> tuple[int, int]:
    h = r.hypergraph
    return p.lam * len(r.incidences), p.k1 * len(h.vertices) + p.k2 * len(h.edge_ids) - r.model.dim


def _require_profile(r: Realisation) -> SparsityProfile:
    p = sparsity_profile(r)
    if p is None:
        raise InstanceError("codimensions are not constant; no sparsity profile")
    return p


def _sides(r: Realisation, p: SparsityProfile, subset: Sequence[Incidence]) -> tuple[int, int]:
    vs = {i.vertex for i in subset}
    es = {i.edge for i in subset}
    return p.lam * len(subset), p.k1 * len(vs) + p.k2 * len(es) - r.model.dim


def _precondition(r: Realisation, subset: Sequence[Incidence]) -> bool:
    if not subset:
        return False
    return intersect_algebras(r.model, [r.incidence_algebras[i] for i in subset]).dim == 0


def sparsity_check(r: Realisation, subset: Iterable[Incidence]) -> SparsityVerdict:
    p = _require_profile(r)
    subset = list(subset)
    names = [str(i) for i in subset]
    for i in subset:
        if i not in r.incidence_algebras:
            raise InstanceError(f"{i} is not an incidence")
    glhs, grhs = _global_equality(r, p)
    if glhs != grhs:
        return SparsityVerdict("not applicable", names, glhs, grhs)
    if not _precondition(r, subset):
        return SparsityVerdict("precondition fails", names)
    lhs, rhs = _sides(r, p, subset)
    return SparsityVerdict("pass" if lhs <= rhs else "violation", names, lhs, rhs)


@dataclass
class ScanReport:
    applicable: bool
    profile: SparsityProfile
    global_lhs: int
    global_rhs: int
    modes: list[str]
    checked: int = 0
    precondition_skipped: int = 0
    violations: list[SparsityVerdict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "applicable": self.applicable,
            "profile": self.profile.to_json(),
            "global": {"lhs": self.global_lhs, "rhs": self.global_rhs},
            "modes": self.modes,
            "checked": self.checked,
            "precondition_skipped": self.precondition_skipped,
            "violations": [v.to_json() for v in self.violations],
        }


def _vertex_induced_masks(r: Realisation) -> list[int]:
    h = r.hypergraph
    incs = r.incidences
    members = h.edge_members()
    out = []
    for mask_v in range(1, 1 << len(h.vertices)):
        chosen = {v for k, v in enumerate(h.vertices) if mask_v >> k & 1}
        m = 0
        for k, inc in enumerate(incs):
            if set(members[inc.edge]) <= chosen:
                m |= 1 << k
        if m:
            out.append(m)
    return sorted(set(out))


def _all_masks(n: int) -> Iterable[int]:
    # the empty subset is counted; it always fails the precondition
    return range(1 << n)


def _small_masks(n: int, max_size: int) -> Iterable[int]:
    for size in range(1, min(max_size, n) + 1):
        for combo in combinations(range(n), size):
            yield sum(1 << k for k in combo)


def sparsity_scan(
    r: Realisation,
    vertex_induced_only: bool = False,
    max_subset: int | None = None,
    free_cap: int = DEFAULT_FREE_CAP,
) -> ScanReport:
    """Look for subsets of incidences violating the sparsity inequality.

    Vertex-induced subsets are always scanned. Unless restricted to those,
    every subset is scanned too when there are at most ``free_cap``
    incidences; otherwise subsets up to ``max_subset`` elements, if given.
    """
    p = _require_profile(r)
    glhs, grhs = _global_equality(r, p)
    report = ScanReport(glhs == grhs, p, glhs, grhs, ["vertex-induced"])
    if not report.applicable:
        return report
    incs = r.incidences
    n = len(incs)
    h = r.hypergraph
    vidx = {v: k for k, v in enumerate(h.vertices)}
    eidx = {e: k for k, e in enumerate(h.edge_ids)}
    vbit = [1 << vidx[i.vertex] for i in incs]
    ebit = [1 << eidx[i.edge] for i in incs]

    seen_masks: set[int] = set(_vertex_induced_masks(r))
    streams: list[Iterable[int]] = [sorted(seen_masks)]
    if not vertex_induced_only:
        if n <= free_cap:
            streams = [_all_masks(n)]
            report.modes.append("all subsets")
        elif max_subset is not None:
            streams.append(_small_masks(n, max_subset))
            report.modes.append(f"subsets of size <= {max_subset}")
    done: set[int] = set()
    dim = r.model.dim
    for stream in streams:
        for mask in stream:
            if mask in done:
                continue
            if len(streams) > 1:
                done.add(mask)
            report.checked += 1
            vm = em = 0
            size = 0
            m = mask
            while m:
                low = m & -m
                k = low.bit_length() - 1
                vm |= vbit[k]
                em |= ebit[k]
                size += 1
                m ^= low
            lhs = p.lam * size
            rhs = p.k1 * vm.bit_count() + p.k2 * em.bit_count() - dim
            if lhs <= rhs:
                continue
            subset = [incs[k] for k in range(n) if mask >> k & 1]
            if not _precondition(r, subset):
                report.precondition_skipped += 1
                continue
            report.violations.append(SparsityVerdict("violation", [str(i) for i in subset], lhs, rhs))
    return report


# -- flex certificates ----------------------------------------------------


@dataclass
class BananaResult:
    status: str  # certificate | refused | inconclusive
    cut: list[str]
    reason: str | None = None
    witness_dim: int | None = None
    component: list[str] | None = None
    witness: list | None = None
    witness_matrix: list | None = None
    motion: dict | None = None

    def to_json(self) -> dict:
        out = {"status": self.status, "cut": self.cut}
        for key in ("reason", "witness_dim", "component", "witness", "witness_matrix", "motion"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out


def banana_tuple(r: Realisation, component: Sequence[str], w: Sequence) -> dict:
    """``w`` on the component's vertices, on edges meeting it and on their
    incidences; zero everywhere else."""
    zero = [0] * r.model.dim
    comp = set(component)
    tup: dict = {x: list(zero) for x in r.elements()}
    for v in comp:
        tup[v] = list(w)
    for e, vs in r.hypergraph.edges:
        if comp & set(vs):
            tup[e] = list(w)
            for v in vs:
                tup[Incidence(v, e)] = list(w)
    return tup


def banana_flex_test(r: Realisation, cut: Iterable[str]) -> BananaResult:
    cut = list(dict.fromkeys(cut))
    if not cut:
        return BananaResult("refused", cut, reason="empty cut")
    split = split_components(r.hypergraph, cut)
    if not split.disconnecting:
        return BananaResult("refused", cut, reason="not disconnecting")
    common = intersect_algebras(r.model, [r.algebras[v] for v in cut])
    if common.dim == 0:
        return BananaResult("refused", cut, reason="no certificate: stabilisers of the cut intersect trivially", witness_dim=0)
    for comp in split.components:
        for w in common.space.basis:
            tup = banana_tuple(r, comp, w)
            if not is_in_A(r, tup):
                raise InvariantError("assembled flex tuple fails the motion constraints")
            if is_trivial_motion(r, tup):
                continue
            return BananaResult(
                "certificate",
                cut,
                witness_dim=common.dim,
                component=list(comp),
                witness=[format_fraction(c) for c in w],
                witness_matrix=[[format_fraction(c) for c in row] for row in r.model.matrix(w)],
                motion={str(x): [format_fraction(c) for c in v] for x, v in tup.items() if any(v)},
            )
    return BananaResult(
        "inconclusive",
        cut,
        reason="every candidate tuple is a trivial motion modulo the stabilisers",
        witness_dim=common.dim,
    )
