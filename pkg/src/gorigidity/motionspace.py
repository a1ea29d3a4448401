"""Infinitesimal motions of a realisation.

The unknowns are one algebra vector per vertex, edge and incidence. For
each incidence ``i = v*e`` the differences ``x_v - x_i`` and ``x_e - x_i``
must lie in the subalgebras of ``v`` and ``e``. The solution space ``A``
contains both the diagonal copy of the whole algebra and the tuples with
every entry in its own subalgebra; the latter are exactly the kernel of the
projection ``pi``, so ``dim pi(A)`` follows by subtraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import InstanceError, InvariantError
from .hypergraph import Hypergraph, Incidence, incidence_set
from .linalg import DEFAULT_CUTOFF, SparseEchelon, format_fraction, numeric_rank, solve
from .liemodels import GroupModel, Subalgebra, intersect_algebras
from .realisation import (
    BarJoint,
    Instance,
    ProjectiveConfig,
    Realisation,
    Scene,
)


@dataclass
class MotionReport:
    dim_A: int
    dim_kernel_pi: int
    dim_piA: int
    dim_trivial: int | None
    dofs: int | None
    rigid: bool | None
    dim_algebra: int
    basis: list[dict] | None = None
    constrained_bound: int | None = None
    approximate: bool = False
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "dim_A": self.dim_A,
            "dim_kernel_pi": self.dim_kernel_pi,
            "dim_piA": self.dim_piA,
            "dim_trivial": self.dim_trivial,
            "dofs": self.dofs,
            "rigid": self.rigid,
            "dim_algebra": self.dim_algebra,
        }
        if self.constrained_bound is not None:
            out["constrained_bound"] = self.constrained_bound
        if self.approximate:
            out["approximate"] = True
        if self.basis is not None:
            out["basis"] = self.basis
        if self.notes:
            out["notes"] = list(self.notes)
        return out


class MotionSystem:
    """Column layout and constraint rows for one realisation."""

    def __init__(self, r: Realisation, constraints: Mapping[str, Subalgebra] | None = None):
        self.r = r
        self.D = r.model.dim
        self.elements = r.elements()
        self.index = {x: k for k, x in enumerate(self.elements)}
        self.ncols = len(self.elements) * self.D
        self.constraints = constraints
        nv, ne = len(r.hypergraph.vertices), len(r.hypergraph.edge_ids)
        # eliminate incidence columns first, then edges, then vertices: keeps fill-in low
        blocks = list(range(nv + ne, len(self.elements))) + list(range(nv, nv + ne)) + list(range(nv))
        self.order = [b * self.D + j for b in blocks for j in range(self.D)]

    def columns(self, x) -> range:
        k = self.index[x]
        return range(k * self.D, (k + 1) * self.D)

    def rows(self):
        r = self.r
        comp = {x: r.algebra(x).complement_rows() for x in self.elements[: len(r.hypergraph.vertices) + len(r.hypergraph.edge_ids)]}
        for inc in r.incidences:
            ci = self.columns(inc)
            for end in (inc.vertex, inc.edge):
                ce = self.columns(end)
                for c in comp[end]:
                    row = {}
                    for j, a in enumerate(c):
                        if a:
                            row[ce[j]] = a
                            row[ci[j]] = -a
                    yield row
        if self.constraints is not None:
            for v in r.hypergraph.vertices:
                cv = self.columns(v)
                for c in self.constraints[v].complement_rows():
                    yield {cv[j]: a for j, a in enumerate(c) if a}

    def echelon(self) -> SparseEchelon:
        ech = SparseEchelon(self.ncols, self.order)
        for row in self.rows():
            ech.add(row)
        return ech

    def split(self, vector: Sequence[Fraction]) -> dict:
        return {x: list(vector[k * self.D : (k + 1) * self.D]) for x, k in self.index.items()}

    def join(self, tup: Mapping) -> list[Fraction]:
        out = [Fraction(0)] * self.ncols
        for x, vals in tup.items():
            for j, c in zip(self.columns(x), vals):
                out[j] = Fraction(c)
        return out


def _basis_json(system: MotionSystem, vectors: list[list[Fraction]]) -> list[dict]:
    return [
        {str(x): [format_fraction(c) for c in vals] for x, vals in system.split(v).items()}
        for v in vectors
    ]


def trivial_dim(r: Realisation) -> int:
    common = intersect_algebras(r.model, [r.algebra(x) for x in r.elements()])
    return r.model.dim - common.dim


def kernel_dim(r: Realisation, constraints: Mapping[str, Subalgebra] | None = None) -> int:
    total = 0
    for x in r.elements():
        a = r.algebra(x)
        if constraints is not None and not isinstance(x, Incidence) and x in constraints:
            a = a & constraints[x]
        total += a.dim
    return total


def motion_space(r: Realisation, basis: bool = False) -> MotionReport:
    system = MotionSystem(r)
    ech = system.echelon()
    dim_A = system.ncols - ech.rank
    dim_ker = kernel_dim(r)
    dim_piA = dim_A - dim_ker
    dim_triv = trivial_dim(r)
    dofs = dim_piA - dim_triv
    if dofs < 0:
        raise InvariantError(f"motion space smaller than trivial motions ({dim_piA} < {dim_triv})")
    vectors = ech.nullspace_basis() if basis else None
    return MotionReport(
        dim_A=dim_A,
        dim_kernel_pi=dim_ker,
        dim_piA=dim_piA,
        dim_trivial=dim_triv,
        dofs=dofs,
        rigid=dofs == 0,
        dim_algebra=r.model.dim,
        basis=_basis_json(system, vectors) if vectors is not None else None,
        notes=list(r.notes),
    )


def motion_basis(r: Realisation) -> list[dict]:
    """Basis of ``A`` as maps from element to algebra coordinates."""
    system = MotionSystem(r)
    return [system.split(v) for v in system.echelon().nullspace_basis()]


def is_infinitesimally_rigid(r: Realisation) -> bool:
    return bool(motion_space(r).rigid)


def constrained_bound(r: Realisation, constraint_dims: Mapping[str, int]) -> int:
    """Sum of constraint-space dimensions minus the number of edges."""
    return sum(constraint_dims[v] for v in r.hypergraph.vertices) - len(r.hypergraph.edge_ids)


def constrained_motion_space(
    r: Realisation,
    constraints: Mapping[str, Subalgebra] | None = None,
    constraint_dims: Mapping[str, int] | None = None,
    basis: bool = False,
) -> MotionReport:
    """Motions with every vertex variable confined to its constraint algebra.

    Vertices without an entry are unconstrained. ``constraint_dims`` gives
    ``dim L_v`` for the reported bound; by default it is read off as
    ``dim T_v - dim(T_v & h_v)``, the dimension of the orbit of the point.
    """
    if constraints is None:
        constraints = r.constraints or {}
    unknown = sorted(set(constraints) - set(r.hypergraph.vertices))
    if unknown:
        raise InstanceError(f"constraint for unknown vertices {unknown}")
    full = {v: constraints.get(v, r.model.full()) for v in r.hypergraph.vertices}
    for v, t in full.items():
        if t.model != r.model:
            raise InstanceError(f"constraint algebra of {v!r} belongs to {t.model}, not {r.model}")
    system = MotionSystem(r, full)
    ech = system.echelon()
    dim_A = system.ncols - ech.rank
    dim_ker = kernel_dim(r, full)
    if constraint_dims is None:
        constraint_dims = {v: t.dim - (t & r.algebras[v]).dim for v, t in full.items()}
    return MotionReport(
        dim_A=dim_A,
        dim_kernel_pi=dim_ker,
        dim_piA=dim_A - dim_ker,
        dim_trivial=None,
        dofs=None,
        rigid=None,
        dim_algebra=r.model.dim,
        basis=_basis_json(system, ech.nullspace_basis()) if basis else None,
        constrained_bound=constrained_bound(r, constraint_dims),
        notes=list(r.notes),
    )


def analyze(r: Realisation, basis: bool = False) -> MotionReport:
    """Dispatch on whether the realisation carries vertex constraints."""
    if r.constraints is not None:
        return constrained_motion_space(r, r.constraints, basis=basis)
    return motion_space(r, basis=basis)


def is_in_A(r: Realisation, tup: Mapping) -> bool:
    """Direct substitution of a tuple (element -> coordinates) into the constraints."""
    for inc in r.incidences:
        xi = tup[inc]
        for end in (inc.vertex, inc.edge):
            diff = [a - b for a, b in zip(tup[end], xi)]
            if not r.algebra(end).contains(diff):
                return False
    return True


def is_trivial_motion(r: Realisation, tup: Mapping) -> bool:
    """Whether some ``u`` in the algebra has ``u - tup[x]`` in ``h_x`` for all x.

    Unknowns are ``u`` plus one coefficient vector per element; infeasible
    systems certify a motion outside the trivial ones modulo ``ker pi``.
    """
    D = r.model.dim
    elements = r.elements()
    # u + sum_k c_k b_k(x) ... rewrite as u - B_x c_x = tup[x]
    offsets = []
    ncols = D
    for x in elements:
        offsets.append(ncols)
        ncols += r.algebra(x).dim
    rows, rhs = [], []
    for x, off in zip(elements, offsets):
        basis = r.algebra(x).space.basis
        for j in range(D):
            row = [Fraction(0)] * ncols
            row[j] = Fraction(1)
            for k, b in enumerate(basis):
                row[off + k] = -b[j]
            rows.append(row)
            rhs.append(Fraction(tup[x][j]))
    return solve(rows, rhs, ncols) is not None


# -- floating-point path --------------------------------------------------


def _float_perp(w: np.ndarray, m: int, cutoff: float) -> np.ndarray:
    if w.size == 0:
        return np.eye(m)
    _, s, vt = np.linalg.svd(w.reshape(-1, m))
    r = int(np.sum(s > cutoff * s[0])) if s.size and s[0] > 0 else 0
    return vt[r:]


def _float_complement(model: GroupModel, w: Sequence[Sequence[float]], cutoff: float) -> np.ndarray:
    """Rows spanning the complement of the stabiliser of span(w), in model coordinates."""
    from .liemodels import preserve_conditions

    m = model.size
    wa = np.asarray(w, dtype=float).reshape(-1, m)
    perp = _float_perp(wa, m, cutoff)
    if perp.shape[0] == 0 or perp.shape[0] == m:
        return np.zeros((0, model.dim))
    rows = np.asarray(preserve_conditions(model, wa.tolist(), perp.tolist()), dtype=float)
    if rows.size == 0:
        return np.zeros((0, model.dim))
    _, s, vt = np.linalg.svd(rows)
    r = int(np.sum(s > cutoff * s[0])) if s.size and s[0] > 0 else 0
    return vt[:r]


@dataclass(frozen=True)
class NumericInstance:
    """Float data for the approximate path.

    ``subspaces`` holds the subspace ``W_x`` (rows) whose stabiliser is the
    algebra of ``x``; edges listed in ``edge_members`` instead take the
    intersection over those vertices.
    """

    hypergraph: Hypergraph
    model: GroupModel
    subspaces: Mapping[str, list[list[float]]]
    edge_members: Mapping[str, list[str]]


def numeric_instance(inst: Instance) -> NumericInstance:
    h = inst.hypergraph
    if isinstance(inst, BarJoint):
        w = {v: [[float(c) for c in inst.coords[v]] + [1.0]] for v in h.vertices}
        return NumericInstance(h, inst.model, w, {e: list(vs) for e, vs in h.edges})
    if isinstance(inst, ProjectiveConfig):
        w = {v: [[float(c) for c in b] for b in inst.vertex_subspaces[v].basis] for v in h.vertices}
        w.update({e: [[float(c) for c in b] for b in inst.edge_subspaces[e].basis] for e in h.edge_ids})
        return NumericInstance(h, inst.model, w, {})
    if isinstance(inst, Scene):
        w = {v: [[float(c) for c in inst.points[v].coords]] for v in h.vertices}
        return NumericInstance(h, inst.model, w, {e: list(vs) for e, vs in h.edges})
    raise InstanceError(f"approximate analysis supports bar_joint, projective and scene instances, not {inst.kind}")


def approximate_motion_space(inst: Instance | NumericInstance, cutoff: float = DEFAULT_CUTOFF) -> MotionReport:
    """Same bookkeeping as :func:`motion_space` with SVD ranks in floating point."""
    if not isinstance(inst, NumericInstance):
        inst = numeric_instance(inst)
    h, model = inst.hypergraph, inst.model
    w, edge_members = inst.subspaces, inst.edge_members
    D = model.dim
    comp = {x: _float_complement(model, wx, cutoff) for x, wx in w.items()}
    for e, vs in edge_members.items():
        comp[e] = np.vstack([comp[v] for v in vs] + [np.zeros((0, D))])
    incs = incidence_set(h)
    for inc in incs:
        comp[inc] = np.vstack([comp[inc.vertex], comp[inc.edge]])
    elements = list(h.vertices) + list(h.edge_ids) + incs
    index = {x: k for k, x in enumerate(elements)}
    blocks = []
    for inc in incs:
        for end in (inc.vertex, inc.edge):
            c = comp[end]
            if c.shape[0] == 0:
                continue
            block = np.zeros((c.shape[0], len(elements) * D))
            a, b = index[end] * D, index[inc] * D
            block[:, a : a + D] = c
            block[:, b : b + D] = -c
            blocks.append(block)
    ncols = len(elements) * D
    rk = numeric_rank(np.vstack(blocks), cutoff) if blocks else 0
    dim_A = ncols - rk
    dim_ker = sum(D - numeric_rank(comp[x], cutoff) if comp[x].size else D for x in elements)
    allc = np.vstack([comp[x] for x in elements] + [np.zeros((0, D))])
    dim_triv = numeric_rank(allc, cutoff) if allc.size else 0
    dim_piA = dim_A - dim_ker
    dofs = dim_piA - dim_triv
    return MotionReport(
        dim_A=dim_A,
        dim_kernel_pi=dim_ker,
        dim_piA=dim_piA,
        dim_trivial=dim_triv,
        dofs=dofs,
        rigid=dofs == 0,
        dim_algebra=D,
        approximate=True,
        notes=[f"floating-point ranks with relative cutoff {cutoff:g}"],
    )
