"""Matrix models of the groups and their stabiliser subalgebras.

Every model is a Lie algebra of ``m x m`` matrices:

* ``euclidean(d)``: ``[[S, b], [0, 0]]`` with ``S`` skew, size ``d+1``.
* ``projective(n)``: traceless ``n x n`` matrices (a concrete copy of pgl(n)).
* ``scenes(d)``: matrices that vanish outside their last row, size ``d+1``.
* ``dilation(d)``: ``[[mu*I, b], [0, 0]]``, size ``d+1``.

Algebra elements are handled in coordinates with respect to the model's
canonical basis (the RREF of the vectorised spanning matrices); the
coordinates of a matrix are then just its entries at the pivot positions.

All stabilisers reduce to one computation: the elements ``X`` with
``X W`` contained in ``W`` for a linear subspace ``W`` of R^m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import InstanceError, InvariantError
from .linalg import Subspace, nullspace, orthogonal_complement_rows, rank, to_fraction

Matrix = tuple[tuple[Fraction, ...], ...]

KINDS = ("euclidean", "projective", "scenes", "dilation")


class IncompatibleObject(InstanceError):
    pass


class DegenerateObject(InstanceError):
    pass


# -- small matrix helpers -------------------------------------------------


def zeros(m: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * m for _ in range(m)]


def freeze(a: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in r) for r in a)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(r, c) if x and y), Fraction(0)) for c in bt) for r in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(r, v)) for r in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in zip(*a))


def commutator(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    ab, ba = matmul(a, b), matmul(b, a)
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(ab, ba))


def vec(a: Sequence[Sequence]) -> list:
    return [x for r in a for x in r]


def unvec(v: Sequence, m: int) -> Matrix:
    return tuple(tuple(Fraction(v[i * m + j]) for j in range(m)) for i in range(m))


# -- group models ---------------------------------------------------------


@dataclass(frozen=True)
class GroupModel:
    kind: str
    param: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InstanceError(f"unknown group kind {self.kind!r}")
        low = 2 if self.kind == "projective" else 1
        if self.param < low:
            raise InstanceError(f"{self.kind} needs parameter >= {low}")

    @classmethod
    def euclidean(cls, d: int) -> "GroupModel":
        return cls("euclidean", d)

    @classmethod
    def projective(cls, n: int) -> "GroupModel":
        return cls("projective", n)

    @classmethod
    def scenes(cls, d: int) -> "GroupModel":
        return cls("scenes", d)

    @classmethod
    def dilation(cls, d: int) -> "GroupModel":
        return cls("dilation", d)

    @property
    def size(self) -> int:
        return self.param if self.kind == "projective" else self.param + 1

    @property
    def expected_dim(self) -> int:
        p = self.param
        return {
            "euclidean": comb(p + 1, 2),
            "projective": p * p - 1,
            "scenes": p + 1,
            "dilation": p + 1,
        }[self.kind]

    def _spanning_matrices(self) -> list[list[list[Fraction]]]:
        m, p = self.size, self.param
        out = []
        if self.kind == "euclidean":
            for i, j in combinations(range(p), 2):
                x = zeros(m)
                x[i][j], x[j][i] = Fraction(-1), Fraction(1)
                out.append(x)
            for i in range(p):
                x = zeros(m)
                x[i][p] = Fraction(1)
                out.append(x)
        elif self.kind == "projective":
            for i in range(m):
                for j in range(m):
                    if i != j:
                        x = zeros(m)
                        x[i][j] = Fraction(1)
                        out.append(x)
            for i in range(m - 1):
                x = zeros(m)
                x[i][i], x[m - 1][m - 1] = Fraction(1), Fraction(-1)
                out.append(x)
        elif self.kind == "scenes":
            for j in range(m):
                x = zeros(m)
                x[m - 1][j] = Fraction(1)
                out.append(x)
        else:
            x = zeros(m)
            for i in range(p):
                x[i][i] = Fraction(1)
            out.append(x)
            for i in range(p):
                x = zeros(m)
                x[i][p] = Fraction(1)
                out.append(x)
        return out

    @cached_property
    def algebra(self) -> Subspace:
        """The full algebra as a subspace of vectorised ``m x m`` matrices."""
        space = Subspace.span([vec(x) for x in self._spanning_matrices()], self.size**2)
        if space.dim != self.expected_dim:
            raise InvariantError(f"{self} has algebra dimension {space.dim}, expected {self.expected_dim}")
        return space

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def basis(self) -> tuple[Matrix, ...]:
        return tuple(unvec(row, self.size) for row in self.algebra.basis)

    @cached_property
    def _pivots(self) -> list[int]:
        return self.algebra.pivots

    def coords(self, x: Sequence[Sequence]) -> list[Fraction]:
        v = [Fraction(t) for t in vec(x)]
        if len(v) != self.size**2:
            raise InstanceError(f"matrix has wrong size for {self}")
        if not self.algebra.contains(v):
            raise InstanceError(f"matrix is not in the Lie algebra of {self}")
        return [v[p] for p in self._pivots]

    def matrix(self, c: Sequence) -> Matrix:
        m = self.size
        acc = [[Fraction(0)] * m for _ in range(m)]
        for ck, b in zip(c, self.basis):
            if ck:
                for i in range(m):
                    for j in range(m):
                        if b[i][j]:
                            acc[i][j] += ck * b[i][j]
        return freeze(acc)

    def full(self) -> "Subalgebra":
        return Subalgebra(self, Subspace.full(self.dim))

    def zero(self) -> "Subalgebra":
        return Subalgebra(self, Subspace.zero(self.dim))

    def span(self, matrices: Sequence[Sequence[Sequence]]) -> "Subalgebra":
        return Subalgebra(self, Subspace.span([self.coords(x) for x in matrices], self.dim))

    def to_json(self) -> dict:
        key = "n" if self.kind == "projective" else "d"
        return {"kind": self.kind, key: self.param}

    def __str__(self) -> str:
        return f"{self.kind}({self.param})"


@dataclass(frozen=True)
class Subalgebra:
    """Subspace of a model's algebra, in the model's coordinates."""

    model: GroupModel
    space: Subspace

    def __post_init__(self):
        if self.space.n != self.model.dim:
            raise InvariantError("subalgebra coordinates do not match the model dimension")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def codim(self) -> int:
        return self.space.codim

    def matrices(self) -> list[Matrix]:
        return [self.model.matrix(b) for b in self.space.basis]

    def vectorised(self) -> list[list[Fraction]]:
        return [vec(x) for x in self.matrices()]

    def contains(self, coords: Sequence) -> bool:
        return self.space.contains(coords)

    def contains_matrix(self, x: Sequence[Sequence]) -> bool:
        return self.space.contains(self.model.coords(x))

    def issubalgebra(self, other: "Subalgebra") -> bool:
        _same_model(self, other)
        return self.space.issubspace(other.space)

    def is_bracket_closed(self) -> bool:
        mats = self.matrices()
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                if not self.space.contains(self.model.coords(commutator(mats[i], mats[j]))):
                    return False
        return True

    def complement_rows(self) -> list[list[Fraction]]:
        return orthogonal_complement_rows(self.space)

    def __and__(self, other: "Subalgebra") -> "Subalgebra":
        return incidence_algebra(self.model, self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subalgebra) and self.model == other.model and self.space == other.space

    def __hash__(self) -> int:
        return hash((self.model, self.space))


def _same_model(a: Subalgebra, b: Subalgebra) -> None:
    if a.model != b.model:
        raise InstanceError(f"subalgebras live in different models ({a.model} vs {b.model})")


def incidence_algebra(model: GroupModel, a: Subalgebra, b: Subalgebra) -> Subalgebra:
    """Intersection of two subalgebras of the same model."""
    if a.model != model or b.model != model:
        raise InstanceError("subalgebra does not belong to the requested model")
    return Subalgebra(model, a.space & b.space)


def intersect_algebras(model: GroupModel, algebras: Sequence[Subalgebra]) -> Subalgebra:
    from .linalg import intersect_all

    for a in algebras:
        if a.model != model:
            raise InstanceError("subalgebra does not belong to the requested model")
    return Subalgebra(model, intersect_all([a.space for a in algebras], model.dim))


def sum_dim(algebras: Sequence[Subalgebra]) -> int:
    """Dimension of the linear span of several subalgebras."""
    if not algebras:
        return 0
    model = algebras[0].model
    vecs = [b for a in algebras for b in a.space.basis]
    return rank(vecs, model.dim) if vecs else 0


# -- geometric objects ----------------------------------------------------


def _vector(values, what: str) -> tuple[Fraction, ...]:
    try:
        return tuple(to_fraction(x) for x in values)
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"{what}: {exc}") from None


@dataclass(frozen=True)
class EuclideanPoint:
    coords: tuple[Fraction, ...]

    def __init__(self, coords):
        object.__setattr__(self, "coords", _vector(coords, "point"))


@dataclass(frozen=True)
class PointSet:
    points: tuple[tuple[Fraction, ...], ...]

    def __init__(self, points):
        object.__setattr__(self, "points", tuple(_vector(p, "point") for p in points))


@dataclass(frozen=True)
class ProjectiveSubspace:
    """Linear subspace of R^n given by basis vectors (a (k-1)-flat of RP^(n-1))."""

    basis: tuple[tuple[Fraction, ...], ...]

    def __init__(self, basis):
        object.__setattr__(self, "basis", tuple(_vector(b, "subspace basis") for b in basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def space(self, n: int) -> Subspace:
        return Subspace.span(self.basis, n)


@dataclass(frozen=True)
class ScenePoint:
    coords: tuple[Fraction, ...]

    def __init__(self, coords):
        object.__setattr__(self, "coords", _vector(coords, "scene point"))


@dataclass(frozen=True)
class Hyperplane:
    """``normal . x = offset`` in R^d."""

    normal: tuple[Fraction, ...]
    offset: Fraction

    def __init__(self, normal, offset):
        object.__setattr__(self, "normal", _vector(normal, "hyperplane normal"))
        object.__setattr__(self, "offset", _vector([offset], "hyperplane offset")[0])

    def homogeneous(self) -> tuple[Fraction, ...]:
        return self.normal + (-self.offset,)

    def contains(self, p: Sequence) -> bool:
        return sum(a * x for a, x in zip(self.normal, p)) == self.offset


@dataclass(frozen=True)
class AffineSubspace:
    base: tuple[Fraction, ...]
    directions: tuple[tuple[Fraction, ...], ...]

    def __init__(self, base, directions=()):
        object.__setattr__(self, "base", _vector(base, "affine base point"))
        object.__setattr__(self, "directions", tuple(_vector(d, "affine direction") for d in directions))

    @property
    def dim(self) -> int:
        return len(self.directions)

    def contains(self, p: Sequence) -> bool:
        d = len(self.base)
        diff = [Fraction(x) - b for x, b in zip(p, self.base)]
        return Subspace.span(self.directions, d).contains(diff) if self.directions else not any(diff)


GeometricObject = EuclideanPoint | PointSet | ProjectiveSubspace | ScenePoint | Hyperplane | AffineSubspace


def object_from_json(doc: dict) -> GeometricObject:
    """Decode one geometric object.

    Examples of each encoding::

        {"type": "point", "coords": [0, "1/2"]}
        {"type": "point_set", "points": [[0, 0], [1, 0]]}
        {"type": "subspace", "basis": [[1, 0, 0], [0, 1, 0]]}
        {"type": "scene_point", "coords": [1, 2, 3]}
        {"type": "hyperplane", "normal": [1, 0], "offset": 2}
        {"type": "affine", "base": [0, 0], "directions": [[1, 0]]}
    """
    t = doc.get("type")
    if t == "point":
        return EuclideanPoint(doc["coords"])
    if t == "point_set":
        return PointSet(doc["points"])
    if t == "subspace":
        return ProjectiveSubspace(doc["basis"])
    if t == "scene_point":
        return ScenePoint(doc["coords"])
    if t == "hyperplane":
        return Hyperplane(doc["normal"], doc["offset"])
    if t == "affine":
        return AffineSubspace(doc["base"], doc.get("directions", []))
    raise InstanceError(f"unknown geometric object type {t!r}")


# -- stabilisers ----------------------------------------------------------


def preserve_conditions(model: GroupModel, w: Sequence[Sequence], perp: Sequence[Sequence]) -> list[list]:
    """Linear conditions on coordinates for ``X w_j`` to lie in ``W``.

    ``perp`` spans the orthogonal complement of ``W``. Entries may be any
    numeric type, which lets the floating path reuse this.
    """
    images = [[matvec(b, wj) for wj in w] for b in model.basis]
    rows = []
    for j in range(len(w)):
        for p in perp:
            rows.append([sum(pi * yi for pi, yi in zip(p, images[k][j])) for k in range(model.dim)])
    return rows


def subspace_stabiliser(model: GroupModel, w: Sequence[Sequence]) -> Subalgebra:
    """Elements ``X`` of the model's algebra with ``X W`` inside ``W``."""
    m = model.size
    space = Subspace.span(w, m)
    if space.dim != len(w):
        raise DegenerateObject("subspace basis vectors are linearly dependent")
    if space.dim in (0, m):
        return model.full()
    rows = preserve_conditions(model, space.basis, orthogonal_complement_rows(space))
    return Subalgebra(model, nullspace(rows, model.dim))


def _homogeneous_point(p: Sequence, d: int) -> list[Fraction]:
    if len(p) != d:
        raise IncompatibleObject(f"point has {len(p)} coordinates, expected {d}")
    return list(p) + [Fraction(1)]


def stabiliser(model: GroupModel, obj: GeometricObject) -> Subalgebra:
    """Lie algebra of the stabiliser of ``obj`` in ``model``."""
    d = model.param
    kind = model.kind
    if kind == "euclidean":
        if isinstance(obj, EuclideanPoint):
            return subspace_stabiliser(model, [_homogeneous_point(obj.coords, d)])
        if isinstance(obj, PointSet):
            if not obj.points:
                return model.full()
            return intersect_algebras(model, [stabiliser(model, EuclideanPoint(p)) for p in obj.points])
        if isinstance(obj, AffineSubspace):
            return tangency_algebra_affine(model, obj)
    elif kind == "projective":
        if isinstance(obj, ProjectiveSubspace):
            for b in obj.basis:
                if len(b) != model.size:
                    raise IncompatibleObject(f"subspace vector has length {len(b)}, expected {model.size}")
            if not obj.basis:
                raise DegenerateObject("empty projective subspace")
            return subspace_stabiliser(model, obj.basis)
    elif kind == "scenes":
        if isinstance(obj, ScenePoint):
            x = obj.coords
            if len(x) != d + 1:
                raise IncompatibleObject(f"scene point needs {d + 1} homogeneous coordinates")
            if not any(x):
                raise DegenerateObject("zero homogeneous vector")
            if not any(x[:d]):
                raise DegenerateObject("scene point coincides with the projection centre Z")
            return subspace_stabiliser(model, [x])
    elif kind == "dilation":
        if isinstance(obj, Hyperplane):
            if len(obj.normal) != d:
                raise IncompatibleObject(f"hyperplane normal needs {d} entries")
            if not any(obj.normal):
                raise DegenerateObject("hyperplane normal is zero")
            # homogeneous points y on the hyperplane: (normal, -offset) . y = 0
            on_plane = nullspace([obj.homogeneous()], d + 1)
            return subspace_stabiliser(model, on_plane.basis)
        if isinstance(obj, EuclideanPoint):
            return subspace_stabiliser(model, [_homogeneous_point(obj.coords, d)])
    raise IncompatibleObject(f"{type(obj).__name__} has no stabiliser in {model}")


def tangency_algebra_affine(model: GroupModel, flat: AffineSubspace) -> Subalgebra:
    """Infinitesimal Euclidean motions mapping the affine subspace into itself."""
    if model.kind != "euclidean":
        raise IncompatibleObject("affine constraint spaces live in a euclidean model")
    d = model.param
    if len(flat.base) != d or any(len(v) != d for v in flat.directions):
        raise IncompatibleObject(f"affine subspace must live in R^{d}")
    w = [_homogeneous_point(flat.base, d)] + [list(v) + [Fraction(0)] for v in flat.directions]
    if Subspace.span(w, d + 1).dim != len(w):
        raise DegenerateObject("affine direction vectors are linearly dependent")
    return subspace_stabiliser(model, w)


# -- centres of rotation in the plane -------------------------------------

E2 = GroupModel.euclidean(2)


def _normalise_projective(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    last = next(x for x in reversed(p) if x)
    return tuple(Fraction(x) / last for x in p)


def centre_of_rotation(w: Sequence) -> tuple[Fraction, ...]:
    """Projective point attached to a nonzero element of e(2).

    ``w`` is a 3x3 matrix or a coordinate vector. A rotation returns its
    fixed point ``[x:y:1]``; a translation by ``(a, b)`` returns ``[-b:a:0]``.
    """
    x = E2.matrix(w) if len(w) == E2.dim and not isinstance(w[0], (tuple, list)) else freeze(w)
    E2.coords(x)
    rot, b1, b2 = x[1][0], x[0][2], x[1][2]
    if not (rot or b1 or b2):
        raise InstanceError("the zero element has no centre of rotation")
    return _normalise_projective((-b2, b1, rot))


def centre_algebra(point: Sequence) -> Subalgebra:
    """The one-dimensional subalgebra of e(2) attached to a projective point."""
    x, y, z = (to_fraction(t) if not isinstance(t, Fraction) else t for t in point)
    if not (x or y or z):
        raise DegenerateObject("zero homogeneous vector")
    m = ((0, -z, y), (z, 0, -x), (0, 0, 0))
    return E2.span([m])


def determinant3(a, b, c) -> Fraction:
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def centres_collinear(x: Sequence, y: Sequence, z: Sequence) -> bool:
    """Collinearity of three points of RP^2, cross-checked against the
    dimension of the sum of their attached subalgebras."""
    pts = [tuple(Fraction(t) for t in p) for p in (x, y, z)]
    flat = determinant3(*pts) == 0
    span_dim = sum_dim([centre_algebra(p) for p in pts])
    if flat != (span_dim <= 2):
        raise InvariantError(f"determinant and algebra-sum tests disagree for {pts}")
    return flat
