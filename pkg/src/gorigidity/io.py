"""Instance files: schema validation, decoding and encoding."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cache
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import jsonschema

from .errors import InstanceError
from .finite import FiniteRealisation, from_colouring
from .hypergraph import Hypergraph, incidence_set
from .linalg import Subspace, format_fraction, to_fraction
from .liemodels import (
    AffineSubspace,
    GroupModel,
    Hyperplane,
    ProjectiveSubspace,
    ScenePoint,
    Subalgebra,
)
from .motionspace import NumericInstance
from .realisation import (
    BarJoint,
    Constrained,
    Custom,
    Instance,
    Parallel,
    ProjectiveConfig,
    Scene,
)

# realisation kind -> group kind it lives in
GROUP_OF_KIND = {
    "bar_joint": "euclidean",
    "constrained": "euclidean",
    "projective": "projective",
    "scene": "scenes",
    "parallel": "dilation",
}


@cache
def schema() -> dict:
    text = resources.files(__package__).joinpath("instance.schema.json").read_text()
    return json.loads(text)


def validate(doc: Any) -> None:
    try:
        jsonschema.validate(doc, schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InstanceError(f"schema violation at {where}: {exc.message}") from None


def read_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path} is not valid JSON: {exc}") from None


def _q(x):
    try:
        return to_fraction(x)
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"{exc}; pass --approximate to read floats") from None


def _vec(v) -> tuple:
    return tuple(_q(x) for x in v)


def _model(doc: Mapping) -> GroupModel:
    kind = doc["kind"]
    return GroupModel(kind, doc["n"] if kind == "projective" else doc["d"])


def is_finite_document(doc: Mapping) -> bool:
    return "kind" in doc and doc.get("kind") in ("colouring", "tensor")


def decode(doc: Mapping) -> Instance:
    """Exact instance from a validated Lie document."""
    validate(doc)
    if is_finite_document(doc):
        raise InstanceError("this is a finite-group instance; use the finite subcommand")
    model = _model(doc["group"])
    h = Hypergraph.from_json(doc["hypergraph"])
    real = doc["realisation"]
    kind = real["kind"]
    expected = GROUP_OF_KIND.get(kind)
    if expected is not None and expected != model.kind:
        raise InstanceError(f"{kind} realisations live in the {expected} model, not {model.kind}")
    if kind == "bar_joint":
        return BarJoint(h, model.param, {v: _vec(p) for v, p in real["coords"].items()})
    if kind == "constrained":
        cons = {v: AffineSubspace(c["base"], c.get("directions", [])) for v, c in real["constraints"].items()}
        return Constrained(h, model.param, {v: _vec(p) for v, p in real["coords"].items()}, cons)
    if kind == "projective":
        return ProjectiveConfig(
            h,
            model.param,
            real["k"],
            real["l"],
            {v: ProjectiveSubspace(b) for v, b in real["vertex_subspaces"].items()},
            {e: ProjectiveSubspace(b) for e, b in real["edge_subspaces"].items()},
        )
    if kind == "scene":
        return Scene(h, model.param, {v: ScenePoint(p) for v, p in real["points"].items()})
    if kind == "parallel":
        return Parallel(
            h,
            model.param,
            {v: _vec(p) for v, p in real["points"].items()},
            {e: Hyperplane(p["normal"], p["offset"]) for e, p in real["hyperplanes"].items()},
        )
    if kind == "custom":
        def algebra(mats) -> Subalgebra:
            coords = []
            for m in mats:
                mat = [[_q(x) for x in row] for row in m]
                if len(mat) != model.size or any(len(row) != model.size for row in mat):
                    raise InstanceError(f"algebra generators must be {model.size}x{model.size} matrices")
                coords.append(model.coords(mat))
            return Subalgebra(model, Subspace.span(coords, model.dim))

        by_name = {str(i): i for i in incidence_set(h)}
        incs = {}
        for key, mats in real.get("incidence_algebras", {}).items():
            if key not in by_name:
                raise InstanceError(f"{key!r} is not an incidence (write it as vertex*edge)")
            incs[by_name[key]] = algebra(mats)
        return Custom(h, model, {x: algebra(m) for x, m in real["algebras"].items()}, incs)
    raise InstanceError(f"unknown realisation kind {kind!r}")


def _fvec(v) -> list[float]:
    out = []
    for x in v:
        if isinstance(x, float):
            out.append(x)
        else:
            out.append(float(to_fraction(x)))
    return out


def decode_numeric(doc: Mapping) -> NumericInstance:
    """Float data for the approximate path; accepts floats anywhere."""
    validate(doc)
    if is_finite_document(doc):
        raise InstanceError("finite-group instances have no approximate path")
    model = _model(doc["group"])
    h = Hypergraph.from_json(doc["hypergraph"])
    real = doc["realisation"]
    kind = real["kind"]
    if GROUP_OF_KIND.get(kind) != model.kind:
        raise InstanceError(f"approximate analysis does not support {kind} in the {model.kind} model")
    if kind == "bar_joint":
        w = {v: [_fvec(real["coords"][v]) + [1.0]] for v in h.vertices}
        members = {e: list(vs) for e, vs in h.edges}
    elif kind == "projective":
        w = {v: [_fvec(b) for b in real["vertex_subspaces"][v]] for v in h.vertices}
        w.update({e: [_fvec(b) for b in real["edge_subspaces"][e]] for e in h.edge_ids})
        members = {}
    elif kind == "scene":
        w = {v: [_fvec(real["points"][v])] for v in h.vertices}
        members = {e: list(vs) for e, vs in h.edges}
    else:
        raise InstanceError(f"approximate analysis supports bar_joint, projective and scene instances, not {kind}")
    missing = [x for x in list(h.vertices) + [e for e in h.edge_ids if e not in members] if x not in w]
    if missing:
        raise InstanceError(f"missing geometry for {missing}")
    return NumericInstance(h, model, w, members)


@dataclass(frozen=True)
class TensorInstance:
    gamma: Hypergraph
    lam: Hypergraph


def decode_finite(doc: Mapping) -> FiniteRealisation | TensorInstance:
    validate(doc)
    if not is_finite_document(doc):
        raise InstanceError("expected a finite-group instance (kind colouring or tensor)")
    if doc["kind"] == "tensor":
        return TensorInstance(Hypergraph.from_json(doc["gamma"]), Hypergraph.from_json(doc["lambda"]))
    return from_colouring(Hypergraph.from_json(doc["graph"]), doc["colouring"], doc["n"])


# -- encoding -------------------------------------------------------------


def _out(v) -> list:
    return [format_fraction(x) for x in v]


def encode(inst: Instance) -> dict:
    """Document for an exact instance; inverse of :func:`decode` (custom
    instances excluded)."""
    h = inst.hypergraph
    group = inst.model.to_json()
    if isinstance(inst, BarJoint):
        real = {"kind": "bar_joint", "coords": {v: _out(inst.coords[v]) for v in h.vertices}}
    elif isinstance(inst, Constrained):
        real = {
            "kind": "constrained",
            "coords": {v: _out(inst.coords[v]) for v in h.vertices},
            "constraints": {
                v: {"base": _out(c.base), "directions": [_out(d) for d in c.directions]}
                for v, c in inst.constraints.items()
            },
        }
    elif isinstance(inst, ProjectiveConfig):
        real = {
            "kind": "projective",
            "k": inst.k,
            "l": inst.l,
            "vertex_subspaces": {v: [_out(b) for b in inst.vertex_subspaces[v].basis] for v in h.vertices},
            "edge_subspaces": {e: [_out(b) for b in inst.edge_subspaces[e].basis] for e in h.edge_ids},
        }
    elif isinstance(inst, Scene):
        real = {"kind": "scene", "points": {v: _out(inst.points[v].coords) for v in h.vertices}}
    elif isinstance(inst, Parallel):
        real = {
            "kind": "parallel",
            "points": {v: _out(inst.points[v]) for v in h.vertices},
            "hyperplanes": {
                e: {"normal": _out(inst.hyperplanes[e].normal), "offset": format_fraction(inst.hyperplanes[e].offset)}
                for e in h.edge_ids
            },
        }
    else:
        raise InstanceError(f"cannot encode {type(inst).__name__} instances")
    hdoc = h.to_json()
    if any(not vs for _, vs in h.edges):
        hdoc["allow_empty_edges"] = True
    return {"group": group, "hypergraph": hdoc, "realisation": real}


def load(path: str | Path) -> Instance:
    return decode(read_json(path))
