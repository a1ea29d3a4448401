"""Command-line entry point: ``gorigidity <command> FILE``.

Every report is one JSON document on stdout. Exit status is 0 on success,
1 for unreadable or invalid input, 2 when an internal consistency check
fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import traceback
from typing import Callable

from . import corpus, io
from .counting import DEFAULT_FREE_CAP, banana_flex_test, maxwell_bound, sparsity_scan
from .errors import InstanceError, InvariantError
from .finite import analyse_finite, tensor_sections
from .motionspace import analyze as analyze_realisation
from .motionspace import approximate_motion_space, motion_space
from .oracles import (
    classical_maxwell,
    constrained_rigidity_nullity,
    homomorphism_count,
    proper_colourings,
    rigidity_nullity,
    unique_colourability_bruteforce,
)
from .realisation import BarJoint, Constrained, build, dualize, projective_dual_instance, scene_to_parallel_instance

log = logging.getLogger("gorigidity")


def cmd_analyze(args) -> dict:
    doc = io.read_json(args.file)
    if args.approximate:
        return approximate_motion_space(io.decode_numeric(doc)).to_json()
    inst = io.decode(doc)
    report = analyze_realisation(build(inst), basis=args.basis).to_json()
    return {"kind": inst.kind, "group": inst.model.to_json(), **report}


def cmd_bound(args) -> dict:
    inst = io.load(args.file)
    r = build(inst)
    return {"kind": inst.kind, **maxwell_bound(r).to_json()}


def cmd_sparsity(args) -> dict:
    r = build(io.load(args.file))
    return sparsity_scan(
        r, vertex_induced_only=args.vertex_induced, max_subset=args.max_subset, free_cap=args.free_cap
    ).to_json()


def cmd_banana(args) -> dict:
    r = build(io.load(args.file))
    cut = [v.strip() for v in args.cut.split(",") if v.strip()]
    unknown = [v for v in cut if v not in r.hypergraph.vertices]
    if unknown:
        raise InstanceError(f"unknown cut vertices {unknown}")
    return banana_flex_test(r, cut).to_json()


def cmd_oracle(args) -> dict:
    inst = io.load(args.file)
    if not isinstance(inst, (BarJoint, Constrained)):
        raise InstanceError("the oracle compares bar-joint or constrained instances only")
    r = build(inst)
    h = inst.hypergraph
    if isinstance(inst, Constrained):
        report = analyze_realisation(r)
        dirs = {v: c.directions for v, c in inst.constraints.items()}
        nullity = constrained_rigidity_nullity(h, inst.coords, inst.d, dirs)
        return {
            "engine": {"dim_piA": report.dim_piA, "constrained_bound": report.constrained_bound},
            "oracle": {"nullity": nullity},
            "agree": report.dim_piA == nullity,
        }
    report = motion_space(r)
    oracle = rigidity_nullity(h, inst.coords, inst.d)
    return {
        "engine": {"dim_piA": report.dim_piA, "dim_trivial": report.dim_trivial, "rigid": report.rigid},
        "oracle": oracle.to_json(),
        "agree": report.dim_piA == oracle.nullity and report.rigid == oracle.rigid,
        "maxwell": classical_maxwell(h, inst.d).to_json(),
    }


def cmd_finite(args) -> dict:
    doc = io.read_json(args.file)
    inst = io.decode_finite(doc)
    if isinstance(inst, io.TensorInstance):
        sections = tensor_sections(inst.gamma, inst.lam)
        brute = homomorphism_count(inst.gamma, inst.lam)
        return {"sections": sections, "homomorphisms": brute, "agree": sections == brute}
    report = analyse_finite(inst).to_json()
    h, n = inst.hypergraph, inst.group.degree
    colourings = len(proper_colourings(h, n))
    unique = unique_colourability_bruteforce(h, n)
    report["oracle"] = {"colourings": colourings, "uniquely_colourable": unique}
    report["agree"] = report["sections"] == colourings and report["globally_rigid"] == unique
    return report


def cmd_dualize(args) -> dict:
    inst = io.load(args.file)
    return io.encode(dualize(inst, args.target))


def selftest_checks() -> list[tuple[str, bool]]:
    """Worked examples with known answers."""
    out = []

    def check(name: str, fn: Callable[[], bool]) -> None:
        try:
            ok = bool(fn())
        except (InstanceError, InvariantError) as exc:
            log.error("%s: %s", name, exc)
            ok = False
        out.append((name, ok))

    def tri():
        m = motion_space(build(corpus.triangle()))
        return (m.dim_piA, m.dofs, m.rigid) == (3, 0, True)

    def banana():
        r = build(corpus.double_banana())
        cert = banana_flex_test(r, ["v", "w"])
        return motion_space(r).dofs == 1 and cert.status == "certificate" and cert.witness_dim == 1

    def k3():
        from .finite import from_colouring

        rep = analyse_finite(from_colouring(corpus.k3(), {"a": 1, "b": 2, "c": 3}, 3))
        return rep.sections == 6 and rep.globally_rigid

    def c5():
        from .finite import from_colouring

        col = corpus.first_colouring(corpus.c5(), 3)
        rep = analyse_finite(from_colouring(corpus.c5(), col, 3))
        return rep.sections == 30 and not rep.globally_rigid

    def scene_parallel():
        s = corpus.scene_pair()
        return motion_space(build(s)).dim_piA == motion_space(build(scene_to_parallel_instance(s))).dim_piA

    def projective():
        p = corpus.projective_triangle()
        return motion_space(build(p)).dim_piA == motion_space(build(projective_dual_instance(p))).dim_piA

    check("triangle is rigid with dim pi(A) = 3", tri)
    check("double banana flexes with a 1-dimensional witness", banana)
    check("K3 over S3 has 6 sections and is globally rigid", k3)
    check("C5 over S3 has 30 sections and is not globally rigid", c5)
    check("scene and its parallel dual agree", scene_parallel)
    check("projective triangle and its dual agree", projective)
    return out


def cmd_selftest(args) -> dict:
    results = selftest_checks()
    failed = [name for name, ok in results if not ok]
    if failed:
        raise InvariantError(f"selftest failed: {', '.join(failed)}")
    return {"checks": [{"name": n, "pass": ok} for n, ok in results], "pass": True}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand's default from overwriting a flag given before it
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="indent the JSON report")
    parser = argparse.ArgumentParser(prog="gorigidity", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--schema", action="store_true", help="print the instance JSON schema and exit")
    sub = parser.add_subparsers(dest="command")

    def add(name: str, fn, help_: str, file: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_, parents=[common])
        if file:
            p.add_argument("file")
        p.set_defaults(func=fn)
        return p

    p = add("analyze", cmd_analyze, "dimensions of the motion space and the rigidity verdict")
    p.add_argument("--basis", action="store_true", help="include a basis of the raw motion space")
    p.add_argument("--approximate", action="store_true", help="accept floats; ranks by SVD")
    add("bound", cmd_bound, "Maxwell-type lower bound and codimension profile")
    p = add("sparsity", cmd_sparsity, "scan incidence subsets for sparsity violations")
    p.add_argument("--max-subset", type=int, default=None, help="subset size limit above the free cap")
    p.add_argument("--vertex-induced", action="store_true", help="scan vertex-induced subsets only")
    p.add_argument("--free-cap", type=int, default=DEFAULT_FREE_CAP, help="enumerate all subsets up to this many incidences")
    p = add("banana", cmd_banana, "flex certificate from a disconnecting vertex set")
    p.add_argument("--cut", required=True, help="comma-separated vertex ids")
    add("oracle", cmd_oracle, "compare against the classical rigidity matrix")
    add("finite", cmd_finite, "sections and global rigidity for finite-group instances")
    p = add("dualize", cmd_dualize, "emit the transported instance")
    p.add_argument("--target", required=True, choices=["projective-dual", "scene-to-parallel"])
    add("selftest", cmd_selftest, "run the built-in worked examples", file=False)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s", stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    pretty = getattr(args, "pretty", False)
    indent = 2 if pretty else None
    seps = None if pretty else (",", ":")
    if args.schema:
        print(json.dumps(io.schema(), indent=indent, separators=seps))
        return 0
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return 1
    try:
        report = args.func(args)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 2
    print(json.dumps(report, indent=indent, separators=seps))
    return 0


if __name__ == "__main__":
    sys.exit(main())
