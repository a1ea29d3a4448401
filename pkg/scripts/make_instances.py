"""Write the fixture instances as JSON files under instances/."""

import json
import sys
from pathlib import Path

from gorigidity import corpus
from gorigidity.io import encode


def finite_doc(graph, colouring, n):
    return {"kind": "colouring", "n": n, "graph": graph.to_json(), "colouring": colouring}


def main(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    lie = {
        "triangle": corpus.triangle(),
        "unit_square": corpus.unit_square(),
        "double_banana": corpus.double_banana(),
        "two_triangles": corpus.two_triangles(),
        "projective_triangle": corpus.projective_triangle(),
        "scene": corpus.scene_pair(),
        "constrained_pair": corpus.constrained_pair(),
    }
    docs = {name: encode(inst) for name, inst in lie.items()}
    docs["k3"] = finite_doc(corpus.k3(), {"a": 1, "b": 2, "c": 3}, 3)
    docs["c5"] = finite_doc(corpus.c5(), corpus.first_colouring(corpus.c5(), 3), 3)
    docs["k4_minus_edge"] = finite_doc(corpus.k4_minus_edge(), corpus.first_colouring(corpus.k4_minus_edge(), 3), 3)
    docs["tensor_c5"] = {"kind": "tensor", "gamma": corpus.c5().to_json(), "lambda": corpus.c5().to_json()}
    for name, doc in docs.items():
        (out / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")
        print(out / f"{name}.json")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "instances")
