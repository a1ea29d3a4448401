"""Centres of rotation for the flex of the unit square.

For every basis vector of the raw motion space, each pair of bars meeting
at a joint is checked: the two centres and the joint lie on one line.
"""

from fractions import Fraction
from itertools import combinations

from gorigidity import corpus
from gorigidity.liemodels import centre_of_rotation, centres_collinear
from gorigidity.motionspace import motion_basis
from gorigidity.realisation import build


def main() -> None:
    inst = corpus.unit_square()
    r = build(inst)
    h = r.hypergraph
    for k, vec in enumerate(motion_basis(r)):
        for v in h.vertices:
            edges = [e for e in h.edges_at(v) if any(vec[e])]
            p = tuple(inst.coords[v]) + (Fraction(1),)
            for e, f in combinations(edges, 2):
                ce, cf = centre_of_rotation(vec[e]), centre_of_rotation(vec[f])
                ok = centres_collinear(ce, cf, p)
                fmt = lambda c: ":".join(str(x) for x in c)
                print(f"basis {k:2d}  {v}: centre({e})=[{fmt(ce)}] centre({f})=[{fmt(cf)}] collinear={ok}")


if __name__ == "__main__":
    main()
