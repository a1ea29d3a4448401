import math
import random
from fractions import Fraction as F

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from gorigidity import corpus
from gorigidity.hypergraph import Hypergraph
from gorigidity.linalg import rank
from gorigidity.oracles import (
    affine_span_dim,
    bareiss_rank,
    classical_maxwell,
    homomorphism_count,
    proper_colourings,
    rigidity_matrix,
    rigidity_nullity,
    unique_colourability_bruteforce,
)

from .strategies import matrices, seeds


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), matrices(6, n))))
def test_bareiss_matches_rref(data):
    n, rows = data
    assert bareiss_rank(rows, n) == rank(rows, n)


@settings(max_examples=30)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_bareiss_matches_numpy_on_integers(rows):
    assert bareiss_rank(rows, 4) == np.linalg.matrix_rank(np.array(rows, dtype=float))


def test_triangle_rigidity_matrix():
    inst = corpus.triangle()
    m = rigidity_matrix(inst.hypergraph, inst.coords, 2)
    assert len(m) == 3 and len(m[0]) == 6
    o = rigidity_nullity(inst.hypergraph, inst.coords, 2)
    assert (o.nullity, o.trivial, o.rigid, o.affine_dim) == (3, 3, True, 2)


def test_collinear_trivial_count():
    h = Hypergraph.graph("abc", [("a", "b"), ("b", "c")])
    coords = {"a": (F(0), F(0), F(0)), "b": (F(1), F(0), F(0)), "c": (F(2), F(0), F(0))}
    o = rigidity_nullity(h, coords, 3)
    assert o.affine_dim == 1 and o.trivial == math.comb(4, 2) - math.comb(2, 2)


def test_affine_span():
    assert affine_span_dim([]) == -1
    assert affine_span_dim([(1, 1)]) == 0
    assert affine_span_dim([(0, 0), (1, 1), (2, 2)]) == 1


def test_maxwell_counts():
    r = classical_maxwell(corpus.triangle().hypergraph, 2)
    assert (r.edges, r.count, r.equality, r.violating_subsets) == (3, 3, True, [])
    k4 = Hypergraph.graph("abcd", [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")])
    r = classical_maxwell(k4, 2)
    assert r.violating_subsets == [list(k4.edge_ids)]


def test_maxwell_skips_large_graphs():
    h = Hypergraph.graph([str(i) for i in range(8)], [(str(i), str(j)) for i in range(8) for j in range(i + 1, 8)])
    assert classical_maxwell(h, 2, max_edges=16).violating_subsets == []


def test_colourings():
    assert len(proper_colourings(corpus.k3(), 3)) == 6
    assert len(proper_colourings(corpus.c5(), 3)) == 30
    assert unique_colourability_bruteforce(corpus.k3(), 3)
    assert not unique_colourability_bruteforce(corpus.c5(), 3)
    assert not unique_colourability_bruteforce(corpus.k3(), 2)


def test_homomorphisms():
    assert homomorphism_count(corpus.k2(), corpus.k3()) == 6
    assert homomorphism_count(corpus.k3(), corpus.k2()) == 0


@settings(max_examples=20)
@given(seeds)
def test_chromatic_polynomial_on_trees(seed):
    # a tree on m vertices has n (n-1)^(m-1) proper n-colourings
    rng = random.Random(seed)
    m = rng.randint(2, 6)
    edges = [(f"v{k}", f"v{rng.randrange(k)}") for k in range(1, m)]
    h = Hypergraph.graph([f"v{k}" for k in range(m)], edges)
    assert len(proper_colourings(h, 3)) == 3 * 2 ** (m - 1)
