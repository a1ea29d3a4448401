from fractions import Fraction

from hypothesis import strategies as st

small_q = st.builds(Fraction, st.integers(-4, 4), st.sampled_from([1, 1, 1, 2, 3]))


def vectors(n):
    return st.lists(small_q, min_size=n, max_size=n)


def matrices(max_rows, n):
    return st.lists(vectors(n), min_size=0, max_size=max_rows)


@st.composite
def spaces(draw, n):
    from gorigidity.linalg import Subspace

    return Subspace.span(draw(matrices(n + 1, n)), n)


seeds = st.integers(0, 2**32 - 1)
