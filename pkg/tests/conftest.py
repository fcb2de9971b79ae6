import itertools

from hypothesis import strategies as st

from rgstates import Graph


@st.composite
def graphs(draw, max_n=6, min_n=1):
    n = draw(st.integers(min_n, max_n))
    possible = list(itertools.combinations(range(n), 2))
    if possible:
        edges = draw(st.lists(st.sampled_from(possible), unique=True,
                              max_size=len(possible)))
    else:
        edges = []
    return Graph(n, tuple(edges))
