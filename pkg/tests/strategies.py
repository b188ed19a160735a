"""Hypothesis strategies shared across the test modules."""

import hypothesis.strategies as st

from updom.graphs import Graph, graph_from_edges


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    flags = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return graph_from_edges(n, [p for p, f in zip(pairs, flags) if f])


def isolate_free_graphs(min_n: int = 2, max_n: int = 6):
    return graphs(min_n=min_n, max_n=max_n).filter(
        lambda g: not g.has_isolated_vertex())


def nontrivial_graphs(min_n: int = 2, max_n: int = 6):
    return graphs(min_n=min_n, max_n=max_n).filter(Graph.is_nontrivial)
