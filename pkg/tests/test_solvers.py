import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from updom.domination import certify_minimal, is_dominating
from updom.graphs import (
    cartesian_product,
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    edgeless,
    erdos_renyi,
    graph_from_edges,
    mask_of,
    matched_cliques,
    matched_cliques_trimmed,
    path,
    star,
    vertex_list,
)
from updom.solvers import (
    NotIndependentError,
    SearchBudget,
    SolveStatus,
    TooLargeError,
    alpha_exact,
    enumerate_minimal_dominating,
    gamma_exact,
    greedy_maximal_independent,
    upper_gamma_bnb,
    upper_gamma_oracle,
)

import bruteforce
from strategies import graphs

FAST = SearchBudget(node_limit=2_000_000)
TIGHT = SearchBudget(node_limit=2_000_000, tight_bound=True)


def test_oracle_examples():
    for n in range(1, 7):
        assert upper_gamma_oracle(edgeless(n)).value == n
    assert upper_gamma_oracle(matched_cliques(4)).value == 2
    assert upper_gamma_oracle(matched_cliques_trimmed(4)).value == 4
    assert upper_gamma_oracle(edgeless(0)).value == 0
    with pytest.raises(TooLargeError):
        upper_gamma_oracle(edgeless(23))


def test_oracle_witness_is_lex_smallest():
    # all six pairs of the 4-cycle are maximizers; [0, 1] sorts first
    res = upper_gamma_oracle(cycle(4))
    assert vertex_list(res.witness) == [0, 1]
    res = upper_gamma_oracle(path(5))
    assert res.value == 3 and vertex_list(res.witness) == [0, 2, 4]


@given(graphs(max_n=7))
@settings(max_examples=100)
def test_oracle_matches_bruteforce(g):
    res = upper_gamma_oracle(g)
    assert res.value == bruteforce.upper_gamma(g)
    if g.n:
        res.certificate.validate(g)


def test_enumerate_examples():
    sets, truncated = enumerate_minimal_dominating(complete(2))
    assert [vertex_list(s) for s in sets] == [[0], [1]] and not truncated
    sets, _ = enumerate_minimal_dominating(path(3))
    assert [vertex_list(s) for s in sets] == [[0, 2], [1]]
    sets, _ = enumerate_minimal_dominating(cycle(4))
    assert [vertex_list(s) for s in sets] == [
        [0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]
    sets, truncated = enumerate_minimal_dominating(cycle(4), cap=2)
    assert len(sets) == 2 and truncated
    with pytest.raises(TooLargeError):
        enumerate_minimal_dominating(edgeless(19))


@given(graphs(max_n=6))
@settings(max_examples=80)
def test_enumerate_matches_bruteforce(g):
    sets, truncated = enumerate_minimal_dominating(g)
    assert not truncated
    assert {frozenset(vertex_list(s)) for s in sets} == \
        set(bruteforce.all_minimal_dominating(g))
    # extremes of the enumeration match the dedicated solvers
    sizes = [s.bit_count() for s in sets]
    assert max(sizes) == upper_gamma_oracle(g).value
    assert min(sizes) == gamma_exact(g, FAST).value


def test_gamma_examples():
    for n in range(1, 6):
        assert gamma_exact(complete(n), FAST).value == 1
    assert gamma_exact(path(4), FAST).value == 2
    assert gamma_exact(cycle(6), FAST).value == 2
    assert gamma_exact(edgeless(0), FAST).value == 0
    res = gamma_exact(path(7), FAST)
    assert res.value == 3
    res.certificate.validate(path(7))


@given(graphs(max_n=7))
@settings(max_examples=80)
def test_gamma_matches_bruteforce(g):
    res = gamma_exact(g, FAST)
    assert res.status is SolveStatus.EXACT
    assert res.value == bruteforce.gamma(g)


def test_alpha_examples():
    assert alpha_exact(complete(5), FAST).value == 1
    assert alpha_exact(complete_bipartite(3, 5), FAST).value == 5
    for n in range(1, 5):
        assert alpha_exact(matched_cliques(n), FAST).value == 2
        assert alpha_exact(matched_cliques_trimmed(n), FAST).value == 2
    assert alpha_exact(edgeless(0), FAST).value == 0


@given(graphs(max_n=7))
@settings(max_examples=80)
def test_alpha_matches_bruteforce(g):
    res = alpha_exact(g, FAST)
    assert res.status is SolveStatus.EXACT
    assert res.value == bruteforce.alpha(g)


def test_greedy_maximal_independent():
    assert vertex_list(greedy_maximal_independent(path(4))) == [0, 2]
    assert vertex_list(greedy_maximal_independent(complete(4), 1 << 3)) == [3]
    assert vertex_list(greedy_maximal_independent(cycle(5), mask_of([1, 4]))) == [1, 4]
    with pytest.raises(NotIndependentError):
        greedy_maximal_independent(path(4), mask_of([0, 1]))


@given(graphs(max_n=7))
@settings(max_examples=80)
def test_greedy_mis_is_minimal_dominating(g):
    s = greedy_maximal_independent(g)
    if g.n:
        certify_minimal(g, s).validate(g)


def test_bnb_examples():
    res = upper_gamma_bnb(cartesian_product(complete(3), complete_bipartite(3, 3)).graph,
                          TIGHT)
    assert res.value == 6 and res.status is SolveStatus.EXACT
    res = upper_gamma_bnb(cartesian_product(complete(2), path(3)).graph, TIGHT)
    assert res.value == 3


@given(graphs(max_n=9), st.booleans())
@settings(max_examples=100, deadline=None)
def test_bnb_matches_oracle(g, tight):
    budget = SearchBudget(node_limit=5_000_000, tight_bound=tight)
    res = upper_gamma_bnb(g, budget)
    assert res.status is SolveStatus.EXACT
    assert res.value == upper_gamma_oracle(g).value
    if g.n:
        res.certificate.validate(g)


def test_bnb_budget_exhaustion_still_certifies():
    g = cartesian_product(complete(4), complete(4)).graph
    res = upper_gamma_bnb(g, SearchBudget(node_limit=10))
    assert res.status is SolveStatus.BOUND_ONLY
    assert res.value == res.witness.bit_count()
    res.certificate.validate(g)
    assert res.value <= upper_gamma_oracle(g).value


def test_gamma_budget_exhaustion_reports_upper_bound():
    g = cartesian_product(complete(4), complete(4)).graph
    res = gamma_exact(g, SearchBudget(node_limit=3))
    assert res.status is SolveStatus.BOUND_ONLY
    assert res.value >= 4  # true gamma of this product
    res.certificate.validate(g)


def test_solver_determinism():
    g = erdos_renyi(12, 0.4, 99)
    runs = [upper_gamma_bnb(g, TIGHT) for _ in range(2)]
    assert runs[0].value == runs[1].value
    assert runs[0].witness == runs[1].witness
    assert runs[0].stats.nodes == runs[1].stats.nodes
    a1, a2 = alpha_exact(g, FAST), alpha_exact(g, FAST)
    assert (a1.value, a1.witness) == (a2.value, a2.witness)


@given(graphs(min_n=0, max_n=5), graphs(min_n=0, max_n=5))
@settings(max_examples=60)
def test_upper_gamma_additive_over_disjoint_union(g, h):
    u = disjoint_union([g, h])
    assert upper_gamma_oracle(u).value == \
        upper_gamma_oracle(g).value + upper_gamma_oracle(h).value


@given(graphs(min_n=1, max_n=8))
@settings(max_examples=100)
def test_invariant_chain(g):
    gamma = gamma_exact(g, FAST).value
    upper = upper_gamma_oracle(g).value
    alpha = alpha_exact(g, FAST).value
    assert gamma <= upper <= g.n
    assert alpha <= upper
    if not g.has_isolated_vertex():
        assert upper <= g.n - gamma
