import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from updom.domination import (
    DominationCertificate,
    DominationError,
    ForcedNotProtectedError,
    NotDominatingError,
    NotMinimalError,
    certify_minimal,
    is_dominating,
    is_minimal_dominating,
    minimalize,
    private_neighbors,
    split_by_private_neighbor,
)
from updom.graphs import (
    complete,
    cycle,
    edgeless,
    graph_from_edges,
    mask_of,
    path,
    vertex_list,
)

import bruteforce
from strategies import graphs


def test_is_dominating_basics():
    assert is_dominating(complete(4), 0b0001)
    assert not is_dominating(path(4), 0b0001)
    assert is_dominating(edgeless(3), 0b111)
    assert not is_dominating(edgeless(3), 0b011)
    assert is_dominating(edgeless(0), 0)


def test_certify_examples():
    cert = certify_minimal(path(4), 0b0110)
    assert cert.justification == {1: 0, 2: 3}
    cert = certify_minimal(edgeless(3), 0b111)
    assert cert.justification == {0: None, 1: None, 2: None}
    with pytest.raises(NotMinimalError) as exc:
        certify_minimal(path(4), 0b1011)
    # lowest-indexed violating member is reported
    assert exc.value.vertex == 0
    with pytest.raises(NotDominatingError) as exc:
        certify_minimal(path(4), 0b0001)
    assert exc.value.vertex == 2


def test_certify_prefers_isolated_tag():
    # vertex 0 of this graph is isolated in the set and also has private
    # neighbor 1; the isolated tag must win
    g = graph_from_edges(3, [(0, 1), (1, 2)])
    cert = certify_minimal(g, 0b101)
    assert cert.justification[0] is None
    assert cert.justification[2] is None


def test_certificate_json_round_trip():
    g = path(4)
    cert = certify_minimal(g, 0b0110)
    data = cert.to_json()
    assert data == {"set": [1, 2], "justification": {"1": {"private": 0},
                                                     "2": {"private": 3}}}
    back = DominationCertificate.from_json(data)
    assert back == cert
    back.validate(g)


def test_certificate_validate_catches_corruption():
    g = path(4)
    cert = certify_minimal(g, 0b0110)
    broken = DominationCertificate(cert.set_mask, {1: 0, 2: 1})
    with pytest.raises(DominationError):
        broken.validate(g)
    broken = DominationCertificate(cert.set_mask, {1: None, 2: 3})
    with pytest.raises(DominationError):
        broken.validate(g)


def test_minimalize_traces():
    # lowest-index-first removal, rescanning from zero
    assert vertex_list(minimalize(path(4), 0b1111)) == [1, 3]
    assert vertex_list(minimalize(complete(3), 0b111)) == [2]
    assert vertex_list(minimalize(path(4), 0b1110, forced=0b0010)) == [1, 3]


def test_minimalize_errors():
    with pytest.raises(NotDominatingError):
        minimalize(path(4), 0b0001)
    with pytest.raises(ForcedNotProtectedError) as exc:
        minimalize(complete(3), 0b111, forced=0b001)
    assert exc.value.vertex == 0
    with pytest.raises(ValueError):
        minimalize(complete(3), 0b011, forced=0b100)


def test_split_examples():
    g = path(4)
    split = split_by_private_neighbor(g, certify_minimal(g, 0b0110))
    assert split.private_members == 0b0110
    assert split.isolated_members == 0
    assert split.chosen_private == {1: 0, 2: 3}

    g = edgeless(2)
    split = split_by_private_neighbor(g, certify_minimal(g, 0b11))
    assert split.private_members == 0 and split.isolated_members == 0b11

    g = cycle(4)
    split = split_by_private_neighbor(g, certify_minimal(g, 0b0101))
    assert split.private_members == 0 and split.isolated_members == 0b0101


def test_split_counts_isolated_members_with_privates_as_private():
    g = graph_from_edges(3, [(0, 1), (1, 2)])
    cert = certify_minimal(g, 0b101)
    split = split_by_private_neighbor(g, cert)
    # both members are set-isolated, yet each owns a private neighbor
    assert split.private_members == 0b101
    assert split.chosen_private == {0: 1, 2: 1}


def test_private_neighbors():
    g = path(4)
    assert private_neighbors(g, 0b0110, 1) == 0b0001
    assert private_neighbors(g, 0b0110, 2) == 0b1000
    assert private_neighbors(cycle(4), 0b0101, 0) == 0


@given(graphs(max_n=7))
@settings(max_examples=120)
def test_certify_agrees_with_bruteforce(g):
    nbrs = bruteforce.neighbor_sets(g)
    for d in range(1 << g.n):
        ours = is_minimal_dominating(g, d)
        ref = bruteforce.is_minimal_dominating(nbrs, g.n, vertex_list(d))
        assert ours == ref


@given(graphs(max_n=7), st.integers(min_value=0, max_value=(1 << 7) - 1))
@settings(max_examples=200)
def test_minimalize_output_certifies(g, raw):
    d = raw & g.full_mask
    if not is_dominating(g, d):
        return
    result = minimalize(g, d)
    assert result & ~d == 0
    certify_minimal(g, result).validate(g)


@given(graphs(min_n=1, max_n=6))
@settings(max_examples=120)
def test_complement_of_minimal_dominating_dominates_isolate_free(g):
    if g.has_isolated_vertex():
        return
    for d in bruteforce.all_minimal_dominating(g):
        complement = g.full_mask & ~mask_of(d)
        assert is_dominating(g, complement)


@given(graphs(min_n=1, max_n=6))
@settings(max_examples=100)
def test_split_isolated_part_is_isolated(g):
    for d in bruteforce.all_minimal_dominating(g):
        cert = certify_minimal(g, mask_of(d))
        split = split_by_private_neighbor(g, cert)
        for v in vertex_list(split.isolated_members):
            assert not g.adj[v] & cert.set_mask
