import networkx as nx
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from updom.graphs import (
    CAPACITY,
    CapacityError,
    FamilyParameterError,
    Graph,
    GraphParseError,
    are_isomorphic,
    bits,
    canonical_form,
    cartesian_product,
    closed_neighborhood,
    complete,
    complete_bipartite,
    components,
    cycle,
    disjoint_union,
    edgeless,
    erdos_renyi,
    from_edge_list,
    from_graph6,
    generate,
    graph_from_edges,
    induced_subgraph,
    is_complete_graph,
    is_two_leaf_star,
    mask_of,
    matched_cliques,
    matched_cliques_bridged,
    matched_cliques_pendant,
    matched_cliques_trimmed,
    parse_family,
    parse_graph,
    path,
    serialize_graph,
    star,
    to_edge_list,
    to_graph6,
    vertex_list,
)

from strategies import graphs


def test_graph_invariants_enforced():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))  # asymmetric
    with pytest.raises(ValueError):
        Graph(1, (0b1,))  # self loop
    with pytest.raises(ValueError):
        Graph(1, (0b10,))  # bit beyond n
    with pytest.raises(CapacityError):
        edgeless(CAPACITY + 1)


def test_closed_neighborhood():
    assert closed_neighborhood(complete(3), 0b001) == 0b111
    assert closed_neighborhood(edgeless(4), 0b0100) == 0b0100
    assert vertex_list(closed_neighborhood(path(4), 0b0010)) == [0, 1, 2]
    assert closed_neighborhood(path(4), 0) == 0


def test_cartesian_product_shapes():
    c4 = cartesian_product(complete(2), complete(2)).graph
    assert c4.n == 4 and c4.edge_count() == 4
    assert are_isomorphic(c4, cycle(4))
    k1h = cartesian_product(complete(1), path(3)).graph
    assert are_isomorphic(k1h, path(3))
    k33 = cartesian_product(complete(3), complete(3)).graph
    assert (k33.n, k33.edge_count()) == (9, 18)
    assert set(k33.degree_sequence()) == {4}
    with pytest.raises(CapacityError):
        cartesian_product(edgeless(30), edgeless(30))


def test_product_coordinates():
    prod = cartesian_product(path(3), path(4))
    assert prod.index(2, 3) == 11
    assert prod.coords(11) == (2, 3)
    assert vertex_list(prod.row_mask(1)) == [4, 5, 6, 7]
    assert vertex_list(prod.column_mask(2)) == [2, 6, 10]
    assert prod.transpose_mask(1 << prod.index(1, 2)) == 1 << (2 * 3 + 1)


@given(graphs(max_n=4), graphs(max_n=3))
@settings(max_examples=60)
def test_product_edge_count_formula(g, h):
    prod = cartesian_product(g, h)
    assert prod.graph.edge_count() == g.n * h.edge_count() + h.n * g.edge_count()


def test_product_commutes_up_to_isomorphism():
    fams = [complete(2), path(3), cycle(4), star(2), edgeless(2)]
    for g in fams:
        for h in fams:
            if g.n * h.n <= 8:
                a = cartesian_product(g, h).graph
                b = cartesian_product(h, g).graph
                assert are_isomorphic(a, b)


def test_families_basic():
    assert complete(4).edge_count() == 6
    assert edgeless(5).edge_count() == 0 and edgeless(5).n == 5
    s = star(3)
    assert s.degree(0) == 3 and s.degree_sequence() == (1, 1, 1, 3)
    kb = complete_bipartite(2, 3)
    assert kb.edge_count() == 6 and kb.degree_sequence() == (2, 2, 2, 3, 3)
    assert path(1).n == 1 and cycle(3).edge_count() == 3
    with pytest.raises(FamilyParameterError):
        cycle(2)
    with pytest.raises(FamilyParameterError):
        star(0)
    with pytest.raises(FamilyParameterError):
        erdos_renyi(4, 1.5, 0)


def test_matched_cliques_structure():
    g = matched_cliques(2)
    assert g.n == 6
    expected = {(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (1, 4), (2, 5)}
    assert set(g.edges()) == expected

    # trimmed variant equals the induced subgraph dropping the first
    # unmatched vertex, after the order-preserving relabel
    for n in range(1, 5):
        full = matched_cliques(n)
        keep = full.full_mask & ~1
        induced, vmap = induced_subgraph(full, keep)
        trimmed = matched_cliques_trimmed(n)
        assert induced.adj == trimmed.adj
        assert vmap == tuple(range(1, 2 * n + 2))


def test_matched_cliques_pendant_and_bridge():
    g = matched_cliques_pendant(2)
    assert g.n == 8
    assert g.degree(0) == 1 and g.has_edge(0, 1) and g.has_edge(1, 2)
    b = matched_cliques_bridged(3)
    assert b.edge_count() == matched_cliques(3).edge_count() + 1
    assert b.has_edge(0, 4)
    # bridged variant is the two-clique product in disguise
    assert are_isomorphic(matched_cliques_bridged(3),
                          cartesian_product(complete(2), complete(4)).graph)


def test_erdos_renyi_deterministic():
    a = erdos_renyi(8, 0.5, 42)
    b = erdos_renyi(8, 0.5, 42)
    assert a.adj == b.adj
    assert erdos_renyi(8, 0.0, 1).edge_count() == 0
    assert erdos_renyi(8, 1.0, 1).edge_count() == 28


def test_family_specs_round_trip():
    for text in ["k:5", "star:3", "kb:2,3", "path:4", "cycle:5", "edgeless:2",
                 "mc:3", "mct:3", "mcp:2", "mcb:2", "er:8,0.5,42"]:
        spec = parse_family(text)
        g = generate(spec)
        assert g.n > 0
    with pytest.raises(FamilyParameterError):
        parse_family("nope:3")
    with pytest.raises(FamilyParameterError):
        parse_family("k:2,3")


def test_components_and_disjoint_union():
    assert components(complete(3)) == [0b111]
    assert components(edgeless(3)) == [0b001, 0b010, 0b100]
    u = disjoint_union([path(4), complete(2)])
    assert u.n == 6 and u.edge_count() == 4
    assert [vertex_list(c) for c in components(u)] == [[0, 1, 2, 3], [4, 5]]
    assert disjoint_union([]).n == 0
    v = disjoint_union([complete(3), edgeless(1)])
    assert v.n == 4 and v.edge_count() == 3


def test_edge_list_format():
    assert from_edge_list(b"2\n0 1").adj == complete(2).adj
    g = from_edge_list("4\n0 1\n1 2\n2 3\n")
    assert g.adj == path(4).adj
    with pytest.raises(GraphParseError):
        from_edge_list(b"3\n0 1\n1 5")
    with pytest.raises(GraphParseError):
        from_edge_list(b"3\n1 1")
    with pytest.raises(GraphParseError):
        from_edge_list(b"x\n0 1")
    err = None
    try:
        from_edge_list(b"3\n0 1\n2 9")
    except GraphParseError as e:
        err = e
    assert err is not None and err.offset == 6


def test_graph6_round_trip_families():
    fams = []
    for n in range(0, 9):
        fams += [complete(n), edgeless(n)]
        if n >= 1:
            fams.append(path(n))
        if n >= 3:
            fams.append(cycle(n))
    fams += [star(4), complete_bipartite(3, 4), matched_cliques(3)]
    for g in fams:
        data = to_graph6(g)
        back = from_graph6(data)
        assert back.n == g.n and back.adj == g.adj


@given(graphs(max_n=8))
@settings(max_examples=80)
def test_graph6_matches_networkx(g):
    data = to_graph6(g)
    ref = nx.from_graph6_bytes(data)
    assert ref.number_of_nodes() == g.n
    assert {tuple(sorted(e)) for e in ref.edges()} == set(g.edges())
    # and the reverse direction: networkx encodes, we decode
    encoded = nx.to_graph6_bytes(ref, header=False).strip()
    assert from_graph6(encoded).adj == g.adj


def test_graph6_large_size_field():
    g = edgeless(100)
    assert from_graph6(to_graph6(g)).n == 100


def test_graph6_errors():
    with pytest.raises(GraphParseError):
        from_graph6(b"")
    with pytest.raises(GraphParseError):
        from_graph6(b"C\x1f")
    with pytest.raises(GraphParseError):
        from_graph6(b"D?")  # truncated body
    assert from_graph6(b">>graph6<<Ch").adj == path(4).adj


def test_parse_serialize_dispatch():
    g = matched_cliques(2)
    for fmt in ("graph6", "edge_list"):
        assert parse_graph(serialize_graph(g, fmt), fmt).adj == g.adj
    with pytest.raises(ValueError):
        parse_graph(b"", "dot")


def test_structure_predicates():
    assert is_complete_graph(complete(4))
    assert not is_complete_graph(path(3))
    assert is_two_leaf_star(path(3))
    assert is_two_leaf_star(star(2))
    assert not is_two_leaf_star(complete(3))


def test_bits_helpers():
    assert list(bits(0b10110)) == [1, 2, 4]
    assert mask_of([0, 3]) == 0b1001
    assert vertex_list(0) == []


def test_canonical_form_limits():
    assert canonical_form(path(3)) == canonical_form(star(2))
    assert canonical_form(path(4)) != canonical_form(star(3))
    with pytest.raises(ValueError):
        canonical_form(edgeless(9))
