import itertools
import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import random_bipartite_unicyclic, random_tree, shuffled, to_nx, trees, unicyclics
from laperm import (
    DisconnectedInput,
    Graph,
    GraphKind,
    NotUnicyclic,
    ParseError,
    SizeBound,
    bipartition,
    canonical_form,
    classify,
    diameter,
    format_edge_list,
    format_graph6,
    matching_number,
    parse_edge_list,
    parse_graph6,
)
from laperm.graph import unicyclic_certificate, unique_cycle


@st.composite
def any_graph(draw, hi=9):
    n = draw(st.integers(0, hi))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(n, chosen)


def test_graph_normalizes_and_rejects():
    g = Graph(3, [(2, 0), (1, 2)])
    assert g.sorted_edges() == [(0, 2), (1, 2)]
    assert g.degrees() == [1, 1, 2]
    for bad in ([(0, 0)], [(0, 3)], [(0, 1), (1, 0)]):
        with pytest.raises(ValueError):
            Graph(3, bad)


def test_classify():
    assert classify(Graph(4, [(0, 1), (1, 2), (1, 3)])) is GraphKind.TREE
    assert classify(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])) is GraphKind.UNICYCLIC
    assert classify(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])) is GraphKind.OTHER
    with pytest.raises(DisconnectedInput):
        classify(Graph(4, [(0, 1), (2, 3)]))


def test_bipartition_sizes():
    b = bipartition(Graph(5, [(0, 1), (0, 2), (0, 3), (3, 4)]))
    assert b.pq == (2, 3)
    assert bipartition(Graph(3, [(0, 1), (1, 2), (2, 0)])) is None


@given(trees(2, 12))
def test_diameter_matches_networkx(t):
    assert diameter(t) == nx.diameter(to_nx(t))


@given(any_graph())
def test_matching_number_matches_networkx(g):
    assert matching_number(g) == len(nx.max_weight_matching(to_nx(g), maxcardinality=True))


def test_unique_cycle():
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)])
    assert unique_cycle(g) == [0, 1, 2, 3]
    with pytest.raises(NotUnicyclic):
        unique_cycle(Graph(3, [(0, 1), (1, 2)]))


# -- text formats ---------------------------------------------------------------


def test_edge_list_round_trip():
    g = Graph(5, [(0, 1), (1, 2), (3, 4), (1, 3)])
    assert parse_edge_list(format_edge_list(g)) == g


def test_edge_list_comments_and_blank_lines():
    g = parse_edge_list("# a path\n\n3\n0 1  # first\n1 2\n")
    assert g.sorted_edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 4\n", 1),
        ("x\n", 1),
        ("3\n0 1\n1\n", 3),
        ("3\n0 1\n1 x\n", 3),
        ("3\n0 3\n", 2),
        ("3\n\n1 1\n", 3),
        ("3\n0 1\n1 0\n", 3),
    ],
)
def test_edge_list_errors_cite_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_edge_list(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_edge_list_empty():
    with pytest.raises(ParseError):
        parse_edge_list("# nothing\n")


@given(any_graph(hi=70))
def test_graph6_round_trip(g):
    assert parse_graph6(format_graph6(g)) == g


@given(any_graph(hi=70))
def test_graph6_matches_networkx(g):
    expected = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert format_graph6(g) == expected


def test_graph6_header_and_errors():
    assert parse_graph6(">>graph6<<Bw\n").sorted_edges() == [(0, 1), (0, 2), (1, 2)]
    for bad in ("", "B", "B\x7f", "Bww"):
        with pytest.raises(ParseError):
            parse_graph6(bad)


# -- isomorphism ---------------------------------------------------------------------


@given(any_graph(hi=9), st.randoms(use_true_random=False))
def test_canonical_form_is_label_invariant(g, r):
    assert canonical_form(shuffled(r, g)) == canonical_form(g)


def test_canonical_form_agrees_with_networkx_isomorphism():
    r = random.Random(5)
    pool = []
    for n in range(5, 10):
        for _ in range(25):
            pool.append(random_tree(r, n))
            if n >= 4:
                pool.append(random_bipartite_unicyclic(r, n))
    for a, b in itertools.combinations(pool, 2):
        if a.n != b.n:
            continue
        same = canonical_form(a) == canonical_form(b)
        assert same == nx.is_isomorphic(to_nx(a), to_nx(b))


def test_canonical_form_on_regular_graphs():
    # vertex-transitive inputs stress the refinement search
    petersen = Graph(10, nx.petersen_graph().edges)
    cube = Graph(8, nx.convert_node_labels_to_integers(nx.hypercube_graph(3)).edges)
    r = random.Random(1)
    for g in (petersen, cube):
        assert canonical_form(shuffled(r, g)) == canonical_form(g)
    c8 = Graph(8, [(i, (i + 1) % 8) for i in range(8)])
    two_c4 = Graph(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)])
    assert canonical_form(c8) != canonical_form(two_c4)


def test_canonical_form_size_bound():
    with pytest.raises(SizeBound):
        canonical_form(Graph(40))


@given(unicyclics(4, 14), st.randoms(use_true_random=False))
def test_unicyclic_certificate_is_label_invariant(g, r):
    assert unicyclic_certificate(shuffled(r, g)) == unicyclic_certificate(g)


def test_unicyclic_certificate_is_exact():
    r = random.Random(9)
    pool = [random_bipartite_unicyclic(r, n) for n in (8, 9) for _ in range(60)]
    for a, b in itertools.combinations(pool, 2):
        if a.n == b.n:
            assert (unicyclic_certificate(a) == unicyclic_certificate(b)) == (canonical_form(a) == canonical_form(b))
