import itertools
import math

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from helpers import prufer_tree, to_nx
from laperm import (
    ClassKind,
    ClassQuery,
    SizeBound,
    bipartition,
    build,
    canonical_form,
    diameter,
    enumerate_class,
    laplacian_permanent,
    matching_number,
    rank_by_permanent,
    recognize,
)
from laperm import _limits
from laperm import enumeration as en
from laperm import families as fam
from laperm.graph import is_tree, is_unicyclic, unicyclic_certificate

TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159]


def automorphisms(g) -> int:
    h = to_nx(g)
    return sum(1 for _ in GraphMatcher(h, h).isomorphisms_iter())


def labeled_even_unicyclic(n: int) -> int:
    # choose the cycle (k-1)!/2 ways on k labels, hang a rooted forest: k n^(n-k-1)
    return sum(math.comb(n, k) * math.factorial(k - 1) // 2 * k * n ** (n - k - 1) for k in range(4, n + 1, 2))


def test_tree_counts():
    for n, expected in enumerate(TREE_COUNTS, start=1):
        assert len(en.trees(n)) == expected


@pytest.mark.parametrize("n", range(1, 10))
def test_trees_weighted_by_automorphisms_give_cayley(n):
    total = sum(math.factorial(n) // automorphisms(t) for t in en.trees(n))
    assert total == n ** (n - 2) if n >= 2 else total == 1


@pytest.mark.parametrize("n", range(4, 10))
def test_unicyclic_weighted_by_automorphisms_give_labeled_count(n):
    total = sum(math.factorial(n) // automorphisms(g) for g in en.bipartite_unicyclic(n))
    assert total == labeled_even_unicyclic(n)


def test_prufer_oracle_up_to_seven():
    for n in range(2, 8):
        seen = {canonical_form(prufer_tree(list(s), n)) for s in itertools.product(range(n), repeat=n - 2)}
        assert seen == {canonical_form(t) for t in en.trees(n)}


def test_generated_members_are_distinct_and_well_formed():
    for n in range(4, 12):
        keys = [canonical_form(t) for t in en.trees(n)]
        assert len(set(keys)) == len(keys)
        assert all(is_tree(t) for t in en.trees(n))
        us = en.bipartite_unicyclic(n)
        assert all(is_unicyclic(g) and bipartition(g) is not None for g in us)
        assert len({canonical_form(g) for g in us}) == len(us)


def test_unicyclic_against_networkx_brute_force():
    for n in range(4, 9):
        found: list[nx.Graph] = []
        for t in nx.nonisomorphic_trees(n):
            for u, v in itertools.combinations(range(n), 2):
                d = nx.shortest_path_length(t, u, v)
                if d >= 3 and d % 2:
                    g = t.copy()
                    g.add_edge(u, v)
                    if not any(nx.is_isomorphic(g, h) for h in found):
                        found.append(g)
        assert len(en.bipartite_unicyclic(n)) == len(found)


def test_filters():
    q = ClassQuery(ClassKind.TREES, 10, bipartition=(3, 7), diameter_at_least=4, matching_number=3)
    members = list(enumerate_class(q))
    assert members
    for t in members:
        assert bipartition(t).pq == (3, 7) and diameter(t) >= 4 and matching_number(t) == 3
    everything = en.trees(10)
    expected = [t for t in everything if bipartition(t).pq == (3, 7) and diameter(t) >= 4 and matching_number(t) == 3]
    assert len(members) == len(expected)
    by_split = sum(len(en.bipartite_unicyclic(9, bipartition=(p, 9 - p))) for p in range(2, 5))
    assert by_split == len(en.bipartite_unicyclic(9))


def test_size_bounds(monkeypatch):
    with pytest.raises(SizeBound):
        list(enumerate_class(ClassQuery(ClassKind.TREES, 40)))
    monkeypatch.setenv("LAPERM_MAX_N", "5")
    with pytest.raises(SizeBound):
        list(enumerate_class(ClassQuery(ClassKind.BIPARTITE_UNICYCLIC, 6)))


def test_pendant_growth_matches_direct_enumeration(monkeypatch):
    direct = {q: {unicyclic_certificate(g) for g in en.bipartite_unicyclic(3 + q, bipartition=(3, q))} for q in range(4, 10)}
    direct4 = {unicyclic_certificate(g) for g in en.bipartite_unicyclic(11, bipartition=(4, 7))}
    monkeypatch.setitem(_limits.DEFAULTS, "unicyclic", 8)
    en.grow_unicyclic.cache_clear()
    try:
        for q, certs in direct.items():
            assert {unicyclic_certificate(g) for g in en.grow_unicyclic(3, q)} == certs
        assert {unicyclic_certificate(g) for g in en.grow_unicyclic(4, 7)} == direct4
    finally:
        en.grow_unicyclic.cache_clear()


def test_rank_by_permanent_tree_example():
    result = rank_by_permanent(ClassQuery(ClassKind.TREES, 8, bipartition=(3, 5)), 3)
    assert result.class_size == 10
    assert [e.value for e in result.entries] == [46, 78, 94]
    assert [e.label() for e in result.entries] == ["D(3,5)", "D'(2,4)", "D''(2,4)"]


def test_rank_orders_whole_class():
    q = ClassQuery(ClassKind.BIPARTITE_UNICYCLIC, 8)
    result = rank_by_permanent(q, 10**6)
    values = [e.value for e in result.entries]
    assert values == sorted(values)
    assert values == sorted(laplacian_permanent(g) for g in enumerate_class(q))


def test_threads_give_identical_ranking():
    q = ClassQuery(ClassKind.TREES, 11)
    one = rank_by_permanent(q, 40)
    two = rank_by_permanent(q, 40, threads=2)
    assert [(e.value, e.key) for e in one.entries] == [(e.value, e.key) for e in two.entries]


def test_recognize():
    names = [str(s) for s in recognize(build(fam.C4(0, 0, 0, 0, 0, 0, 0, 0)))]
    assert names[0] == "B(2,2)" and "C(4)" in names
    p4 = [str(s) for s in recognize(build(fam.P(4)))]
    assert "P(4)" in p4 and "D(2,2)" in p4
    assert recognize(build(fam.FamilySpec("Cycle", (10,)))) != ()
