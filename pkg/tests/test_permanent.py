import itertools
import math
import random

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from helpers import laplacian_rows, random_bipartite_unicyclic, random_tree, shuffled, trees, unicyclics
from laperm import (
    Dominance,
    Graph,
    NotATree,
    NotUnicyclic,
    OrderMismatch,
    SizeBound,
    char_poly,
    dominance_compare,
    laplacian,
    laplacian_permanent,
    permanent_naive,
    permanent_ryser,
    spanning_tree_count,
    tree_permanent,
    unicyclic_permanent,
)
from laperm.permanent import CharPoly, determinant, q_matrix, q_permanent


def perm_by_definition(m):
    n = len(m)
    return sum(math.prod(m[i][s[i]] for i in range(n)) for s in itertools.permutations(range(n)))


small_matrices = st.integers(0, 7).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(small_matrices)
def test_naive_matches_definition(m):
    assert permanent_naive(m) == perm_by_definition(m)


def test_ryser_matches_naive_on_random_matrices():
    r = random.Random(3)
    for _ in range(500):
        n = r.randint(1, 8)
        m = [[r.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        assert permanent_ryser(m) == permanent_naive(m)


def test_ryser_big_entries_fall_back_to_exact_integers():
    # int64 would overflow here; the result must still be exact
    m = [[10**12 + i * j for j in range(6)] for i in range(6)]
    assert permanent_ryser(m) == permanent_naive(m)
    big = [[3**40 if i == j else 1 for j in range(4)] for i in range(4)]
    assert permanent_ryser(big) == perm_by_definition(big)


def test_ryser_int64_path_agrees_with_python_path():
    from laperm.permanent import _ryser_int64, _ryser_python

    r = random.Random(8)
    for _ in range(40):
        n = r.randint(2, 12)
        m = [[r.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        assert _ryser_int64(m) == _ryser_python(m)


def test_empty_and_known_permanents():
    assert permanent_ryser([]) == 1
    assert permanent_naive([]) == 1
    assert permanent_ryser([[1] * 6 for _ in range(6)]) == 720
    j = np.ones((5, 5), dtype=int) - np.eye(5, dtype=int)
    assert permanent_ryser(j.tolist()) == 44  # derangements of 5


def test_size_bounds(monkeypatch):
    with pytest.raises(SizeBound):
        permanent_naive([[0] * 10 for _ in range(10)])
    monkeypatch.setenv("LAPERM_MAX_N", "3")
    with pytest.raises(SizeBound):
        permanent_ryser([[0] * 4 for _ in range(4)])


def test_laplacian_matches_networkx():
    r = random.Random(2)
    for n in range(1, 10):
        g = random_tree(r, n)
        assert laplacian(g) == laplacian_rows(g)


@given(trees(1, 13))
def test_tree_permanent_matches_ryser(t):
    assert tree_permanent(t) == permanent_ryser(laplacian(t))


@given(trees(1, 11), st.randoms(use_true_random=False))
def test_tree_permanent_independent_of_root(t, r):
    assert tree_permanent(t, root=r.randrange(t.n)) == tree_permanent(t)


@given(unicyclics(4, 13))
def test_unicyclic_permanent_matches_ryser(g):
    assert unicyclic_permanent(g) == permanent_ryser(laplacian(g))


def test_unicyclic_permanent_on_odd_cycles():
    r = random.Random(4)
    for n in range(3, 12):
        for _ in range(5):
            t = random_tree(r, n)
            extra = [(u, v) for u, v in itertools.combinations(range(n), 2) if not t.has_edge(u, v)]
            if not extra:
                continue
            g = t.rewire(add=[r.choice(extra)])
            assert unicyclic_permanent(g) == permanent_ryser(laplacian(g))


def test_specialized_paths_reject_wrong_shapes():
    c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(NotATree):
        tree_permanent(c4)
    with pytest.raises(NotUnicyclic):
        unicyclic_permanent(Graph(3, [(0, 1), (1, 2)]))


def test_dispatch_is_label_invariant():
    r = random.Random(11)
    for n in range(4, 12):
        g = random_bipartite_unicyclic(r, n)
        assert laplacian_permanent(shuffled(r, g)) == laplacian_permanent(g)
    k4 = Graph(4, list(itertools.combinations(range(4), 2)))
    assert laplacian_permanent(k4) == perm_by_definition(laplacian(k4))


def test_small_values():
    assert laplacian_permanent(Graph(1)) == 0
    assert laplacian_permanent(Graph(2, [(0, 1)])) == 2
    assert laplacian_permanent(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])) == 36


def test_q_matrix_permanents():
    # Q_n is tridiagonal, so its permanent is a continuant; check against Ryser
    for n in range(0, 12):
        assert q_permanent(n) == permanent_ryser(q_matrix(n))


# -- determinants and coefficients ------------------------------------------------


@given(st.integers(1, 7).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_sympy(m):
    assert determinant(m) == sympy.Matrix(m).det()


@given(trees(1, 10))
def test_char_poly_matches_sympy(t):
    lam = sympy.Symbol("x")
    poly = sympy.Matrix(laplacian(t)).charpoly(lam).all_coeffs()
    assert char_poly(t).monic() == [int(c) for c in poly]


def test_char_poly_of_unicyclic_matches_sympy():
    r = random.Random(6)
    lam = sympy.Symbol("x")
    for n in range(4, 10):
        g = random_bipartite_unicyclic(r, n)
        poly = sympy.Matrix(laplacian(g)).charpoly(lam).all_coeffs()
        assert char_poly(g).monic() == [int(c) for c in poly]


@given(unicyclics(4, 10))
def test_coefficient_identities(g):
    c = char_poly(g)
    assert c[0] == 1
    assert c[1] == 2 * g.m
    assert c[g.n] == 0
    assert c[g.n - 1] == g.n * spanning_tree_count(g)


def test_spanning_tree_count():
    k5 = Graph(5, list(itertools.combinations(range(5), 2)))
    assert spanning_tree_count(k5) == 125
    assert spanning_tree_count(Graph(6, [(i, (i + 1) % 6) for i in range(6)])) == 6


def test_dominance_compare():
    a, b = CharPoly((1, 4, 3, 0)), CharPoly((1, 4, 4, 0))
    assert dominance_compare(a, b) is Dominance.STRICTLY_A_DOMINATED
    assert dominance_compare(b, a) is Dominance.STRICTLY_B_DOMINATED
    assert dominance_compare(a, a) is Dominance.EQUAL
    assert dominance_compare(CharPoly((1, 5, 3, 0)), b) is Dominance.INCOMPARABLE
    with pytest.raises(OrderMismatch):
        dominance_compare(a, CharPoly((1, 0)))
