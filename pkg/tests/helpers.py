"""Random graph builders and small independent oracles shared by the tests."""

import heapq
import itertools
import random

import networkx as nx
from hypothesis import strategies as st

from laperm import Graph, OpIII
from laperm.transforms import lemma35_moves, op1_moves, op2_moves, op3_labelings


def prufer_tree(seq: list[int], n: int) -> Graph:
    """Decode a Prüfer sequence (textbook heap version, independent of laperm)."""
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph(2, [(0, 1)])
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Graph(n, edges)


def random_tree(r: random.Random, n: int) -> Graph:
    return prufer_tree([r.randrange(n) for _ in range(max(n - 2, 0))], n)


def random_bipartite_unicyclic(r: random.Random, n: int) -> Graph:
    """A random tree closed into an even cycle (needs n >= 4)."""
    while True:
        t = random_tree(r, n)
        nt = to_nx(t)
        pairs = [
            (u, v)
            for u, v in itertools.combinations(range(n), 2)
            if (d := nx.shortest_path_length(nt, u, v)) >= 3 and d % 2 == 1
        ]
        if pairs:
            u, v = r.choice(pairs)
            return t.rewire(add=[(u, v)])


def shuffled(r: random.Random, g: Graph) -> Graph:
    perm = list(range(g.n))
    r.shuffle(perm)
    return g.relabel(perm)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def laplacian_rows(g: Graph) -> list[list[int]]:
    return [[int(x) for x in row] for row in nx.laplacian_matrix(to_nx(g), nodelist=range(g.n)).toarray()]


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def trees(draw, lo: int = 1, hi: int = 12):
    n = draw(st.integers(lo, hi))
    return random_tree(random.Random(draw(seeds)), n)


@st.composite
def unicyclics(draw, lo: int = 4, hi: int = 12):
    n = draw(st.integers(lo, hi))
    return random_bipartite_unicyclic(random.Random(draw(seeds)), n)


def random_op3_subject(r: random.Random) -> Graph:
    """An even cycle of length >= 6 with pendants on at most two cycle vertices."""
    while True:
        n = r.randint(6, 12)
        length = r.choice([c for c in (6, 8, 10, 12) if c <= n])
        edges = [(i, (i + 1) % length) for i in range(length)]
        a, b = r.sample(range(length), 2)
        extra = n - length
        split = r.randint(0, extra)
        nxt = length
        for carrier, count in ((a, split), (b, extra - split)):
            for _ in range(count):
                edges.append((carrier, nxt))
                nxt += 1
        g = shuffled(r, Graph(n, edges))
        if next(op3_labelings(g), None) is not None:
            return g


def random_move(r: random.Random, kind: str):
    """(graph, move) with every precondition of the named move satisfied."""
    while True:
        n = r.randint(4, 12)
        if kind == "op3":
            g = random_op3_subject(r)
            return g, OpIII(r.choice(list(op3_labelings(g))))
        g = random_tree(r, n) if kind == "lemma35" or r.random() < 0.5 else random_bipartite_unicyclic(r, n)
        moves = list({"op1": op1_moves, "op2": op2_moves, "lemma35": lemma35_moves}[kind](g))
        if moves:
            return g, r.choice(moves)
