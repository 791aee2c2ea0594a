"""Exact permanents, Laplacians, Laplacian coefficients and spanning-tree counts.

Every value is a Python ``int`` (or ``Fraction`` only transiently during
interpolation); nothing here touches floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial, prod

import numpy as np

from ._limits import bound
from .errors import NotATree, NotUnicyclic, OrderMismatch, SizeBound
from .graph import Graph, _require_connected, is_tree, is_unicyclic, unique_cycle

Matrix = list[list[int]]


def laplacian(g: Graph) -> Matrix:
    mat = [[0] * g.n for _ in range(g.n)]
    for v in range(g.n):
        mat[v][v] = len(g.adj[v])
        for u in g.adj[v]:
            mat[v][u] = -1
    return mat


def _order(m: Matrix) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    return n


def permanent_naive(m: Matrix, max_n: int | None = None) -> int:
    """Sum over all permutations; the definitional oracle."""
    n = _order(m)
    limit = bound("naive", max_n)
    if n > limit:
        raise SizeBound(f"permanent_naive supports order <= {limit}, got {n}")
    return sum(prod(m[i][s[i]] for i in range(n)) for s in permutations(range(n)))


def _ryser_python(m: Matrix) -> int:
    n = len(m)
    sums = [0] * n
    in_set = [False] * n
    total = 0
    size = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        if in_set[j]:
            in_set[j] = False
            size -= 1
            for i in range(n):
                sums[i] -= m[i][j]
        else:
            in_set[j] = True
            size += 1
            for i in range(n):
                sums[i] += m[i][j]
        term = prod(sums)
        total += -term if size & 1 else term
    return -total if n & 1 else total


_CHUNK = 1 << 15


def _ryser_int64(m: Matrix) -> int:
    # Same Gray-code walk as _ryser_python, with each chunk's column-sum
    # updates applied by a cumulative sum.
    n = len(m)
    cols = np.array(m, dtype=np.int64).T
    running = np.zeros(n, dtype=np.int64)
    size = 0
    total = 0
    k = 1
    stop = 1 << n
    while k < stop:
        hi = min(stop, k + _CHUNK)
        ks = np.arange(k, hi, dtype=np.int64)
        bits = np.log2(ks & -ks).astype(np.int64)
        # membership of bit j before step k is the parity of how often j flipped
        prior = ((ks - 1) >> bits) + 1 >> 1
        adding = (prior & 1) == 0
        steps = np.where(adding[:, None], cols[bits], -cols[bits])
        sums = running + np.cumsum(steps, axis=0)
        sizes = size + np.cumsum(np.where(adding, 1, -1))
        terms = np.prod(sums, axis=1)
        signs = np.where(sizes & 1, -1, 1)
        total += int(np.dot(terms, signs))
        running = sums[-1].copy()
        size = int(sizes[-1])
        k = hi
    return -total if n & 1 else total


def _int64_safe(m: Matrix) -> bool:
    n = len(m)
    row_bound = prod(sum(abs(x) for x in row) for row in m)
    return (row_bound << (n + 1)) < (1 << 62)


def permanent_ryser(m: Matrix, max_n: int | None = None) -> int:
    """Ryser inclusion-exclusion over column subsets in Gray-code order.

    Uses a vectorized int64 walk when a row-sum bound proves no overflow,
    and Python integers otherwise.
    """
    n = _order(m)
    limit = bound("ryser", max_n)
    if n > limit:
        raise SizeBound(f"permanent_ryser supports order <= {limit}, got {n}")
    if n == 0:
        return 1
    if n >= 6 and _int64_safe(m):
        return _ryser_int64(m)
    return _ryser_python(m)


def tree_permanent(g: Graph, root: int = 0) -> int:
    """per L(T) of a tree in linear time.

    Each vertex carries ``a`` (permanent of its subtree block, degrees taken
    in the whole tree) and ``b`` (same with the vertex deleted).
    """
    if not is_tree(g):
        raise NotATree(f"graph with n={g.n}, m={g.m} is not a tree")
    if g.n == 1:
        return 0
    parent = [-1] * g.n
    order = [root]
    parent[root] = root
    for x in order:
        for y in g.adj[x]:
            if parent[y] < 0:
                parent[y] = x
                order.append(y)
    a = [0] * g.n
    b = [0] * g.n
    for v in reversed(order):
        kids = [c for c in g.adj[v] if parent[c] == v and c != v]
        k = len(kids)
        prefix = [1] * (k + 1)
        for i, c in enumerate(kids):
            prefix[i + 1] = prefix[i] * a[c]
        suffix = 1
        matched = 0
        for i in range(k - 1, -1, -1):
            c = kids[i]
            matched += b[c] * prefix[i] * suffix
            suffix *= a[c]
        b[v] = prefix[k]
        a[v] = len(g.adj[v]) * b[v] + matched
    return a[root]


def _hanging_weights(g: Graph, core: set[int]) -> tuple[dict[int, int], dict[int, int]]:
    """For each core vertex c, fold the trees hanging off it.

    ``keep[c]`` is the weight when c stays in the core permutation,
    ``taken[c]`` the weight when c is matched into one of its hanging trees.
    """
    a = [0] * g.n
    b = [0] * g.n
    parent = [-1] * g.n
    order: list[int] = []
    for c in core:
        parent[c] = c
    frontier = list(core)
    for x in frontier:
        for y in g.adj[x]:
            if parent[y] < 0:
                parent[y] = x
                frontier.append(y)
                order.append(y)
    for v in reversed(order):
        kids = [c for c in g.adj[v] if parent[c] == v]
        b[v] = prod(a[c] for c in kids)
        matched = sum(b[c] * prod(a[o] for o in kids if o != c) for c in kids)
        a[v] = len(g.adj[v]) * b[v] + matched
    keep, taken = {}, {}
    for c in core:
        kids = [x for x in g.adj[c] if x not in core and parent[x] == c]
        keep[c] = prod(a[x] for x in kids)
        taken[c] = sum(b[x] * prod(a[o] for o in kids if o != x) for x in kids)
    return keep, taken


def unicyclic_permanent(g: Graph) -> int:
    """per L(G) for a connected unicyclic graph in linear time.

    After folding the hanging trees, the cycle contributes a weighted
    monomer-dimer sum plus the two full rotations of the cycle.
    """
    if not is_unicyclic(g):
        raise NotUnicyclic(f"graph with n={g.n}, m={g.m} is not unicyclic")
    cyc = unique_cycle(g)
    r = len(cyc)
    keep, taken = _hanging_weights(g, set(cyc))
    mono = [keep[c] * len(g.adj[c]) + taken[c] for c in cyc]
    dimer = [keep[cyc[i]] * keep[cyc[(i + 1) % r]] for i in range(r)]

    def path_sum(lo: int, hi: int) -> int:
        # monomer-dimer sum over cyc[lo..hi]
        prev, cur = 1, 1
        for i in range(lo, hi + 1):
            nxt = mono[i] * cur + (dimer[i - 1] * prev if i > lo else 0)
            prev, cur = cur, nxt
        return cur

    open_ring = path_sum(0, r - 1)
    closing = dimer[r - 1] * (path_sum(1, r - 2) if r > 2 else 1)
    rotations = 2 * (-1) ** r * prod(keep.values())
    return open_ring + closing + rotations


def laplacian_permanent(g: Graph) -> int:
    """per L(G), routed through the tree or unicyclic recurrence when one applies."""
    if g.n >= 1 and is_tree(g):
        return tree_permanent(g)
    if g.n >= 3 and is_unicyclic(g):
        return unicyclic_permanent(g)
    return permanent_ryser(laplacian(g))


def q_permanent(n: int) -> int:
    """per Q_n by q_n = 2 q_{n-1} + q_{n-2}, q_0 = q_1 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    prev, cur = 1, 1
    for _ in range(n - 1):
        prev, cur = cur, 2 * cur + prev
    return cur if n >= 1 else prev


def q_matrix(n: int) -> Matrix:
    """Q_n: L(P_{n+1}) with its first row and column removed."""
    if n < 0:
        raise ValueError("n must be non-negative")
    path = Graph(n + 1, [(i, i + 1) for i in range(n)])
    return [row[1:] for row in laplacian(path)[1:]]


def determinant(m: Matrix) -> int:
    """Fraction-free Bareiss elimination with row pivoting."""
    n = _order(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class CharPoly:
    """Laplacian coefficients: det(xI - L) = sum_k (-1)^k c_k x^(n-k)."""

    coeffs: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def monic(self) -> list[int]:
        """Ordinary coefficients, highest degree first."""
        return [(-1) ** k * c for k, c in enumerate(self.coeffs)]


def char_poly(g: Graph, max_n: int | None = None) -> CharPoly:
    """Laplacian coefficients from exact evaluations at x = 0..n.

    Values come from Bareiss determinants of xI - L; the Newton forward
    difference table turns them back into monomial coefficients.
    """
    n = g.n
    limit = bound("char_poly", max_n)
    if n > limit:
        raise SizeBound(f"char_poly supports n <= {limit}, got {n}")
    lap = laplacian(g)
    values = []
    for x in range(n + 1):
        shifted = [[(x if i == j else 0) - lap[i][j] for j in range(n)] for i in range(n)]
        values.append(determinant(shifted))
    # forward differences: P(x) = sum_k D_k * C(x, k)
    diffs = []
    row = values
    while row:
        diffs.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    poly = [Fraction(0)] * (n + 1)  # poly[i] multiplies x^i
    falling = [Fraction(1)]  # x(x-1)...(x-k+1), low degree first
    for k, d in enumerate(diffs):
        scale = Fraction(d, factorial(k))
        for i, c in enumerate(falling):
            poly[i] += scale * c
        nxt = [Fraction(0)] * (len(falling) + 1)
        for i, c in enumerate(falling):
            nxt[i + 1] += c
            nxt[i] -= k * c
        falling = nxt
    if any(c.denominator != 1 for c in poly):
        raise AssertionError("interpolated characteristic polynomial is not integral")
    ints = [int(c) for c in poly]
    return CharPoly(tuple((-1) ** k * ints[n - k] for k in range(n + 1)))


def spanning_tree_count(g: Graph, max_n: int | None = None) -> int:
    _require_connected(g)
    limit = bound("char_poly", max_n)
    if g.n > limit:
        raise SizeBound(f"spanning_tree_count supports n <= {limit}, got {g.n}")
    if g.n <= 1:
        return 1
    lap = laplacian(g)
    return determinant([row[1:] for row in lap[1:]])


class Dominance(enum.Enum):
    EQUAL = "Equal"
    STRICTLY_A_DOMINATED = "StrictlyADominated"
    STRICTLY_B_DOMINATED = "StrictlyBDominated"
    INCOMPARABLE = "Incomparable"


def dominance_compare(a: CharPoly, b: CharPoly) -> Dominance:
    """Coefficient-wise comparison.

    ``a`` dominated by ``b`` (non-strict) holds exactly for EQUAL and
    STRICTLY_A_DOMINATED.
    """
    if a.n != b.n:
        raise OrderMismatch(f"orders differ: {a.n} vs {b.n}")
    le = all(x <= y for x, y in zip(a.coeffs, b.coeffs))
    ge = all(x >= y for x, y in zip(a.coeffs, b.coeffs))
    if le and ge:
        return Dominance.EQUAL
    if le:
        return Dominance.STRICTLY_A_DOMINATED
    if ge:
        return Dominance.STRICTLY_B_DOMINATED
    return Dominance.INCOMPARABLE
