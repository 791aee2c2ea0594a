"""Labeled simple undirected graphs and the structural queries used throughout.

Vertices are the integers ``0..n-1``.  Graph values are immutable; every
rewrite returns a new graph.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from ._limits import bound
from .errors import (
    DisconnectedInput,
    NotUnicyclic,
    ParseError,
    SizeBound,
)

Edge = tuple[int, int]


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``edges`` is a frozenset of ``(u, v)`` pairs with ``u < v``; ``adj`` holds
    sorted neighbor tuples derived from it.
    """

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has a label outside 0..{n - 1}")
            e = (u, v) if u < v else (v, u)
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm.add(e)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in norm:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges = frozenset(norm)
        self.adj = tuple(tuple(sorted(x)) for x in nbrs)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def rewire(self, remove: Iterable[Edge] = (), add: Iterable[Edge] = ()) -> "Graph":
        """Return a copy with ``remove`` deleted and then ``add`` inserted."""
        es = set(self.edges)
        for u, v in remove:
            e = (min(u, v), max(u, v))
            if e not in es:
                raise ValueError(f"edge {e} not present")
            es.discard(e)
        for u, v in add:
            e = (min(u, v), max(u, v))
            if e in es:
                raise ValueError(f"edge {e} already present")
            es.add(e)
        return Graph(self.n, es)

    def relabel(self, perm: list[int] | tuple[int, ...]) -> "Graph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


class GraphKind(enum.Enum):
    TREE = "Tree"
    UNICYCLIC = "Unicyclic"
    OTHER = "Other"


@dataclass(frozen=True)
class Bipartition:
    """Two-coloring normalized so that ``class_a`` is the smaller class."""

    class_a: frozenset[int]
    class_b: frozenset[int]

    @property
    def p(self) -> int:
        return len(self.class_a)

    @property
    def q(self) -> int:
        return len(self.class_b)

    @property
    def pq(self) -> tuple[int, int]:
        return self.p, self.q


def _components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return len(_components(g)) <= 1


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedInput(f"graph on {g.n} vertices is disconnected")


def classify(g: Graph) -> GraphKind:
    _require_connected(g)
    if g.m == g.n - 1:
        return GraphKind.TREE
    if g.m == g.n:
        return GraphKind.UNICYCLIC
    return GraphKind.OTHER


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def is_unicyclic(g: Graph) -> bool:
    return g.m == g.n and is_connected(g)


def bipartition(g: Graph) -> Bipartition | None:
    """The 2-coloring of a connected graph, or ``None`` if an odd cycle exists."""
    _require_connected(g)
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    zero = frozenset(v for v in range(g.n) if color[v] == 0)
    one = frozenset(v for v in range(g.n) if color[v] == 1)
    if len(one) < len(zero):
        zero, one = one, zero
    return Bipartition(zero, one)


def pendant_vertices(g: Graph) -> frozenset[int]:
    return frozenset(v for v in range(g.n) if len(g.adj[v]) == 1)


def bfs_distances(g: Graph, source: int) -> list[int | None]:
    dist: list[int | None] = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if dist[y] is None:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def distance(g: Graph, u: int, v: int) -> int | None:
    """Edge count of a shortest u-v path; ``None`` when v is unreachable."""
    return bfs_distances(g, u)[v]


def diameter(g: Graph) -> int:
    best = 0
    for s in range(g.n):
        for d in bfs_distances(g, s):
            if d is not None and d > best:
                best = d
    return best


def unique_cycle(g: Graph) -> list[int]:
    """Vertices of the only cycle, in traversal order from its smallest label."""
    if not is_unicyclic(g):
        raise NotUnicyclic(f"graph with n={g.n}, m={g.m} is not unicyclic")
    deg = g.degrees()
    alive = [True] * g.n
    leaves = [v for v in range(g.n) if deg[v] == 1]
    while leaves:
        x = leaves.pop()
        alive[x] = False
        for y in g.adj[x]:
            if alive[y]:
                deg[y] -= 1
                if deg[y] == 1:
                    leaves.append(y)
    on_cycle = [v for v in range(g.n) if alive[v]]
    start = on_cycle[0]
    order = [start]
    prev, cur = None, start
    while True:
        nxt = [y for y in g.adj[cur] if alive[y] and y != prev]
        step = min(nxt)
        if step == start:
            break
        order.append(step)
        prev, cur = cur, step
        if len(order) > len(on_cycle):
            raise AssertionError("cycle traversal did not close")
    return order


def matching_number(g: Graph, max_n: int | None = None) -> int:
    limit = bound("matching", max_n)
    if g.n > limit:
        raise SizeBound(f"matching_number supports n <= {limit}, got {g.n}")
    nbr_masks = [sum(1 << y for y in g.adj[v]) for v in range(g.n)]

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if mask == 0:
            return 0
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        result = best(rest)
        avail = nbr_masks[v] & rest
        while avail:
            low = avail & -avail
            result = max(result, 1 + best(rest & ~low))
            avail ^= low
        return result

    return best((1 << g.n) - 1)


# -- canonical form ---------------------------------------------------------


def _refine(adj: tuple[tuple[int, ...], ...], colors: list[int]) -> list[int]:
    # colors are dense ranks; the returned coloring is equitable and its rank
    # order is a function of the input coloring only.
    k = len(set(colors))
    n = len(adj)
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        if len(ranks) == k:
            return colors
        colors = [ranks[s] for s in sigs]
        k = len(ranks)


def _individualize(colors: list[int], v: int) -> list[int]:
    c = colors[v]
    out = [x + 1 if x > c else x for x in colors]
    for w, x in enumerate(colors):
        if x == c and w != v:
            out[w] = c + 1
    return out


def _code(g: Graph, pos: list[int]) -> int:
    n = g.n
    code = 0
    total = n * (n - 1) // 2
    for u, v in g.edges:
        i, j = pos[u], pos[v]
        if i > j:
            i, j = j, i
        idx = i * n - i * (i + 1) // 2 + (j - i - 1)
        code |= 1 << (total - 1 - idx)
    return code


def _orbit_roots(n: int, gens: list[list[int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in gens:
        for x in range(n):
            a, b = find(x), find(gamma[x])
            if a != b:
                parent[a] = b
    return [find(x) for x in range(n)]


def canonical_form(g: Graph, max_n: int | None = None) -> bytes:
    """Byte string equal for two graphs exactly when they are isomorphic.

    Minimum upper-triangle adjacency encoding over all labelings reached by
    an individualization-refinement search.  Branches equivalent under
    automorphisms discovered during the search are skipped.
    """
    limit = bound("canonical", max_n)
    if g.n > limit:
        raise SizeBound(f"canonical_form supports n <= {limit}, got {g.n}")
    n = g.n
    total = n * (n - 1) // 2
    width = (total + 7) // 8
    header = n.to_bytes(2, "big")
    if n <= 1:
        return header

    state: dict = {"first": None, "best": None}
    autos: list[list[int]] = []

    def divergence(a: list[int], b: list[int]) -> int:
        i = 0
        while i < len(a) and i < len(b) and a[i] == b[i]:
            i += 1
        return i

    def at_leaf(pos: list[int], path: list[int]) -> int | None:
        code = _code(g, pos)
        if state["first"] is None:
            state["first"] = state["best"] = (code, pos, path)
            return None
        for key in ("first", "best"):
            ref_code, ref_pos, ref_path = state[key]
            if code == ref_code:
                inv = [0] * n
                for v, p in enumerate(ref_pos):
                    inv[p] = v
                autos.append([inv[pos[v]] for v in range(n)])
                return divergence(path, ref_path)
        if code < state["best"][0]:
            state["best"] = (code, pos, path)
        return None

    def search(colors: list[int], path: list[int]) -> int | None:
        colors = _refine(g.adj, colors)
        if len(set(colors)) == n:
            return at_leaf(colors, path)
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        cell = [v for v in range(n) if colors[v] == target]
        explored: list[int] = []
        depth = len(path)
        for v in cell:
            if explored:
                fixing = [a for a in autos if all(a[x] == x for x in path)]
                if fixing:
                    roots = _orbit_roots(n, fixing)
                    if roots[v] in {roots[e] for e in explored}:
                        continue
            ret = search(_individualize(colors, v), path + [v])
            explored.append(v)
            if ret is not None and ret < depth:
                return ret
        return None

    search([0] * n, [])
    return header + state["best"][0].to_bytes(width, "big")


# -- text formats -----------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` on the first data line, then one ``u v`` pair per line."""
    n: int | None = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise ParseError("expected vertex count on first line", lineno)
            try:
                n = int(fields[0])
            except ValueError:
                raise ParseError(f"vertex count {fields[0]!r} is not an integer", lineno) from None
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1} in {line!r}", lineno)
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise ParseError(f"duplicate edge {e}", lineno)
        seen.add(e)
        edges.append(e)
    if n is None:
        raise ParseError("empty input: missing vertex count")
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    if not data:
        raise ParseError("empty graph6 string")
    vals = [ord(c) - 63 for c in data]
    if any(x < 0 or x > 63 for x in vals):
        raise ParseError("graph6 byte outside the printable range 63..126")
    if vals[0] < 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    elif len(vals) >= 8:
        n = 0
        for x in vals[2:8]:
            n = (n << 6) | x
        body = vals[8:]
    else:
        raise ParseError("truncated graph6 size field")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {need}")
    bits = []
    for x in body:
        bits.extend((x >> s) & 1 for s in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def format_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = [n]
    elif n < 258048:
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        head = [63, 63] + [(n >> s) & 63 for s in range(30, -1, -6)]
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = [int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)]
    return "".join(chr(x + 63) for x in head + body)


def unicyclic_certificate(g: Graph) -> tuple[str, ...]:
    """Exact isomorphism certificate for a unicyclic graph.

    Each cycle vertex contributes the AHU code of the tree hanging from it;
    the certificate is the least rotation or reflection of that sequence.
    """
    if not is_unicyclic(g):
        raise NotUnicyclic(f"graph with n={g.n}, m={g.m} is not unicyclic")
    cyc = unique_cycle(g)
    on_cycle = set(cyc)

    def code(v: int, parent: int) -> str:
        kids = sorted(code(c, v) for c in g.adj[v] if c != parent and c not in on_cycle)
        return "(" + "".join(kids) + ")"

    seq = [code(c, -1) for c in cyc]
    variants = []
    for s in (seq, seq[::-1]):
        for i in range(len(s)):
            variants.append(tuple(s[i:] + s[:i]))
    return min(variants)
