"""Isomorphism-free generation of trees and bipartite unicyclic graphs.

Free trees come from canonical level sequences (Wright-Richmond-Odlyzko-McKay
successor rule over centrally rooted trees); bipartite unicyclic graphs are
every tree plus one even-cycle-closing edge, deduplicated by an exact
cycle-of-rooted-trees certificate.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from . import families as fam
from ._limits import bound
from .errors import LapermError, SizeBound
from .families import FamilySpec
from .graph import (
    Graph,
    bfs_distances,
    bipartition,
    canonical_form,
    diameter,
    matching_number,
    unicyclic_certificate,
)
from .permanent import laplacian_permanent


class ClassKind(enum.Enum):
    TREES = "Trees"
    BIPARTITE_UNICYCLIC = "BipartiteUnicyclic"


@dataclass(frozen=True)
class ClassQuery:
    kind: ClassKind
    n: int
    bipartition: tuple[int, int] | None = None
    diameter_at_least: int | None = None
    matching_number: int | None = None

    def describe(self) -> str:
        name = "T" if self.kind is ClassKind.TREES else "U"
        parts = [f"{name}_{self.n}"]
        if self.bipartition:
            parts.append("^{%d,%d}" % self.bipartition)
        if self.diameter_at_least is not None:
            parts.append(f" diam>={self.diameter_at_least}")
        if self.matching_number is not None:
            parts.append(f" matching={self.matching_number}")
        return "".join(parts)


# -- level sequences ----------------------------------------------------------


def _successor(levels: list[int], p: int | None = None) -> list[int] | None:
    """Next rooted tree in reverse lexicographic order of level sequences."""
    if p is None:
        p = len(levels) - 1
        while levels[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while levels[q] != levels[p] - 1:
        q -= 1
    out = list(levels)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(levels: list[int]) -> tuple[list[int], list[int]]:
    """Left subtree of the root, and the tree with that subtree removed."""
    m = len(levels)
    seen_one = False
    for i, x in enumerate(levels):
        if x == 1:
            if seen_one:
                m = i
                break
            seen_one = True
    left = [x - 1 for x in levels[1:m]]
    rest = [0] + levels[m:]
    return left, rest


def _next_free(levels: list[int] | None) -> list[int] | None:
    """Advance to the first centrally rooted canonical sequence at or after ``levels``."""
    while levels is not None:
        left, rest = _split(levels)
        lh, rh = max(left), max(rest)
        ok = rh >= lh
        if ok and rh == lh:
            if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
                ok = False
        if ok:
            return levels
        p = len(left)
        nxt = _successor(levels, p)
        if nxt is not None and levels[p] > 2:
            new_left, _ = _split(nxt)
            tail = list(range(1, max(new_left) + 2))
            nxt[-len(tail):] = tail
        levels = nxt
    return None


def free_tree_level_sequences(n: int) -> Iterator[list[int]]:
    if n < 1:
        return
    if n <= 3:
        yield list(range(n)) if n < 3 else [0, 1, 1]
        return
    levels: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while levels is not None:
        levels = _next_free(levels)
        if levels is None:
            return
        yield levels
        levels = _successor(levels)


def levels_to_graph(levels: list[int]) -> Graph:
    last_at: dict[int, int] = {}
    edges = []
    for v, lev in enumerate(levels):
        if lev > 0:
            edges.append((last_at[lev - 1], v))
        last_at[lev] = v
    return Graph(len(levels), edges)


@lru_cache(maxsize=None)
def _all_trees(n: int) -> tuple[Graph, ...]:
    return tuple(levels_to_graph(s) for s in free_tree_level_sequences(n))


@lru_cache(maxsize=None)
def _unicyclic_from_tree_set(n: int, pq: tuple[int, int] | None) -> tuple[Graph, ...]:
    found: dict[tuple[str, ...], Graph] = {}
    for t in _all_trees(n):
        if pq is not None and bipartition(t).pq != pq:
            continue
        for u in range(n):
            dist = bfs_distances(t, u)
            for v in range(u + 1, n):
                d = dist[v]
                if d >= 3 and d % 2 == 1:
                    g = t.rewire(add=[(u, v)])
                    found.setdefault(unicyclic_certificate(g), g)
    return tuple(found[k] for k in sorted(found))


def _check_bounds(q: ClassQuery) -> None:
    if q.kind is ClassKind.TREES:
        limit = bound("trees")
    else:
        limit = bound("unicyclic")
    if q.n > limit:
        raise SizeBound(f"{q.kind.value} enumeration supports n <= {limit}, got {q.n}")
    if q.n < 1:
        raise SizeBound("n must be positive")


def enumerate_class(q: ClassQuery) -> Iterator[Graph]:
    """One representative per isomorphism class satisfying every filter."""
    _check_bounds(q)
    if q.kind is ClassKind.TREES:
        source = _all_trees(q.n)
    else:
        source = _unicyclic_from_tree_set(q.n, q.bipartition)
    for g in source:
        if q.bipartition is not None:
            b = bipartition(g)
            if b is None or b.pq != tuple(q.bipartition):
                continue
        if q.diameter_at_least is not None and diameter(g) < q.diameter_at_least:
            continue
        if q.matching_number is not None and matching_number(g) != q.matching_number:
            continue
        yield g


def trees(n: int, **filters) -> list[Graph]:
    return list(enumerate_class(ClassQuery(ClassKind.TREES, n, **filters)))


def bipartite_unicyclic(n: int, **filters) -> list[Graph]:
    return list(enumerate_class(ClassQuery(ClassKind.BIPARTITE_UNICYCLIC, n, **filters)))


# -- family recognition -------------------------------------------------------


class _FamilyIndex:
    """Candidate family graphs of one order, bucketed by degree sequence."""

    def __init__(self, n: int):
        self.buckets: dict[tuple[int, ...], list[tuple[FamilySpec, Graph]]] = {}
        for spec in fam.specs_of_order(n):
            try:
                g = fam.build(spec)
            except LapermError:
                continue
            self.buckets.setdefault(tuple(sorted(g.degrees())), []).append((spec, g))
        self.keys: dict[tuple[int, ...], list[tuple[FamilySpec, bytes]]] = {}

    def match(self, g: Graph, key: bytes) -> tuple[FamilySpec, ...]:
        degs = tuple(sorted(g.degrees()))
        if degs not in self.buckets:
            return ()
        if degs not in self.keys:
            self.keys[degs] = [(s, canonical_form(h)) for s, h in self.buckets[degs]]
        found: dict[str, FamilySpec] = {}
        for s, k in self.keys[degs]:
            if k == key and s.kind not in found:
                found[s.kind] = s
        return tuple(found.values())


@lru_cache(maxsize=None)
def _family_index(n: int) -> _FamilyIndex:
    return _FamilyIndex(n)


def recognize(g: Graph) -> tuple[FamilySpec, ...]:
    """Named family specs isomorphic to g, at most one per family kind."""
    return _family_index(g.n).match(g, canonical_form(g))


# -- ranking ------------------------------------------------------------------


@dataclass(frozen=True)
class RankedEntry:
    graph: Graph
    value: int
    key: bytes
    families: tuple[FamilySpec, ...]

    @property
    def family(self) -> FamilySpec | None:
        return self.families[0] if self.families else None

    def label(self) -> str:
        return str(self.family) if self.family else "unnamed"


@dataclass(frozen=True)
class RankedResult:
    query: ClassQuery
    entries: tuple[RankedEntry, ...]
    class_size: int


def _score(g: Graph) -> tuple[int, bytes]:
    return laplacian_permanent(g), canonical_form(g)


@lru_cache(maxsize=64)
def _scored(q: ClassQuery) -> tuple[tuple[int, bytes, Graph], ...]:
    graphs = list(enumerate_class(q))
    rows = [(*_score(g), g) for g in graphs]
    return tuple(sorted(rows, key=lambda r: (r[0], r[1])))


def scored_class(q: ClassQuery, threads: int = 1) -> tuple[tuple[int, bytes, Graph], ...]:
    """(per L, canonical key, graph) for the whole class, ascending.

    With ``threads > 1`` permanents are computed in worker processes; the
    result is identical because the merge sorts on the full key.
    """
    if threads > 1:
        _check_bounds(q)
        graphs = list(enumerate_class(q))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            scores = list(pool.map(_score, graphs, chunksize=32))
        return tuple(sorted(((v, k, g) for (v, k), g in zip(scores, graphs)), key=lambda r: (r[0], r[1])))
    return _scored(q)


def rank_by_permanent(q: ClassQuery, k: int, threads: int = 1) -> RankedResult:
    """The k graphs of smallest per L, ties broken by canonical-form bytes."""
    if k < 0:
        raise ValueError("k must be non-negative")
    rows = scored_class(q, threads)
    entries = tuple(RankedEntry(g, v, key, recognize(g)) for v, key, g in rows[:k])
    return RankedResult(q, entries, len(rows))


@lru_cache(maxsize=None)
def grow_unicyclic(p: int, q: int) -> tuple[Graph, ...]:
    """U_{p+q}^{p,q} for q > p, built up from a directly enumerable order.

    With q > p the larger class always contains a pendant vertex, so each
    member arises from a member of U^{p,q-1} by hanging one pendant on a
    vertex of the smaller class.  Order follows the unicyclic certificate.
    """
    if p + q <= bound("unicyclic") or q <= p:
        return tuple(enumerate_class(ClassQuery(ClassKind.BIPARTITE_UNICYCLIC, p + q, bipartition=(p, q))))
    if p + q > bound("grow"):
        raise SizeBound(f"pendant growth supports n <= {bound('grow')}, got {p + q}")
    found: dict[tuple[str, ...], Graph] = {}
    for g in grow_unicyclic(p, q - 1):
        split = bipartition(g)
        # a balanced parent can grow on either side
        side = split.class_a if split.p < split.q else range(g.n)
        for v in side:
            h = Graph(g.n + 1, list(g.edges) + [(v, g.n)])
            found.setdefault(unicyclic_certificate(h), h)
    return tuple(found[k] for k in sorted(found))
