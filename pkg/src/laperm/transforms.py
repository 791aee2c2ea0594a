"""Edge-grafting moves that lower the Laplacian permanent.

Each move validates its preconditions and raises ``PreconditionViolated``
naming the failed clause; the permanent decrease itself is not checked here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import NotBipartite, NotUnicyclic, PreconditionViolated
from .graph import Graph, bipartition, is_connected, is_tree, is_unicyclic, unique_cycle


@dataclass(frozen=True)
class OpI:
    u: int
    v: int
    w: int


@dataclass(frozen=True)
class OpII:
    u: int
    v: int
    w: int


@dataclass(frozen=True)
class OpIII:
    labeling: tuple[int, ...] | None = None


@dataclass(frozen=True)
class Lemma35:
    v: int
    u: int


GraftMove = OpI | OpII | OpIII | Lemma35


def _check_vertices(g: Graph, *vs: int) -> None:
    for x in vs:
        if not 0 <= x < g.n:
            raise PreconditionViolated("vertex-exists", f"{x} is not a vertex of a graph on {g.n} vertices")


def _connected_bipartite(g: Graph) -> None:
    if not is_connected(g):
        raise PreconditionViolated("connected")
    if bipartition(g) is None:
        raise NotBipartite("grafting moves require a bipartite graph")


def apply_op1(g: Graph, u: int, v: int, w: int) -> Graph:
    """Move the pendant u from v to w: G - uv + uw."""
    _check_vertices(g, u, v, w)
    _connected_bipartite(g)
    if g.n < 3:
        raise PreconditionViolated("n>=3")
    if not g.has_edge(u, v):
        raise PreconditionViolated("uv-edge", f"{u}-{v} is not an edge")
    if g.degree(u) != 1:
        raise PreconditionViolated("u-pendant", f"degree({u}) = {g.degree(u)}")
    if w in (u, v):
        raise PreconditionViolated("w-distinct", "w must differ from u and v")
    if g.degree(w) < g.degree(v):
        raise PreconditionViolated("deg(w)>=deg(v)", f"degree({w}) = {g.degree(w)} < degree({v}) = {g.degree(v)}")
    return g.rewire(remove=[(u, v)], add=[(u, w)])


def op2_leaves(g: Graph, u: int, v: int) -> list[int]:
    return [z for z in g.adj[u] if z != v]


def apply_op2(g: Graph, u: int, v: int, w: int) -> Graph:
    """Move the pendant neighbours of star center u (hung on v) over to w."""
    _check_vertices(g, u, v, w)
    _connected_bipartite(g)
    if not g.has_edge(u, v):
        raise PreconditionViolated("uv-edge", f"{u}-{v} is not an edge")
    if not g.has_edge(v, w) or w == u:
        raise PreconditionViolated("vw-edge", f"{v}-{w} is not an edge of U")
    if g.degree(w) < 2:
        raise PreconditionViolated("deg(w)>=2", f"degree({w}) = {g.degree(w)}")
    leaves = op2_leaves(g, u, v)
    if not leaves:
        raise PreconditionViolated("W-nonempty", f"{u} has no neighbours besides {v}")
    bad = [z for z in leaves if g.degree(z) != 1]
    if bad:
        raise PreconditionViolated("W-pendant", f"neighbours {bad} of {u} are not pendant")
    return g.rewire(remove=[(u, z) for z in leaves], add=[(w, z) for z in leaves])


def op3_labelings(g: Graph) -> Iterator[tuple[int, ...]]:
    """Cyclic labelings v1..v2k under which g fits the Operation III shape.

    Only v_i and v_j with 4 < i < j (1-based) may carry attachments, and every
    attached vertex is a pendant.  Yields in lexicographic order.
    """
    if not is_unicyclic(g):
        return
    cyc = unique_cycle(g)
    r = len(cyc)
    if r < 6 or r % 2:
        return
    on_cycle = set(cyc)
    for x in range(g.n):
        if x not in on_cycle and g.degree(x) != 1:
            return
    for x in range(g.n):
        if x not in on_cycle and not any(y in on_cycle for y in g.adj[x]):
            return
    loaded = {c for c in cyc if g.degree(c) > 2}
    if len(loaded) > 2:
        return
    found = []
    for start in range(r):
        for step in (1, -1):
            lab = tuple(cyc[(start + step * t) % r] for t in range(r))
            # positions 1..4 (0-based 0..3) must be bare
            if any(lab[t] in loaded for t in range(4)):
                continue
            found.append(lab)
    yield from sorted(set(found))


def apply_op3(g: Graph, labeling: tuple[int, ...] | None = None) -> Graph:
    """Shorten the cycle by two: G - v1v2 + v1v4.

    Without an explicit labeling the lexicographically smallest valid one is
    used.
    """
    if not is_unicyclic(g):
        raise NotUnicyclic(f"graph with n={g.n}, m={g.m} is not unicyclic")
    if bipartition(g) is None:
        raise NotBipartite("Operation III needs an even cycle")
    valid = list(op3_labelings(g))
    if labeling is None:
        if not valid:
            raise PreconditionViolated("NoValidLabeling", "no cyclic labeling fits the two-star shape with cycle length >= 6")
        labeling = valid[0]
    elif tuple(labeling) not in valid:
        raise PreconditionViolated("NoValidLabeling", f"{tuple(labeling)} is not a valid labeling")
    v1, v2, _, v4 = labeling[:4]
    return g.rewire(remove=[(v1, v2)], add=[(v1, v4)])


def apply_lemma35(g: Graph, v: int, u: int) -> Graph:
    """Move all pendant neighbours of v to its only non-pendant neighbour u."""
    _check_vertices(g, u, v)
    if not is_tree(g):
        raise PreconditionViolated("tree")
    if not g.has_edge(u, v):
        raise PreconditionViolated("uv-edge", f"{u}-{v} is not an edge")
    if g.degree(u) == 1:
        raise PreconditionViolated("u-non-pendant", f"{u} is pendant")
    others = [z for z in g.adj[v] if z != u]
    if not others:
        raise PreconditionViolated("A-nonempty", f"{v} has no neighbours besides {u}")
    if any(g.degree(z) != 1 for z in others):
        raise PreconditionViolated("u-unique-non-pendant", f"{v} has another non-pendant neighbour")
    return g.rewire(remove=[(v, z) for z in others], add=[(u, z) for z in others])


def apply_move(g: Graph, move: GraftMove) -> Graph:
    if isinstance(move, OpI):
        return apply_op1(g, move.u, move.v, move.w)
    if isinstance(move, OpII):
        return apply_op2(g, move.u, move.v, move.w)
    if isinstance(move, OpIII):
        return apply_op3(g, move.labeling)
    if isinstance(move, Lemma35):
        return apply_lemma35(g, move.v, move.u)
    raise TypeError(f"unknown move {move!r}")


# -- enumeration of valid move instances (used by tests and the explorer) ---


def op1_moves(g: Graph) -> Iterator[OpI]:
    if g.n < 3 or not is_connected(g) or bipartition(g) is None:
        return
    for u in range(g.n):
        if g.degree(u) != 1:
            continue
        v = g.adj[u][0]
        for w in range(g.n):
            if w not in (u, v) and g.degree(w) >= g.degree(v):
                yield OpI(u, v, w)


def op2_moves(g: Graph) -> Iterator[OpII]:
    if not is_connected(g) or bipartition(g) is None:
        return
    for u in range(g.n):
        for v in g.adj[u]:
            leaves = op2_leaves(g, u, v)
            if not leaves or any(g.degree(z) != 1 for z in leaves):
                continue
            for w in g.adj[v]:
                if w != u and g.degree(w) >= 2:
                    yield OpII(u, v, w)


def lemma35_moves(g: Graph) -> Iterator[Lemma35]:
    if not is_tree(g):
        return
    for v in range(g.n):
        nonpendant = [z for z in g.adj[v] if g.degree(z) != 1]
        if len(nonpendant) == 1 and g.degree(v) >= 2:
            yield Lemma35(v, nonpendant[0])
