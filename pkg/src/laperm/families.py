"""Constructors for the named graph families, with fixed labelings.

Labeling conventions (all 0-based):

* ``Path(n)``: v1..vn are 0..n-1 in path order.
* ``Star(n)``: center 0, leaves 1..n-1.
* ``Cycle(n)``: 0..n-1 in cyclic order.
* ``DoubleStar(p,q)``: centers v=0 and w=1; v's p-1 pendants, then w's q-1.
* ``DPrime(p,q)`` / ``DDoublePrime(p,q)``: D(p-1,q-1) as above, then a
  pendant path x-y hung on w (resp. v); x, y are the last two labels.
* ``TEndAttach(n,k,a)``: the path P_k on 0..k-1, then a pendants on 0 and
  n-k-a pendants on k-1.
* ``Broom(n,d,i)``: the path v1..v_{d+1} on 0..d, then n-d-1 pendants on v_i.
* ``C4Family``: cycle v1..v4 on 0..3; for each i in turn, s_i pendants on
  v_i, then (if k_i >= 1) a star center joined to v_i followed by its k_i-1
  leaves.
* ``G1``/``G2``: hexagon on 0..5 followed by pendants.

Family specs print and parse in the text syntax used by the CLI, e.g.
``D(3,5)``, ``D'(2,4)``, ``T(n=9,d=4,i=2)``, ``C4(1^2 0, 1^0 2, 1^0 0, 1^1 0)``,
``Ghat(4,n=12)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import InvalidParameters, ParseError
from .graph import Graph, GraphKind


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...]

    def __str__(self) -> str:
        return format_spec(self)


class _Builder:
    """Accumulates edges while handing out fresh labels."""

    def __init__(self, n0: int = 0):
        self.n = n0
        self.edges: list[tuple[int, int]] = []

    def new(self) -> int:
        self.n += 1
        return self.n - 1

    def path(self, k: int) -> list[int]:
        verts = [self.new() for _ in range(k)]
        self.edges += list(zip(verts, verts[1:]))
        return verts

    def cycle(self, k: int) -> list[int]:
        verts = self.path(k)
        self.edges.append((verts[-1], verts[0]))
        return verts

    def pendants(self, at: int, count: int) -> list[int]:
        out = []
        for _ in range(count):
            x = self.new()
            self.edges.append((at, x))
            out.append(x)
        return out

    def star_on(self, at: int, k: int) -> int | None:
        """Join ``at`` to the center of a star with k vertices (k >= 1)."""
        if k <= 0:
            return None
        center = self.new()
        self.edges.append((at, center))
        self.pendants(center, k - 1)
        return center

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidParameters(message)


# Each constructor returns (graph, roles).
Built = tuple[Graph, dict[str, int]]


def _path(n: int) -> Built:
    _need(n >= 1, "Path: n >= 1")
    b = _Builder()
    vs = b.path(n)
    return b.graph(), {f"v{i + 1}": v for i, v in enumerate(vs)}


def _star(n: int) -> Built:
    _need(n >= 1, "Star: n >= 1")
    b = _Builder()
    c = b.new()
    leaves = b.pendants(c, n - 1)
    roles = {"center": c}
    roles.update({f"leaf{i + 1}": x for i, x in enumerate(leaves)})
    return b.graph(), roles


def _cycle(n: int) -> Built:
    _need(n >= 3, "Cycle: n >= 3")
    b = _Builder()
    vs = b.cycle(n)
    return b.graph(), {f"v{i + 1}": v for i, v in enumerate(vs)}


def _double_star_into(b: _Builder, p: int, q: int) -> tuple[int, int]:
    v, w = b.path(2)
    b.pendants(v, p - 1)
    b.pendants(w, q - 1)
    return v, w


def _double_star(p: int, q: int) -> Built:
    _need(p >= 1 and q >= 1, "DoubleStar: p, q >= 1")
    b = _Builder()
    v, w = _double_star_into(b, p, q)
    return b.graph(), {"v": v, "w": w}


def _d_prime(p: int, q: int, on_w: bool) -> Built:
    name = "DPrime" if on_w else "DDoublePrime"
    _need(p >= 2 and q >= 2, f"{name}: p, q >= 2 (built from D(p-1,q-1))")
    b = _Builder()
    v, w = _double_star_into(b, p - 1, q - 1)
    x = b.new()
    y = b.new()
    b.edges += [(w if on_w else v, x), (x, y)]
    return b.graph(), {"v": v, "w": w, "x": x, "y": y}


def _t_end(n: int, k: int, a: int) -> Built:
    _need(k >= 2, "TEndAttach: k >= 2")
    _need(0 <= a <= n - k, "TEndAttach: 0 <= a <= n-k")
    b = _Builder()
    vs = b.path(k)
    b.pendants(vs[0], a)
    b.pendants(vs[-1], n - k - a)
    roles = {f"v{i + 1}": v for i, v in enumerate(vs)}
    return b.graph(), roles


def _two_center(n: int, r: int, s: int) -> Built:
    _need(r >= 1, "TwoCenter: r >= 1")
    _need(0 <= s <= n - 2 * r, "TwoCenter: 0 <= s <= n-2r")
    g, roles = _t_end(n, 2 * r, s)
    path = [roles[f"v{i + 1}"] for i in range(2 * r)]
    # path reads v0 u1 v1 u2 ... u_{r-1} v_{r-1} u0
    named = {"v0": path[0], "u0": path[-1]}
    for i in range(1, r):
        named[f"u{i}"] = path[2 * i - 1]
        named[f"v{i}"] = path[2 * i]
    return g, named


def _broom(n: int, d: int, i: int) -> Built:
    _need(d >= 1, "Broom: d >= 1")
    _need(n >= d + 1, "Broom: n >= d+1")
    _need(1 <= i <= d + 1, "Broom: 1 <= i <= d+1")
    b = _Builder()
    vs = b.path(d + 1)
    b.pendants(vs[i - 1], n - d - 1)
    return b.graph(), {f"v{j + 1}": v for j, v in enumerate(vs)}


def caterpillar_index(d: int) -> int:
    """1-based position of the central vertex on the path v1..v_{d+1}."""
    return d // 2 + 1


def _caterpillar(n: int, d: int) -> Built:
    _need(d >= 2, "Caterpillar: d >= 2")
    return _broom(n, d, caterpillar_index(d))


def _matching_tree(n: int, m: int) -> Built:
    _need(m >= 1, "MatchingTree: m >= 1")
    _need(n >= 2 * m, "MatchingTree: n >= 2m")
    b = _Builder()
    c = b.new()
    leaves = b.pendants(c, n - m)
    for leaf in leaves[: m - 1]:
        b.pendants(leaf, 1)
    return b.graph(), {"center": c}


def _c4(*sk: int) -> Built:
    _need(len(sk) == 8, "C4Family: eight parameters s1,k1,...,s4,k4")
    _need(all(x >= 0 for x in sk), "C4Family: all s_i, k_i >= 0")
    b = _Builder()
    vs = b.cycle(4)
    roles = {f"v{i + 1}": v for i, v in enumerate(vs)}
    for i in range(4):
        s, k = sk[2 * i], sk[2 * i + 1]
        b.pendants(vs[i], s)
        c = b.star_on(vs[i], k)
        if c is not None:
            roles[f"c{i + 1}"] = c
    return b.graph(), roles


def c4_params(p: int, q: int) -> tuple[int, ...]:
    """C4Family parameters of B(p,q)."""
    return (p - 2, 0, q - 2, 0, 0, 0, 0, 0)


def _bpq(p: int, q: int) -> Built:
    _need(p >= 2 and q >= 2, "BPQ: p, q >= 2")
    return _c4(*c4_params(p, q))


def _hexagon(p: int, q: int, at_v0: int, at_u0: int, name: str) -> Built:
    _need(p >= 3 and q >= 3, f"{name}: p, q >= 3")
    b = _Builder()
    hexagon = b.cycle(6)
    b.pendants(hexagon[at_v0], q - 3)
    b.pendants(hexagon[at_u0], p - 3)
    roles = {f"h{i}": v for i, v in enumerate(hexagon)}
    roles["v0"] = hexagon[at_v0]
    roles["u0"] = hexagon[at_u0]
    return b.graph(), roles


def _g1(p: int, q: int) -> Built:
    # pendant carriers at distance 3
    return _hexagon(p, q, 0, 3, "G1")


def _g2(p: int, q: int) -> Built:
    # pendant carriers adjacent; positions 4, 5 put them at v5, v6 of the
    # smallest Operation III labeling
    return _hexagon(p, q, 4, 5, "G2")


GHAT_MIN_N = {1: 6, 2: 6, 3: 7, 4: 6, 5: 6, 6: 7, 7: 6, 8: 7}


def _ghat(index: int, n: int) -> Built:
    """The (3, n-3) bipartite unicyclic graphs around B(3, n-3).

    On the square a1 b1 a2 b2 (labels 0..3) the smaller class is {a1, a2, x}.
    """
    _need(index in GHAT_MIN_N, "GHat: index in 1..8")
    _need(n >= GHAT_MIN_N[index], f"GHat({index}): n >= {GHAT_MIN_N[index]}")
    if index == 1:
        return _c4(n - 6, 2, 0, 0, 0, 0, 0, 0)
    if index == 2:
        return _c4(n - 6, 0, 1, 0, 1, 0, 0, 0)
    if index == 4:
        return _c4(n - 6, 0, 0, 2, 0, 0, 0, 0)
    if index == 5:
        return _c4(0, 0, 0, n - 4, 0, 0, 0, 0)
    if index == 6:
        return _c4(n - 7, 2, 0, 0, 1, 0, 0, 0)
    if index == 8:
        return _c4(n - 7, 0, 1, 0, 2, 0, 0, 0)
    b = _Builder()
    a1, b1, a2, b2 = b.cycle(4)
    roles = {"v1": a1, "v2": b1, "v3": a2, "v4": b2}
    if index == 3:
        # a1 - y - x - z plus n-7 pendants on a1
        b.pendants(a1, n - 7)
        y, x, z = b.path(3)
        b.edges.append((a1, y))
    else:
        # a1 - y - x with n-6 pendants on x
        y, x = b.path(2)
        b.edges.append((a1, y))
        b.pendants(x, n - 6)
    roles["x"] = x
    return b.graph(), roles


@dataclass(frozen=True)
class _Kind:
    arity: int
    build: Callable[..., Built]
    graph_kind: GraphKind
    bipartite: bool


KINDS: dict[str, _Kind] = {
    "Path": _Kind(1, _path, GraphKind.TREE, True),
    "Star": _Kind(1, _star, GraphKind.TREE, True),
    "Cycle": _Kind(1, _cycle, GraphKind.UNICYCLIC, False),
    "DoubleStar": _Kind(2, _double_star, GraphKind.TREE, True),
    "DPrime": _Kind(2, lambda p, q: _d_prime(p, q, True), GraphKind.TREE, True),
    "DDoublePrime": _Kind(2, lambda p, q: _d_prime(p, q, False), GraphKind.TREE, True),
    "TEndAttach": _Kind(3, _t_end, GraphKind.TREE, True),
    "Broom": _Kind(3, _broom, GraphKind.TREE, True),
    "Caterpillar": _Kind(2, _caterpillar, GraphKind.TREE, True),
    "MatchingTree": _Kind(2, _matching_tree, GraphKind.TREE, True),
    "TwoCenter": _Kind(3, _two_center, GraphKind.TREE, True),
    "BPQ": _Kind(2, _bpq, GraphKind.UNICYCLIC, True),
    "C4Family": _Kind(8, _c4, GraphKind.UNICYCLIC, True),
    "G1": _Kind(2, _g1, GraphKind.UNICYCLIC, True),
    "G2": _Kind(2, _g2, GraphKind.UNICYCLIC, True),
    "GHat": _Kind(2, _ghat, GraphKind.UNICYCLIC, True),
}


def _lookup(spec: FamilySpec) -> _Kind:
    kind = KINDS.get(spec.kind)
    if kind is None:
        raise InvalidParameters(f"unknown family {spec.kind!r}")
    if len(spec.params) != kind.arity:
        raise InvalidParameters(f"{spec.kind} takes {kind.arity} parameters, got {len(spec.params)}")
    return kind


def build(spec: FamilySpec) -> Graph:
    return _lookup(spec).build(*spec.params)[0]


def vertex_roles(spec: FamilySpec) -> dict[str, int]:
    return _lookup(spec).build(*spec.params)[1]


def declared_kind(spec: FamilySpec) -> GraphKind:
    return _lookup(spec).graph_kind


def declared_bipartite(spec: FamilySpec) -> bool:
    if spec.kind == "Cycle":
        return spec.params[0] % 2 == 0
    return _lookup(spec).bipartite


# Shorthand constructors used by the verification code.

def P(n: int) -> FamilySpec:
    return FamilySpec("Path", (n,))


def S(n: int) -> FamilySpec:
    return FamilySpec("Star", (n,))


def D(p: int, q: int) -> FamilySpec:
    return FamilySpec("DoubleStar", (p, q))


def D1(p: int, q: int) -> FamilySpec:
    """D'(p-1, q-1)."""
    return FamilySpec("DPrime", (p, q))


def D2(p: int, q: int) -> FamilySpec:
    """D''(p-1, q-1)."""
    return FamilySpec("DDoublePrime", (p, q))


def B(p: int, q: int) -> FamilySpec:
    return FamilySpec("BPQ", (p, q))


def C4(*sk: int) -> FamilySpec:
    return FamilySpec("C4Family", tuple(sk))


def T_end(n: int, k: int, a: int) -> FamilySpec:
    return FamilySpec("TEndAttach", (n, k, a))


def T_broom(n: int, d: int, i: int) -> FamilySpec:
    return FamilySpec("Broom", (n, d, i))


def GHat(index: int, n: int) -> FamilySpec:
    return FamilySpec("GHat", (index, n))


# -- text syntax --------------------------------------------------------------


def _c4_text(sk: tuple[int, ...]) -> str:
    parts = [f"1^{sk[2 * i]} {sk[2 * i + 1]}" for i in range(4)]
    return "C4(" + ", ".join(parts) + ")"


def format_spec(spec: FamilySpec) -> str:
    k, a = spec.kind, spec.params
    if k == "Path":
        return f"P({a[0]})"
    if k == "Star":
        return f"S({a[0]})"
    if k == "Cycle":
        return f"C({a[0]})"
    if k == "DoubleStar":
        return f"D({a[0]},{a[1]})"
    if k == "DPrime":
        return f"D'({a[0] - 1},{a[1] - 1})"
    if k == "DDoublePrime":
        return f"D''({a[0] - 1},{a[1] - 1})"
    if k == "TEndAttach":
        return f"T({a[0]},{a[1]},{a[2]})"
    if k == "Broom":
        return f"T(n={a[0]},d={a[1]},i={a[2]})"
    if k == "Caterpillar":
        return f"Cat(n={a[0]},d={a[1]})"
    if k == "MatchingTree":
        return f"Tm(n={a[0]},m={a[1]})"
    if k == "TwoCenter":
        return f"T2(n={a[0]},r={a[1]},s={a[2]})"
    if k == "BPQ":
        return f"B({a[0]},{a[1]})"
    if k == "C4Family":
        return _c4_text(a)
    if k in ("G1", "G2"):
        return f"{k}({a[0]},{a[1]})"
    if k == "GHat":
        return f"Ghat({a[0]},n={a[1]})"
    raise InvalidParameters(f"unknown family {k!r}")


_CALL = re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*)('{0,2})\s*\((.*)\)\s*$", re.S)
_C4_PART = re.compile(r"^1\^\{?(\d+)\}?\s*\(?\s*(\d+)\s*\)?$")

# name -> (kind, keyword names, transform of the parsed tuple)
_SYNTAX: dict[str, tuple[str, tuple[str, ...], Callable[[tuple[int, ...]], tuple[int, ...]]]] = {
    "P": ("Path", ("n",), lambda a: a),
    "S": ("Star", ("n",), lambda a: a),
    "C": ("Cycle", ("n",), lambda a: a),
    "D": ("DoubleStar", ("p", "q"), lambda a: a),
    "D'": ("DPrime", ("p", "q"), lambda a: (a[0] + 1, a[1] + 1)),
    "D''": ("DDoublePrime", ("p", "q"), lambda a: (a[0] + 1, a[1] + 1)),
    "Cat": ("Caterpillar", ("n", "d"), lambda a: a),
    "Tm": ("MatchingTree", ("n", "m"), lambda a: a),
    "T2": ("TwoCenter", ("n", "r", "s"), lambda a: a),
    "B": ("BPQ", ("p", "q"), lambda a: a),
    "G1": ("G1", ("p", "q"), lambda a: a),
    "G2": ("G2", ("p", "q"), lambda a: a),
    "Ghat": ("GHat", ("index", "n"), lambda a: a),
}


def parse_call(text: str) -> tuple[str, list[tuple[str | None, int]]]:
    """Split ``Name(a, k=b, ...)`` into its name and (keyword, value) pairs."""
    m = _CALL.match(text)
    if not m:
        raise ParseError(f"cannot parse {text!r}; expected Name(args)")
    name = m.group(1) + m.group(2)
    body = m.group(3).strip()
    args: list[tuple[str | None, int]] = []
    if body:
        for raw in body.split(","):
            item = raw.strip()
            key = None
            if "=" in item:
                key, item = (s.strip() for s in item.split("=", 1))
            try:
                args.append((key, int(item)))
            except ValueError:
                raise ParseError(f"argument {raw.strip()!r} of {name} is not an integer") from None
    return name, args


def bind_args(name: str, names: tuple[str, ...], args: list[tuple[str | None, int]]) -> tuple[int, ...]:
    """Positional arguments first, then keywords, matched to ``names``."""
    if len(args) != len(names):
        raise ParseError(f"{name} expects {len(names)} arguments ({', '.join(names)}), got {len(args)}")
    values: dict[str, int] = {}
    for pos, (key, val) in enumerate(args):
        slot = key if key is not None else names[pos]
        if slot not in names:
            raise ParseError(f"{name} has no parameter {slot!r}")
        if slot in values:
            raise ParseError(f"{name}: parameter {slot!r} given twice")
        values[slot] = val
    return tuple(values[k] for k in names)


def parse_spec(text: str) -> FamilySpec:
    stripped = text.strip()
    if stripped.startswith("C4("):
        inner = stripped[3:]
        if not inner.endswith(")"):
            raise ParseError(f"unterminated C4 spec {text!r}")
        parts = [s.strip() for s in inner[:-1].split(",")]
        if len(parts) != 4:
            raise ParseError("C4 takes four '1^s k' parts")
        sk: list[int] = []
        for part in parts:
            m = _C4_PART.match(part)
            if not m:
                raise ParseError(f"C4 part {part!r} is not of the form '1^s k'")
            sk += [int(m.group(1)), int(m.group(2))]
        return FamilySpec("C4Family", tuple(sk))
    name, args = parse_call(stripped)
    if name == "T":
        if args and all(k is None for k, _ in args):
            return FamilySpec("TEndAttach", bind_args(name, ("n", "k", "a"), args))
        return FamilySpec("Broom", bind_args(name, ("n", "d", "i"), args))
    if name not in _SYNTAX:
        raise ParseError(f"unknown family name {name!r}")
    kind, names, conv = _SYNTAX[name]
    return FamilySpec(kind, conv(bind_args(name, names, args)))


# -- candidate sets used for recognition ------------------------------------


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def specs_of_order(n: int) -> Iterator[FamilySpec]:
    """Valid specs whose graph has exactly n vertices, in naming priority.

    Mirror-image duplicates (D(q,p) for D(p,q), a star of size one written
    as a star) are skipped.
    """
    for p in range(1, n // 2 + 1):
        yield D(p, n - p)
    for p in range(2, n // 2 + 1):
        yield D1(p, n - p)
        yield D2(p, n - p)
    if n >= 1:
        yield P(n)
        yield S(n)
    for p in range(2, n // 2 + 1):
        yield B(p, n - p)
    for k in range(2, n + 1):
        for a in range(0, n - k + 1):
            yield T_end(n, k, a)
    for d in range(2, n):
        for i in range(2, d + 1):
            yield T_broom(n, d, i)
        yield FamilySpec("Caterpillar", (n, d))
    for m in range(1, n // 2 + 1):
        yield FamilySpec("MatchingTree", (n, m))
    for p in range(3, n // 2 + 1):
        yield FamilySpec("G1", (p, n - p))
        yield FamilySpec("G2", (p, n - p))
    for index, low in GHAT_MIN_N.items():
        if n >= low:
            yield GHat(index, n)
    if n >= 4:
        for sk in sorted(_compositions(n - 4, 8), reverse=True):
            if 1 not in sk[1::2]:
                yield C4(*sk)
    if n >= 3:
        yield FamilySpec("Cycle", (n,))
