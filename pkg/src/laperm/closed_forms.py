"""Exact evaluation of the displayed Laplacian-permanent formulas.

Expressions containing powers of 1 +- sqrt(2) are evaluated through two
Pell-type integer sequences, both satisfying x_n = 2 x_{n-1} + x_{n-2}:

* ``q_n`` with q_0 = q_1 = 1, so 2 q_n = (1+sqrt2)^n + (1-sqrt2)^n;
* ``s_n`` with s_0 = 0, s_1 = 1, so 2 sqrt2 s_n = (1+sqrt2)^n - (1-sqrt2)^n.

The broom value then reduces to 2(n-d) q_{d-1} + 2 s_{d-1} and the path
value to the same recurrence started at 0, 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable

from . import families as fam
from ._limits import bound
from .errors import InvalidParameters, ParseError
from .families import FamilySpec, bind_args, parse_call


@lru_cache(maxsize=4096)
def pell_q(n: int) -> int:
    if n < 0:
        raise InvalidParameters("q_n needs n >= 0")
    a, b = 1, 1
    for _ in range(n):
        a, b = b, 2 * b + a
    return a


@lru_cache(maxsize=4096)
def pell_s(n: int) -> int:
    if n < 0:
        raise InvalidParameters("s_n needs n >= 0")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, 2 * b + a
    return a


def path_permanent(n: int) -> int:
    """per L(P_n): 0, 2, 4, 10, 24, ... for n = 1, 2, 3, ..."""
    if n < 1:
        raise InvalidParameters("PathPermanent needs n >= 1")
    a, b = 0, 2
    for _ in range(n - 1):
        a, b = b, 2 * b + a
    return a


def broom(n: int, d: int) -> int:
    if d < 1 or n < d + 1:
        raise InvalidParameters("Broom needs d >= 1 and n >= d+1")
    return 2 * (n - d) * pell_q(d - 1) + 2 * pell_s(d - 1)


def broom_general(n: int, d: int, i: int) -> int:
    if d < 1 or n < d + 1 or not 1 <= i <= d + 1:
        raise InvalidParameters("BroomGeneral needs d >= 1, n >= d+1, 1 <= i <= d+1")
    return path_permanent(d + 1) + 2 * (n - d - 1) * pell_q(i - 1) * pell_q(d - i + 1)


def t3i(n: int, i: int) -> int:
    # -8(i - (n-3)/2)^2 + 2(n-3)^2 + 6n - 14, scaled by 4 to stay integral
    if n < 3 or i < 0 or i > n - 3:
        raise InvalidParameters("T3i needs n >= 3 and 0 <= i <= n-3")
    four_x = -8 * (2 * i - (n - 3)) ** 2 + 4 * (2 * (n - 3) ** 2 + 6 * n - 14)
    return four_x // 4


def c4_quad(n: int, i: int) -> int:
    # -16(i - (n-4)/2)^2 + 4(n-1)^2
    if n < 4 or i < 0 or i > n - 4:
        raise InvalidParameters("C4Quad needs n >= 4 and 0 <= i <= n-4")
    return -4 * (2 * i - (n - 4)) ** 2 + 4 * (n - 1) ** 2


def lemma34_gap(n: int, k: int, j: int) -> int:
    """(-1)^k (q_{j-1} q_{n-j} - q_{k-1} q_{n-k}); positive on the stated range."""
    if not (1 <= k < j and 2 * j <= n + 1):
        raise InvalidParameters("lemma34 needs 1 <= k < j <= (n+1)/2")
    limit = bound("lemma34")
    if n > limit:
        raise InvalidParameters(f"lemma34 evaluated for n <= {limit}")
    diff = pell_q(j - 1) * pell_q(n - j) - pell_q(k - 1) * pell_q(n - k)
    return -diff if k % 2 else diff


def theorem11_bounds(n: int) -> tuple[int, int]:
    if n < 2:
        raise InvalidParameters("theorem11_bounds needs n >= 2")
    return 2 * (n - 1), path_permanent(n)


@dataclass(frozen=True)
class Formula:
    name: str
    params: tuple[str, ...]
    evaluate: Callable[..., int]
    family: Callable[..., FamilySpec] | None
    # display text of the formula, for reports
    text: str
    valid: Callable[..., bool] = lambda *a: True


def _pq(f: Callable[[int, int, int], int]) -> Callable[[int, int], int]:
    return lambda p, q: f(p, q, p + q)


def _need_pq(lo_p: int, lo_q: int | None = None) -> Callable[[int, int], bool]:
    lo_q = lo_p if lo_q is None else lo_q
    return lambda p, q: p >= lo_p and q >= lo_q


# Third-minimizer and second-minimizer candidate lists for p >= 4, keyed by
# the C4 parameters of each graph.
_C4_LISTED: dict[str, tuple[Callable[[int, int], tuple[int, ...]], Callable[[int, int, int], int], str, tuple[int, int]]] = {
    "C4_second_a": (lambda p, q: (q - 2, 0, p - 3, 0, 0, 0, 1, 0), lambda p, q, n: 36 * p * q - 32 * n - 32 * q + 68, "36pq-32n-32q+68", (3, 2)),
    "C4_second_b": (lambda p, q: (q - 3, 0, p - 2, 0, 1, 0, 0, 0), lambda p, q, n: 36 * p * q - 32 * n - 32 * p + 68, "36pq-32n-32p+68", (2, 3)),
    "C4_cand_c": (lambda p, q: (q - 3, 2, p - 3, 0, 0, 0, 0, 0), lambda p, q, n: 60 * p * q - 68 * n - 40 * q + 144, "60pq-68n-40q+144", (3, 3)),
    "C4_cand_d": (lambda p, q: (q - 3, 0, p - 3, 2, 0, 0, 0, 0), lambda p, q, n: 60 * p * q - 68 * n - 40 * p + 144, "60pq-68n-40p+144", (3, 3)),
    "C4_cand_e": (lambda p, q: (q - 3, p - 1, 0, 0, 0, 0, 0, 0), lambda p, q, n: 48 * p * q - 72 * n + 24 * p + 84, "48pq-72n+24p+84", (2, 3)),
    "C4_cand_f": (lambda p, q: (0, 0, p - 3, q - 1, 0, 0, 0, 0), lambda p, q, n: 48 * p * q - 72 * n + 24 * q + 84, "48pq-72n+24q+84", (3, 2)),
    "C4_third_0": (lambda p, q: (q - 3, 2, p - 3, 0, 0, 0, 0, 0), lambda p, q, n: 60 * p * q - 68 * n - 40 * q + 144, "60pq-68n-40q+144", (3, 3)),
    "C4_third_1": (lambda p, q: (q - 3, 0, p - 4, 2, 0, 0, 1, 0), lambda p, q, n: 108 * p * q - 24 * q - 204 * n + 464, "108pq-24q-204n+464", (4, 3)),
    "C4_third_2": (lambda p, q: (q - 3, 2, p - 4, 0, 0, 0, 1, 0), lambda p, q, n: 108 * p * q - 168 * q - 132 * n + 400, "108pq-168q-132n+400", (4, 3)),
    "C4_third_3": (lambda p, q: (q - 3, 0, p - 3, 0, 0, 0, 0, 2), lambda p, q, n: 92 * p * q + 8 * q - 172 * n + 336, "92pq+8q-172n+336", (3, 3)),
    "C4_third_4": (lambda p, q: (q - 3, 0, p - 3, 0, 1, 0, 1, 0), lambda p, q, n: 68 * p * q - 128 * n + 260, "68pq-128n+260", (3, 3)),
    "C4_third_5": (lambda p, q: (0, 0, p - 4, q - 1, 0, 0, 1, 0), lambda p, q, n: 80 * p * q - 40 * q - 120 * n + 260, "80pq-40q-120n+260", (4, 2)),
    "C4_third_6": (lambda p, q: (q - 3, p - 2, 0, 0, 0, 0, 1, 0), lambda p, q, n: 88 * p * q - 120 * q - 100 * n + 272, "88pq-120q-100n+272", (3, 3)),
    "C4_third_7": (lambda p, q: (0, 0, p - 3, 0, 0, 0, 0, q - 1), lambda p, q, n: 64 * p * q + 8 * p - 96 * n + 132, "64pq+8p-96n+132", (3, 2)),
}

GHAT_LINEAR = {1: (72, -276), 2: (76, -352), 3: (168, -804), 4: (112, -516), 5: (96, -420), 6: (120, -580), 7: (216, -1140)}


def _listed(name: str) -> Formula:
    params_of, value, text, (lo_p, lo_q) = _C4_LISTED[name]
    return Formula(
        name,
        ("p", "q"),
        _pq(value),
        lambda p, q, f=params_of: fam.C4(*f(p, q)),
        text,
        lambda p, q, a=lo_p, b=lo_q: p >= a and q >= b,
    )


def _ghat_linear(index: int, n: int) -> int:
    if index not in GHAT_LINEAR:
        raise InvalidParameters("GHatLinear index must be 1..7")
    slope, icpt = GHAT_LINEAR[index]
    return slope * n + icpt


FORMULAS: dict[str, Formula] = {
    f.name: f
    for f in [
        Formula("StarLowerBound", ("n",), lambda n: 2 * (n - 1), fam.S, "2(n-1)", lambda n: n >= 2),
        Formula("PathPermanent", ("n",), path_permanent, fam.P, "(2-sqrt2)/2 (1+sqrt2)^n + (2+sqrt2)/2 (1-sqrt2)^n", lambda n: n >= 1),
        Formula("QPermanent", ("n",), pell_q, None, "((1+sqrt2)^n + (1-sqrt2)^n)/2", lambda n: n >= 0),
        Formula("PellS", ("n",), pell_s, None, "((1+sqrt2)^n - (1-sqrt2)^n)/(2 sqrt2)", lambda n: n >= 0),
        Formula("DStar", ("p", "q"), lambda p, q: (2 * p - 1) * (2 * q - 1) + 1, fam.D, "(2p-1)(2q-1)+1", _need_pq(1)),
        Formula("DPrime", ("p", "q"), lambda p, q: (2 * p - 3) * (6 * q - 5) + 3, fam.D1, "(2p-3)(6q-5)+3", _need_pq(2)),
        Formula("DDoublePrime", ("p", "q"), lambda p, q: (2 * q - 3) * (6 * p - 5) + 3, fam.D2, "(2q-3)(6p-5)+3", _need_pq(2)),
        Formula("T3i", ("n", "i"), t3i, lambda n, i: fam.T_end(n, 3, i), "-8(i-(n-3)/2)^2+2(n-3)^2+6n-14", lambda n, i: n >= 3 and 0 <= i <= n - 3),
        Formula("Broom", ("n", "d"), broom, lambda n, d: fam.T_broom(n, d, 2), "(n-d+sqrt2/2)(1+sqrt2)^(d-1)+(n-d-sqrt2/2)(1-sqrt2)^(d-1)", lambda n, d: 2 <= d <= n - 1),
        Formula("BroomGeneral", ("n", "d", "i"), broom_general, fam.T_broom, "per L(P_{d+1}) + 2(n-d-1) per Q_{i-1} per Q_{d-i+1}", lambda n, d, i: 1 <= d <= n - 1 and 1 <= i <= d + 1),
        Formula("BPQ", ("p", "q"), lambda p, q: 20 * (p - 1) * (q - 1) + 4 * (p + q), fam.B, "20(p-1)(q-1)+4n", _need_pq(2)),
        Formula("G1", ("p", "q"), lambda p, q: 100 * (p - 2) * (q - 2) + 40 * (p + q) - 140, lambda p, q: FamilySpec("G1", (p, q)), "100(p-2)(q-2)+40n-140", _need_pq(3)),
        Formula("G1Linear", ("n",), lambda n: 140 * n - 640, lambda n: FamilySpec("G1", (3, n - 3)), "140n-640", lambda n: n >= 6),
        Formula("C4Quad", ("n", "i"), c4_quad, lambda n, i: fam.C4(i, 0, 0, 0, n - 4 - i, 0, 0, 0), "-16(i-(n-4)/2)^2+4(n-1)^2", lambda n, i: n >= 4 and 0 <= i <= n - 4),
        *[_listed(name) for name in _C4_LISTED],
        Formula("U24", ("n",), lambda n: 24 * n - 60, lambda n: fam.B(2, n - 2), "24n-60", lambda n: n >= 4),
        Formula("U40", ("n",), lambda n: 40 * n - 140, lambda n: fam.C4(1, 0, 0, 0, n - 5, 0, 0, 0), "40n-140", lambda n: n >= 6),
        Formula("U44", ("n",), lambda n: 44 * n - 160, lambda n: fam.B(3, n - 3), "44n-160", lambda n: n >= 6),
        Formula("U56", ("n",), lambda n: 56 * n - 252, lambda n: fam.C4(2, 0, 0, 0, n - 6, 0, 0, 0), "56n-252", lambda n: n >= 8),
        Formula("GHatLinear", ("index", "n"), _ghat_linear, fam.GHat, "see GHAT_LINEAR", lambda i, n: i in GHAT_LINEAR and n >= fam.GHAT_MIN_N[i]),
    ]
}

# formula-only entries with their own argument checks
EXTRAS: dict[str, tuple[tuple[str, ...], Callable[..., int]]] = {
    "Q": (("n",), pell_q),
    "lemma34": (("n", "k", "j"), lemma34_gap),
}


@dataclass(frozen=True)
class FormulaId:
    name: str
    params: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.name}({','.join(str(x) for x in self.params)})"


def _entry(name: str) -> tuple[tuple[str, ...], Callable[..., int]]:
    if name in FORMULAS:
        f = FORMULAS[name]
        return f.params, f.evaluate
    if name in EXTRAS:
        return EXTRAS[name]
    raise InvalidParameters(f"unknown formula {name!r}")


def evaluate(fid: FormulaId) -> int:
    names, fn = _entry(fid.name)
    if len(fid.params) != len(names):
        raise InvalidParameters(f"{fid.name} takes {len(names)} parameters")
    return fn(*fid.params)


def family_of(fid: FormulaId) -> FamilySpec | None:
    """The graph whose Laplacian permanent the formula claims to give."""
    f = FORMULAS.get(fid.name)
    if f is None or f.family is None:
        return None
    if not f.valid(*fid.params):
        return None
    return f.family(*fid.params)


def parse_formula(text: str) -> FormulaId:
    name, args = parse_call(text)
    try:
        names, _ = _entry(name)
    except InvalidParameters as exc:
        raise ParseError(str(exc)) from None
    return FormulaId(name, bind_args(name, names, args))


def formulas_for(spec: FamilySpec, n: int) -> list[FormulaId]:
    """Formula ids whose family is exactly ``spec`` (an n-vertex graph)."""
    found = []
    for name, f in FORMULAS.items():
        if f.family is None:
            continue
        ranges = [range(1, 9) if p == "index" else range(0, n + 1) for p in f.params]
        for params in product(*ranges):
            if not f.valid(*params):
                continue
            try:
                if f.family(*params) == spec:
                    found.append(FormulaId(name, params))
            except (InvalidParameters, ValueError):
                continue
    return found
