import pytest
import sympy

from laperm import FormulaId, InvalidParameters, ParseError, build, evaluate, laplacian_permanent, parse_formula, theorem11_bounds
from laperm import closed_forms as cf
from laperm import enumeration as en
from laperm import families as fam

R2 = sympy.sqrt(2)


def exact(expr) -> int:
    value = sympy.nsimplify(sympy.expand(expr))
    assert value.is_integer, value
    return int(value)


@pytest.mark.parametrize("n", range(0, 25))
def test_pell_sequences_match_radical_forms(n):
    assert cf.pell_q(n) == exact(((1 + R2) ** n + (1 - R2) ** n) / 2)
    assert cf.pell_s(n) == exact(((1 + R2) ** n - (1 - R2) ** n) / (2 * R2))


@pytest.mark.parametrize("n", range(1, 20))
def test_path_permanent_radical_form(n):
    expr = (2 - R2) / 2 * (1 + R2) ** n + (2 + R2) / 2 * (1 - R2) ** n
    assert cf.path_permanent(n) == exact(expr)


def test_path_permanent_matches_engine():
    for n in range(1, 16):
        assert cf.path_permanent(n) == laplacian_permanent(build(fam.P(n)))


def test_broom_radical_form_and_expansion():
    for n in range(3, 16):
        for d in range(2, n):
            expr = (n - d + R2 / 2) * (1 + R2) ** (d - 1) + (n - d - R2 / 2) * (1 - R2) ** (d - 1)
            assert cf.broom(n, d) == exact(expr)
            assert cf.broom(n, d) == cf.broom_general(n, d, 2)


def test_broom_general_matches_engine():
    for n in range(3, 13):
        for d in range(1, n):
            for i in range(1, d + 2):
                assert cf.broom_general(n, d, i) == laplacian_permanent(build(fam.T_broom(n, d, i)))


def test_quadratics_match_rational_evaluation():
    for n in range(4, 20):
        for i in range(0, n - 3):
            x = sympy.Rational(n - 3, 2)
            assert cf.t3i(n, i) == -8 * (i - x) ** 2 + 2 * (n - 3) ** 2 + 6 * n - 14
            y = sympy.Rational(n - 4, 2)
            assert cf.c4_quad(n, i) == -16 * (i - y) ** 2 + 4 * (n - 1) ** 2


def test_lemma34_gap_definition():
    for n in range(3, 30):
        for j in range(2, (n + 1) // 2 + 1):
            for k in range(1, j):
                q = cf.pell_q
                assert cf.lemma34_gap(n, k, j) == (-1) ** k * (q(j - 1) * q(n - j) - q(k - 1) * q(n - k))
                assert cf.lemma34_gap(n, k, j) > 0
    with pytest.raises(InvalidParameters):
        cf.lemma34_gap(10, 3, 3)
    with pytest.raises(InvalidParameters):
        cf.lemma34_gap(10, 1, 6)


def test_theorem11_bounds_bracket_every_tree():
    for n in range(2, 11):
        lo, hi = theorem11_bounds(n)
        values = [laplacian_permanent(t) for t in en.trees(n)]
        assert min(values) == lo and max(values) == hi


def test_parse_and_evaluate():
    assert evaluate(parse_formula("DStar(3,5)")) == 46
    assert evaluate(parse_formula("DStar(q=5, p=3)")) == 46
    assert str(parse_formula("Broom(8, 5)")) == "Broom(8,5)"
    assert evaluate(parse_formula("Q(4)")) == 17
    assert evaluate(FormulaId("GHatLinear", (2, 20))) == 1168
    for bad in ("Nope(1)", "DStar(3)", "DStar(3,x)", "DStar"):
        with pytest.raises(ParseError):
            parse_formula(bad)
    with pytest.raises(InvalidParameters):
        evaluate(FormulaId("GHatLinear", (8, 20)))


def test_family_of_respects_validity():
    assert cf.family_of(FormulaId("DStar", (3, 5))) == fam.D(3, 5)
    assert cf.family_of(FormulaId("DStar", (0, 5))) is None
    assert cf.family_of(FormulaId("QPermanent", (5,))) is None
    assert cf.family_of(FormulaId("C4_second_a", (4, 6))) == fam.C4(4, 0, 1, 0, 0, 0, 1, 0)


def test_formulas_for():
    names = {str(f) for f in cf.formulas_for(fam.B(2, 4), 6)}
    assert {"BPQ(2,4)", "U24(6)"} <= names
    assert {str(f) for f in cf.formulas_for(fam.T_broom(8, 5, 2), 8)} >= {"Broom(8,5)", "BroomGeneral(8,5,2)"}


def test_third_list_alias_and_size():
    third = [k for k in cf._C4_LISTED if k.startswith("C4_third_")]
    assert len(third) == 8
    assert cf._C4_LISTED["C4_third_0"][0](5, 7) == cf._C4_LISTED["C4_cand_c"][0](5, 7)
