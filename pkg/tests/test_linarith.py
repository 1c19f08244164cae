import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ovskit import qe
from ovskit.errors import BudgetExceeded, ParseError, UnassignedVariable
from ovskit.linarith import (
    FALSE,
    TRUE,
    AffineExpr,
    Atom,
    AtomF,
    Rel,
    canonical_str,
    conj,
    disj,
    dnf_cells,
    eq,
    evaluate,
    ge,
    gt,
    neg,
    parse_formula,
    substitute,
    substitute_all,
    to_dnf,
    variables,
)

import helpers

x1, x2, y1, y2 = (AffineExpr.var(n) for n in ("x1", "x2", "y1", "y2"))
K2 = parse_formula("(x1 > 0) or (x1 = 0 and x2 >= 0)")

CORPUS_SCALARS = ["0", "1", "-1", "1/2", "-3/4", "10/3", "1000000000000/7", "-2/9"]


def test_rational_round_trips():
    for text in CORPUS_SCALARS:
        q = Fraction(text)
        assert Fraction(str(q)) == q
        assert q.denominator > 0


def test_affine_sparse_canonical():
    e = AffineExpr([("x1", 1), ("x1", -1), ("x2", Fraction(1, 2))], 3)
    assert e.names == ("x2",)
    assert e.coefficient("x1") == 0
    assert (x1 - x1).is_constant()


def test_eval_examples():
    assert evaluate(gt(x1), {"x1": Fraction(1, 2)}) is True
    assert evaluate(conj([gt(x1), ge(x2)]), {"x1": Fraction(0), "x2": Fraction(3)}) is False
    # boundary of the strict atom dominates the conjunction
    assert evaluate(K2, {"x1": Fraction(0), "x2": Fraction(-1)}) is False
    assert evaluate(K2, {"x1": Fraction(0), "x2": Fraction(0)}) is True


def test_eval_unassigned():
    with pytest.raises(UnassignedVariable):
        evaluate(gt(x1), {})


def test_substitute_examples():
    f = substitute(gt(x1), "x1", y1 + AffineExpr.const(1))
    assert f == gt(y1 + AffineExpr.const(1))
    assert substitute(eq(x1), "x1", AffineExpr.const(0)) is TRUE
    assert substitute(gt(x1), "x1", AffineExpr.const(-1)) is FALSE


def test_substitute_is_simultaneous():
    swapped = substitute_all(gt(x1 - x2), {"x1": x2, "x2": x1})
    assert swapped == gt(x2 - x1)


def test_symbolic_scale_membership_matches_direct_eval():
    # Encode membership of x - t*y with symbolic t and compare against
    # direct pointwise evaluation on a 10x10 rational grid.
    values = [Fraction(k, 3) for k in range(-4, 6)]
    assert len(values) == 10
    for s in values:
        x = (Fraction(1), s)
        y = (s, Fraction(1))
        exprs = {
            "x1": AffineExpr([("t", -y[0])], x[0]),
            "x2": AffineExpr([("t", -y[1])], x[1]),
        }
        encoded = substitute_all(K2, exprs)
        for tv in values:
            moved = tuple(a - tv * b for a, b in zip(x, y))
            direct = evaluate(K2, {"x1": moved[0], "x2": moved[1]})
            assert evaluate(encoded, {"t": tv}) == direct


def test_to_dnf_examples():
    assert canonical_str(neg(gt(x1))) == "-x1 >= 0"
    cells = dnf_cells(K2)
    assert len(cells) == 2
    a = AtomF(Atom(x1, Rel.GT))
    b = AtomF(Atom(x2, Rel.GT))
    c = AtomF(Atom(y1, Rel.GE))
    dist = to_dnf(conj([disj([a, b]), c]))
    assert dist == disj([conj([a, c]), conj([b, c])])


def test_dnf_budget():
    big = conj(
        disj([gt(AffineExpr.var(f"u{i}")), ge(AffineExpr.var(f"v{i}"))]) for i in range(12)
    )
    with pytest.raises(BudgetExceeded):
        dnf_cells(big, cell_limit=100)


def test_canonical_string_is_order_insensitive():
    f = disj([conj([eq(x1), ge(x2)]), gt(x1)])
    g = disj([gt(x1), conj([ge(x2), eq(x1)])])
    assert canonical_str(f) == canonical_str(g)


def test_canonical_merges_adjacent_cells():
    assert canonical_str(disj([gt(x1), eq(x1)])) == "x1 >= 0"
    assert canonical_str(disj([ge(x1), ge(-x1)])) == "true"


@st.composite
def affine_exprs(draw, names=("x1", "x2", "x3")):
    coeffs = {
        n: Fraction(draw(st.integers(-3, 3)), draw(st.sampled_from((1, 2, 3))))
        for n in draw(st.sets(st.sampled_from(names), max_size=3))
    }
    const = Fraction(draw(st.integers(-4, 4)), draw(st.sampled_from((1, 2))))
    return AffineExpr(coeffs, const)


@st.composite
def formulas(draw, depth=3):
    if depth == 0:
        rel = draw(st.sampled_from((Rel.GT, Rel.GE, Rel.EQ)))
        return AtomF(Atom(draw(affine_exprs()), rel))
    kind = draw(st.integers(0, 3))
    if kind == 0:
        return AtomF(Atom(draw(affine_exprs()), draw(st.sampled_from((Rel.GT, Rel.GE, Rel.EQ)))))
    if kind == 1:
        return neg(draw(formulas(depth=depth - 1)))
    args = draw(st.lists(formulas(depth=depth - 1), min_size=1, max_size=3))
    return conj(args) if kind == 2 else disj(args)


@settings(max_examples=150, deadline=None)
@given(formulas(), st.integers(0, 2**32 - 1))
def test_dnf_preserves_truth(f, seed):
    rng = random.Random(seed)
    names = variables(f) | {"x1"}
    points = [
        {n: helpers.random_rational(rng) for n in sorted(names)} for _ in range(6)
    ]
    points += helpers.boundary_adjacent(f, names, rng, 6)
    g = to_dnf(f)
    for p in points:
        assert evaluate(g, p) == evaluate(f, p)


@settings(max_examples=100, deadline=None)
@given(formulas(), st.integers(0, 2**32 - 1))
def test_substitution_lemma(f, seed):
    rng = random.Random(seed)
    names = sorted(variables(f) | {"x1"})
    target = rng.choice(names)
    repl_names = ["y1", "y2"]
    repl = AffineExpr(
        {n: helpers.random_rational(rng) for n in repl_names},
        helpers.random_rational(rng),
    )
    g = substitute(f, target, repl)
    for _ in range(5):
        base = {n: helpers.random_rational(rng) for n in names + repl_names}
        extended = dict(base)
        extended[target] = repl.evaluate(base)
        assert evaluate(g, base) == evaluate(f, extended)


def test_parse_print_round_trip():
    for text in (
        "x1 >= 0",
        "(x1 > 0) or (x1 = 0 and x2 >= 0)",
        "2*x1 - 1/2*x2 + 3 > 0 and not (x2 = 1)",
        "true",
        "false",
        "x1 < 1 or x2 <= -2",
    ):
        f = parse_formula(text)
        printed = canonical_str(f)
        assert qe.equivalent(parse_formula(printed), f)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse_formula("x1 >\n+ and")
    assert err.value.line is not None
    with pytest.raises(ParseError):
        parse_formula("x1 ~ 0")
