import random
from fractions import Fraction

import pytest

from ovskit import corpus, spaces
from ovskit.errors import BudgetExceeded, UnassignedVariable
from ovskit.linarith import (
    AffineExpr,
    canonical_str,
    conj,
    disj,
    evaluate,
    ge,
    gt,
    eq,
    neg,
    parse_formula,
    substitute_all,
    variables,
)
from ovskit.qe import (
    Budget,
    decide,
    eliminate_exists,
    equivalent,
    exists,
    find_witness,
    forall,
    forall_on_ray,
    project,
)

import helpers

x1, x2 = AffineExpr.var("x1"), AffineExpr.var("x2")
K2 = parse_formula("(x1 > 0) or (x1 = 0 and x2 >= 0)")


def test_eliminate_open_interval():
    f = conj([gt(x1), gt(AffineExpr.const(1) - x1)])
    assert eliminate_exists(f, ("x1",)) == parse_formula("true")


def test_eliminate_equality_band():
    y = AffineExpr.var("y1")
    f = conj([ge(y - x1), ge(x1 - y)])
    assert eliminate_exists(f, ("y1",)) == parse_formula("true")


def test_eliminate_lex_membership():
    projected = eliminate_exists(K2, ("x2",))
    assert equivalent(projected, parse_formula("x1 >= 0"))
    # independent grid oracle over both sides
    grid = helpers.grid_assignments({"x1"}, (Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)))
    for p in grid:
        direct = any(
            evaluate(K2, {"x1": p["x1"], "x2": v}) for v in helpers.GRID
        ) or evaluate(K2, {"x1": p["x1"], "x2": Fraction(10)})
        assert evaluate(projected, p) == direct


def test_decide_examples():
    y = AffineExpr.var("y1")
    assert decide(forall(("x1",), exists(("y1",), gt(y - x1)))) is True
    assert decide(exists(("x1",), conj([gt(x1), gt(-x1)]))) is False


def test_decide_rejects_free_variables():
    with pytest.raises(UnassignedVariable):
        decide(exists(("x1",), gt(x1 - x2)))


def test_witness_midpoint():
    w = find_witness(exists(("x1",), conj([gt(x1), gt(AffineExpr.const(1) - x1)])))
    assert w["x1"] == Fraction(1, 2)


def test_witness_one_sided_bounds():
    w = find_witness(exists(("x1",), gt(x1 - AffineExpr.const(3))))
    assert w["x1"] == Fraction(4)
    w = find_witness(exists(("x1",), ge(AffineExpr.const(-2) - x1)))
    assert w["x1"] == Fraction(-3)


def test_witness_none_when_false():
    assert find_witness(exists(("x1",), conj([gt(x1), gt(-x1)]))) is None


def test_negated_archimedean_witness_for_lex_cone():
    space = corpus.lex_cone(2)
    verdict = spaces.is_archimedean(space)
    assert verdict.value is False
    assert helpers.validate_archimedean_witness(space, verdict.witness)


def test_negated_almost_archimedean_witness_for_lex_cone():
    space = corpus.lex_cone(2)
    verdict = spaces.is_almost_archimedean(space)
    assert verdict.value is False
    assert helpers.validate_line_witness(space, verdict.witness)


def test_equivalent_examples():
    assert equivalent(ge(x1), neg(gt(-x1)))
    assert not equivalent(gt(x1), ge(x1))
    nset, _ = spaces.infinitesimals(corpus.lex_cone(2))
    assert equivalent(nset.formula, parse_formula("x1 = 0"))


def test_project_examples():
    K2set = spaces.SemilinearSet(2, K2)
    first = spaces.LinearMap(((1, 0),), 2, 1)
    image = project(K2set, first)
    assert equivalent(image.formula, parse_formula("x1 >= 0"))
    ident = spaces.LinearMap.identity(2)
    assert spaces.equivalent_sets(project(K2set, ident), K2set)
    quadrant = corpus.closed_orthant(2).positive
    total = spaces.LinearMap(((1, 1),), 2, 1)
    image = project(quadrant, total)
    assert equivalent(image.formula, parse_formula("x1 >= 0"))
    # grid oracle: sum-image membership equals grid-searched existence
    for v in helpers.GRID:
        found = any(quadrant.contains((a, v - a)) for a in helpers.GRID)
        assert image.contains((v,)) == found


def test_projection_functoriality():
    S = corpus.lex_pair_product(2).positive
    A = spaces.LinearMap(((1, 0, 0, 0), (0, 0, 1, 0)), 4, 2)
    B = spaces.LinearMap(((1, 1),), 2, 1)
    once = project(project(S, A), B)
    composed = project(S, B.compose(A))
    assert spaces.equivalent_sets(once, composed)


def test_budget_exceeded_propagates():
    # chain the variables so the conjunction cannot be split apart
    blow = conj(
        disj(
            [
                gt(AffineExpr.var(f"u{i}") - AffineExpr.var(f"u{i + 1}")),
                gt(AffineExpr.var(f"u{i + 1}") - AffineExpr.var(f"u{i}")),
            ]
        )
        for i in range(10)
    )
    with pytest.raises(BudgetExceeded):
        eliminate_exists(blow, [f"u{i}" for i in range(11)], Budget(cell_limit=16))


def _random_instance(rng):
    names = [f"x{i + 1}" for i in range(rng.randint(1, 4))]
    atoms = []
    for _ in range(rng.randint(1, 8)):
        coeffs = {
            n: Fraction(rng.randint(-3, 3)) for n in rng.sample(names, rng.randint(1, len(names)))
        }
        expr = AffineExpr(coeffs, Fraction(rng.randint(-2, 2), rng.choice((1, 2))))
        atoms.append(rng.choice((gt, ge, eq))(expr))
    f = atoms[0]
    for a in atoms[1:]:
        f = conj([f, a]) if rng.random() < 0.5 else disj([f, a])
        if rng.random() < 0.2:
            f = neg(f)
    drop = rng.sample(names, rng.randint(1, len(names)))
    return f, drop, names


def test_elimination_agrees_with_sampling():
    rng = random.Random(20240817)
    for _ in range(60):
        f, drop, names = _random_instance(rng)
        g = eliminate_exists(f, drop)
        # soundness: any full point satisfying f projects into g
        full_points = [
            {n: helpers.random_rational(rng) for n in names} for _ in range(25)
        ] + helpers.boundary_adjacent(f, names, rng, 10)
        for p in full_points:
            if evaluate(f, p):
                assert evaluate(g, p), (f, drop, p)
        # completeness: where g holds, a validated witness for f exists
        kept = [n for n in names if n not in drop]
        kept_points = [
            {n: helpers.random_rational(rng) for n in kept} for _ in range(5)
        ]
        for p in kept_points:
            if evaluate(g, p):
                bound = substitute_all(f, {n: AffineExpr.const(v) for n, v in p.items()})
                w = find_witness(exists(drop, bound))
                assert w is not None
                assert evaluate(bound, w.assignment)


def test_negation_duality_random():
    rng = random.Random(97)
    for _ in range(40):
        f, drop, names = _random_instance(rng)
        lhs = decide(forall(names, f))
        rhs = not decide(exists(names, neg(f)))
        assert lhs == rhs


def test_forall_on_ray_matches_sampling():
    # For a wedge membership formula the ray rewrite must agree with
    # direct sampled membership along the ray.
    space = corpus.lex_cone(2)
    rng = random.Random(5)
    names = spaces.xvars(2)
    for _ in range(40):
        p = helpers.random_point(rng, 2, span=3)
        d = helpers.random_point(rng, 2, span=3)
        p_map = {n: AffineExpr.const(v) for n, v in zip(names, p)}
        d_map = {n: AffineExpr.const(v) for n, v in zip(names, d)}
        cond = forall_on_ray(space.positive.formula, p_map, d_map)
        truth = evaluate(cond, {})
        sampled = all(
            space.positive.contains(tuple(a + s * b for a, b in zip(p, d)))
            for s in list(range(0, 50)) + [Fraction(1, 3), Fraction(999)]
        )
        if truth:
            assert sampled
        if not sampled:
            assert not truth