import random
from fractions import Fraction

import pytest

from ovskit import corpus, qe
from ovskit.errors import (
    BudgetExceeded,
    DimensionMismatch,
    NonUniqueSupremum,
    NotAnOrderIdeal,
    NotASubspace,
    NotAWedge,
    NotPositiveElement,
)
from ovskit.linarith import TRUE, parse_formula
from ovskit.spaces import (
    LinearMap,
    OVSpace,
    SemilinearSet,
    Subspace,
    d_wedge,
    equivalent_sets,
    exists_sup,
    infinitesimals,
    intersection,
    is_almost_archimedean,
    is_almost_archimedean_element,
    is_archimedean,
    is_archimedean_element,
    is_archimedean_lower_bounds,
    is_cone,
    is_generating,
    is_order_convex,
    is_order_ideal,
    is_order_unit,
    is_riesz,
    is_uniformly_closed,
    is_wedge,
    leq,
    order_interval_member,
    quotient,
    space,
    subspace_from_set,
    uniform_closure,
    uniform_closure_member,
)

import helpers

K1 = corpus.k1_cone()
K2 = corpus.lex_cone(2)
QUADRANT = corpus.closed_orthant(2)
OPEN2 = corpus.open_orthant_cone(2)


def sset(dim, text):
    return SemilinearSet(dim, parse_formula(text))


def zero_set(dim):
    return Subspace(dim, ()).span_set()


# ---------------------------------------------------------------------------
# wedge / cone / generating


def test_is_wedge_examples():
    assert is_wedge(QUADRANT.positive)
    assert is_wedge(K1.positive)
    punctured = sset(2, "x2 > 0 or (x2 = 0 and (x1 > 0 or -x1 > 0))")
    verdict = is_wedge(punctured)
    assert verdict.value is False
    assert verdict.witness["r"] == 0
    assert punctured.contains(verdict.witness["x"])


def test_is_wedge_empty_set_is_vacuous():
    assert is_wedge(sset(1, "false")).value is True


def test_is_wedge_additivity_witness():
    halfmoon = sset(2, "x1 > 0 or (x1 = 0 and x2 >= 0) or (x1 = 0 and -x2 > 0)")
    # this is the closed half plane: a wedge; tweak to break additivity
    broken = sset(2, "(x1 = 0 and x2 >= 0) or (x2 = 0 and x1 >= 0)")
    verdict = is_wedge(broken)
    assert verdict.value is False
    x, y = verdict.witness["x"], verdict.witness["y"]
    assert broken.contains(x) and broken.contains(y)
    assert not broken.contains(tuple(a + b for a, b in zip(x, y)))


def test_is_cone_examples():
    assert is_cone(K2.positive)
    full = corpus.full_wedge(2).positive
    verdict = is_cone(full)
    assert verdict.value is False
    assert any(verdict.witness["x"])
    dwedge = sset(2, "x1 >= 0")
    verdict = is_cone(dwedge)
    assert verdict.value is False
    x = verdict.witness["x"]
    assert dwedge.contains(x) and dwedge.contains(tuple(-v for v in x)) and any(x)


def test_is_generating_examples():
    assert is_generating(K2.positive)
    ray = sset(2, "x2 = 0 and x1 >= 0")
    verdict = is_generating(ray)
    assert verdict.value is False
    assert is_generating(QUADRANT.positive)


# ---------------------------------------------------------------------------
# order relations


def test_leq_and_intervals():
    assert leq(QUADRANT, (0, 0), (1, 1))
    assert leq(K2, (0, 5), (1, -100))
    assert not order_interval_member(QUADRANT, (2, 0), (0, 0), (1, 1))
    with pytest.raises(DimensionMismatch):
        leq(QUADRANT, (0,), (1, 1))


def test_order_unit_examples():
    assert is_order_unit(QUADRANT, (1, 1))
    assert is_order_unit(K2, (1, 0))
    assert is_order_unit(QUADRANT, (0, 1)).value is False
    undecided = is_order_unit(QUADRANT, (-1, 0))
    assert undecided.value is None
    assert "not positive" in undecided.reason


def test_order_ideal_examples():
    axis = sset(2, "x1 = 0")
    assert is_order_ideal(K2, axis)
    assert is_order_ideal(K2, zero_set(2))
    halfplane = sset(2, "x2 >= 0")
    verdict = is_order_ideal(QUADRANT, halfplane)
    assert verdict.value is False
    assert "subspace" in verdict.reason


def test_order_convex_but_not_ideal():
    band = sset(2, "x2 >= -1 and 1 - x2 >= 0")
    assert is_order_convex(QUADRANT, band)
    assert is_order_ideal(QUADRANT, band).value is False


# ---------------------------------------------------------------------------
# Archimedean family


def test_archimedean_examples():
    for n in (1, 2, 3, 6):
        assert is_archimedean(corpus.closed_orthant(n))
    verdict = is_archimedean(K2)
    assert verdict.value is False
    assert helpers.validate_archimedean_witness(K2, verdict.witness)
    verdict = is_archimedean(OPEN2)
    assert verdict.value is False
    assert helpers.validate_archimedean_witness(OPEN2, verdict.witness)


def test_archimedean_requires_wedge():
    not_wedge = space(1, parse_formula("x1 > 0"))
    with pytest.raises(NotAWedge):
        is_archimedean(not_wedge)


def test_almost_archimedean_examples():
    v1 = is_almost_archimedean(K1)
    assert v1.value is False
    assert helpers.validate_line_witness(K1, v1.witness)
    assert is_almost_archimedean(OPEN2)
    assert is_almost_archimedean(QUADRANT)


def test_lower_bound_encoding_agrees():
    for _, spc in corpus.standard_corpus():
        if spc.dim > 4:
            continue
        assert bool(is_archimedean(spc)) == bool(is_archimedean_lower_bounds(spc))


def test_archimedean_element_examples():
    for _, spc in corpus.standard_corpus():
        if spc.dim <= 4:
            assert is_archimedean_element(spc, (0,) * spc.dim)
    assert is_archimedean_element(QUADRANT, (1, 1))
    verdict = is_archimedean_element(K2, (1, 0))
    assert verdict.value is False
    y = verdict.witness["y"]
    assert all(
        K2.positive.contains((1 + n * y[0], n * y[1])) for n in range(1, 200)
    )
    assert not K2.positive.contains(y)


def test_almost_archimedean_element():
    verdict = is_almost_archimedean_element(K2, (1, 0))
    assert verdict.value is False
    assert is_almost_archimedean_element(QUADRANT, (1, 1))


def test_element_requires_positivity():
    with pytest.raises(NotPositiveElement):
        is_archimedean_element(QUADRANT, (-1, 0))


# ---------------------------------------------------------------------------
# infinitesimals / dominance wedge / closure


def test_infinitesimals_examples():
    nset, nsub = infinitesimals(K2)
    assert qe.equivalent(nset.formula, parse_formula("x1 = 0"))
    assert nsub.rank == 1
    nset, nsub = infinitesimals(corpus.closed_orthant(3))
    assert nsub.rank == 0
    assert qe.equivalent(nset.formula, zero_set(3).formula)
    nset, nsub = infinitesimals(corpus.lex_pair_product(2))
    assert qe.equivalent(nset.formula, parse_formula("x1 = 0 and x3 = 0"))
    assert nsub.rank == 2


def test_d_wedge_examples():
    assert qe.equivalent(d_wedge(K2).formula, parse_formula("x1 >= 0"))
    assert qe.equivalent(d_wedge(K1).formula, parse_formula("x1 >= 0"))
    orthant = corpus.closed_orthant(3)
    assert equivalent_sets(d_wedge(orthant), orthant.positive)


def test_d_wedge_postconditions_on_corpus():
    # D cap -D = N and V+ inside D are verified inside d_wedge itself;
    # additionally D is a wedge and N is an order ideal for both wedges.
    for name, spc in corpus.standard_corpus():
        if spc.dim > 4:
            continue
        D = d_wedge(spc)
        assert is_wedge(D), name
        nset, _ = infinitesimals(spc)
        assert is_order_ideal(spc, nset), name
        assert is_order_ideal(OVSpace(spc.dim, D), nset), name


def test_uniform_closure_examples():
    assert uniform_closure_member(K2, zero_set(2), (0, 1))
    assert is_uniformly_closed(corpus.closed_orthant(2), zero_set(2))
    verdict = is_uniformly_closed(K2, zero_set(2))
    assert verdict.value is False
    x = verdict.witness["x"]
    assert any(x) and uniform_closure_member(K2, zero_set(2), x)


def test_uniform_closure_requires_subspace():
    with pytest.raises(NotASubspace):
        uniform_closure(QUADRANT, sset(2, "x2 >= 0"))


def test_closure_ideal_is_closed():
    axis = sset(2, "x1 = 0")
    assert is_uniformly_closed(K2, axis)


def test_subspace_from_set_rejects_non_subspace():
    with pytest.raises(NotASubspace):
        subspace_from_set(sset(2, "x1 >= 0"))


# ---------------------------------------------------------------------------
# quotients


def test_quotient_examples():
    qspace, pres = quotient(K2, Subspace(2, ((0, 1),)))
    assert qspace.dim == 1
    assert qe.equivalent(qspace.positive.formula, parse_formula("x1 >= 0"))
    assert pres.projection.matrix == ((Fraction(1), Fraction(0)),)

    same, pres0 = quotient(K2, Subspace(2, ()))
    assert same.dim == 2
    assert equivalent_sets(same.positive, K2.positive)

    pairs = corpus.lex_pair_product(2)
    qspace, _ = quotient(pairs, Subspace(4, ((0, 1, 0, 0), (0, 0, 0, 1))))
    assert equivalent_sets(qspace.positive, corpus.closed_orthant(2).positive)


def test_quotient_requires_order_ideal():
    with pytest.raises(NotAnOrderIdeal):
        quotient(K2, Subspace(2, ((1, 0),)))


def test_quotient_to_dimension_zero():
    full = corpus.full_wedge(2)
    nset, nsub = infinitesimals(full)
    assert nsub.rank == 2
    qspace, pres = quotient(full, nsub)
    assert qspace.dim == 0
    assert is_archimedean(qspace)
    assert is_almost_archimedean(qspace)


# ---------------------------------------------------------------------------
# lattice structure


def test_exists_sup_examples():
    assert exists_sup(QUADRANT, (1, 0), (0, 1)) == (Fraction(1), Fraction(1))
    assert exists_sup(K2, (0, 0), (0, 1)) == (Fraction(0), Fraction(1))
    assert is_riesz(QUADRANT)
    assert is_riesz(K2)


def test_sup_missing():
    assert exists_sup(OPEN2, (1, 0), (0, 1)) is None


def test_sup_non_unique():
    halfspace = corpus.halfspace_wedge(2, (1, 1))
    with pytest.raises(NonUniqueSupremum):
        exists_sup(halfspace, (0, 0), (0, 0))


def test_riesz_dimension_cap():
    with pytest.raises(BudgetExceeded):
        is_riesz(corpus.lex_pair_product(3))


def test_riesz_preserved_by_quotient_with_dominance_wedge():
    for spc in (QUADRANT, K2, corpus.lex_pair_product(2)):
        assert is_riesz(spc)
        _, nsub = infinitesimals(spc)
        qspace, pres = quotient(spc, nsub)
        dom = d_wedge(qspace)
        assert is_riesz(OVSpace(qspace.dim, dom))


# ---------------------------------------------------------------------------
# heredity and stability properties


def test_subcone_heredity():
    from ovskit.linarith import disj, neg

    pairs = [
        (OPEN2, QUADRANT),
        (space(2, parse_formula("x2 = 0 and x1 >= 0")), corpus.generated_wedge(((1, 1), (1, -1)))),
    ]
    for sub, sup in pairs:
        names = ("x1", "x2")
        contained = qe.decide(
            qe.forall(names, disj([neg(sub.positive.formula), sup.positive.formula]))
        )
        assert contained
        assert is_almost_archimedean(sup)
        assert is_almost_archimedean(sub)


def test_intersection_stability():
    a, b = QUADRANT, corpus.generated_wedge(((1, 1), (1, -1)))
    both = OVSpace(2, intersection(a.positive, b.positive))
    assert is_archimedean(a) and is_archimedean(b)
    assert is_archimedean(both)
    a2, b2 = K2, corpus.halfspace_wedge(2, (1, 0))
    meet = OVSpace(2, intersection(a2.positive, b2.positive))
    assert is_wedge(meet.positive)


def test_order_unit_makes_every_positive_element_archimedean():
    rng = random.Random(11)
    for spc, unit in ((QUADRANT, (1, 1)), (corpus.closed_orthant(3), (1, 1, 1))):
        assert is_order_unit(spc, unit)
        assert is_archimedean_element(spc, unit)
        for x in helpers.sample_members(spc, rng, 5):
            assert is_archimedean_element(spc, x)


def test_flags_cache_agrees_with_recomputation():
    spc = corpus.lex_cone(2)
    first = spc.wedge_verdict()
    again = is_wedge(spc.positive)
    assert first.value == again.value
    assert spc.flags["wedge"].value is True


def test_dim_zero_space_is_vacuously_everything():
    z = space(0, TRUE)
    assert is_wedge(z.positive)
    assert is_cone(z.positive)
    assert is_generating(z.positive)
    assert is_archimedean(z)
    assert is_almost_archimedean(z)
    assert is_riesz(z)
    nset, nsub = infinitesimals(z)
    assert nsub.rank == 0


def test_sampling_check_of_scale_reduction():
    # whenever the ray rewrite says the hypothesis holds, direct
    # membership holds for every sampled natural scale
    for spc in (K2, K1, OPEN2):
        verdict = is_archimedean(spc)
        if verdict.value is False:
            w = verdict.witness
            assert helpers.check_ray_memberships(spc, w["x"], w["y"])
