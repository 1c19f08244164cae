"""Stock cones and wedges, plus oracle cones with sampling falsification.

The constructors build the semilinear spaces used throughout the test
corpus: orthants (closed, and strict-with-zero), lexicographic cones and
their finite products, half spaces, the full and zero wedges, and conic
hulls of finitely many generators.  Cones whose membership test is exact
but not semilinear (strictly positive quadratics in coefficient space)
are wrapped as :class:`OracleCone` and investigated by seeded sampling,
which can refute order properties with checkable evidence but never
certifies them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import qe
from .errors import DimensionMismatch
from .linarith import AffineExpr, TRUE, conj, disj, eq, ge, gt
from .spaces import OVSpace, SemilinearSet, point, space, xvars

_ZERO = Fraction(0)


def _coord(i: int) -> AffineExpr:
    return AffineExpr.var(f"x{i + 1}")


def closed_orthant(n: int) -> OVSpace:
    """All coordinates nonnegative."""
    return space(n, conj(ge(_coord(i)) for i in range(n)))


def open_orthant_cone(n: int) -> OVSpace:
    """All coordinates strictly positive, together with the origin.

    For a finite index set this is exactly the cone of the ordering
    "f < g when g - f is bounded away from zero": the minimum over
    finitely many coordinates is positive iff each one is.
    """
    strict = conj(gt(_coord(i)) for i in range(n))
    zero = conj(eq(_coord(i)) for i in range(n))
    return space(n, disj([strict, zero]))


def k1_cone() -> OVSpace:
    """Open half plane {x1 > 0} together with the origin."""
    return space(2, disj([gt(_coord(0)), conj([eq(_coord(0)), eq(_coord(1))])]))


def lex_cone(n: int) -> OVSpace:
    """First nonzero coordinate positive (the lexicographic cone)."""
    if n == 0:
        return space(0, TRUE)
    inner = ge(_coord(n - 1))
    for i in range(n - 2, -1, -1):
        inner = disj([gt(_coord(i)), conj([eq(_coord(i)), inner])])
    return space(n, inner)


def lex_pair_product(m: int) -> OVSpace:
    """m independent lexicographic planes, ordered coordinatewise."""
    pairs = []
    for k in range(m):
        first, second = _coord(2 * k), _coord(2 * k + 1)
        pairs.append(disj([gt(first), conj([eq(first), ge(second)])]))
    return space(2 * m, conj(pairs))


def halfspace_wedge(n: int, normal: Sequence) -> OVSpace:
    normal = point(normal)
    if len(normal) != n:
        raise DimensionMismatch("normal vector dimension mismatch")
    form = AffineExpr({f"x{i + 1}": c for i, c in enumerate(normal) if c})
    return space(n, ge(form))


def full_wedge(n: int) -> OVSpace:
    return space(n, TRUE)


def zero_cone(n: int) -> OVSpace:
    return space(n, conj(eq(_coord(i)) for i in range(n)))


def generated_wedge(generators: Sequence[Sequence], dim: int = None, budget=None) -> OVSpace:
    """Conic hull of finitely many rational vectors, as a closed
    semilinear set obtained by projecting out the multipliers.

    Without generators the hull is the origin; the ambient dimension
    must then be passed explicitly.
    """
    gens = [point(g) for g in generators]
    if not gens:
        if dim is None:
            raise DimensionMismatch("an empty hull needs an explicit ambient dimension")
        return zero_cone(dim)
    n = len(gens[0]) if dim is None else dim
    for g in gens:
        if len(g) != n:
            raise DimensionMismatch("generators share no common dimension")
    lams = tuple(f"l{j + 1}" for j in range(len(gens)))
    parts = [ge(AffineExpr.var(l)) for l in lams]
    for i in range(n):
        combo = AffineExpr({l: g[i] for l, g in zip(lams, gens) if g[i]})
        parts.append(eq(_coord(i) - combo))
    formula = qe.eliminate_exists(conj(parts), lams, budget)
    return space(n, formula)


# ---------------------------------------------------------------------------
# Oracle cones


@dataclass(frozen=True)
class OracleCone:
    """A cone known only through an exact membership predicate.

    ``member`` must be total and deterministic on rational points.
    ``seed_candidates`` are (x, y) pairs worth trying first when hunting
    for refutations; ``companion`` optionally carries a related oracle
    (for the strictly-positive quadratic cone, its nonnegative closure).
    """

    dim: int
    name: str
    member: Callable[[tuple], bool]
    seed_candidates: tuple = ()
    companion: Optional["OracleCone"] = None

    def contains(self, pt: Sequence) -> bool:
        pt = point(pt)
        if len(pt) != self.dim:
            raise DimensionMismatch("point dimension mismatch")
        return bool(self.member(pt))


def from_semilinear(space_or_set, name: str = "semilinear") -> OracleCone:
    """Wrap an exact semilinear membership test as an oracle."""
    sset = space_or_set.positive if isinstance(space_or_set, OVSpace) else space_or_set
    return OracleCone(dim=sset.dim, name=name, member=sset.contains)


def poly_pos_cone_deg2() -> OracleCone:
    """Coefficient cone of quadratics ``a t^2 + b t + c`` positive on the
    whole line (plus the zero polynomial), with the everywhere-nonnegative
    cone as companion.  Membership is decided exactly through the
    discriminant, so no approximation enters."""

    def strict_member(pt: tuple) -> bool:
        a, b, c = pt
        if a > 0:
            return b * b - 4 * a * c < 0
        return a == 0 and b == 0 and c >= 0

    def nonneg_member(pt: tuple) -> bool:
        a, b, c = pt
        if a > 0:
            return b * b - 4 * a * c <= 0
        return a == 0 and b == 0 and c >= 0

    companion = OracleCone(dim=3, name="poly_nonneg_deg2", member=nonneg_member)
    one = (Fraction(0), Fraction(0), Fraction(1))
    minus_t_squared = (Fraction(-1), Fraction(0), Fraction(0))
    return OracleCone(
        dim=3,
        name="poly_pos_deg2",
        member=strict_member,
        seed_candidates=((one, minus_t_squared),),
        companion=companion,
    )


@dataclass(frozen=True)
class Evidence:
    """A checked refutation candidate: every sampled hypothesis scale
    passed the membership test and the conclusion failed."""

    property: str
    x: tuple
    y: tuple
    checked: tuple

    def summary(self) -> str:
        return (
            f"{self.property}: x={self.x}, y={self.y}, "
            f"hypothesis verified for {len(self.checked)} scales"
        )


def _sample_point(rng: random.Random, dim: int) -> tuple:
    return tuple(
        Fraction(rng.randint(-6, 6), rng.choice((1, 1, 2, 3))) for _ in range(dim)
    )


def _candidate_pairs(oracle: OracleCone, rng: random.Random, budget: int):
    for pair in oracle.seed_candidates:
        yield pair
    for _ in range(budget):
        yield _sample_point(rng, oracle.dim), _sample_point(rng, oracle.dim)


def falsify(
    oracle: OracleCone,
    prop: str,
    budget: int = 10_000,
    seed: int = 0,
    element: Sequence = None,
    scale_checks: int = 1000,
) -> Optional[Evidence]:
    """Search for sampling evidence against an order property.

    ``prop`` is one of ``archimedean``, ``almost-archimedean``, or
    ``element`` (which needs the positive ``element`` under test).  The
    returned evidence lists the scales at which the hypothesis was
    verified; ``None`` means the budget ran out, never that the property
    holds.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    rng = random.Random(seed)
    scales = tuple(range(1, scale_checks + 1))
    if prop == "archimedean":
        for x, y in _candidate_pairs(oracle, rng, budget):
            if oracle.contains(tuple(-v for v in y)):
                continue
            if all(
                oracle.contains(tuple(a - n * b for a, b in zip(x, y))) for n in scales
            ):
                return Evidence("archimedean", x, y, scales)
        return None
    if prop == "almost-archimedean":
        two_sided = tuple(range(-scale_checks, scale_checks + 1))
        for x, y in _candidate_pairs(oracle, rng, budget):
            if not any(y):
                continue
            if all(
                oracle.contains(tuple(a + n * b for a, b in zip(x, y))) for n in two_sided
            ):
                return Evidence("almost-archimedean", x, y, two_sided)
        return None
    if prop == "element":
        if element is None:
            raise ValueError("the element property needs a base point")
        x = point(element)
        if not oracle.contains(x):
            raise ValueError("the base point must belong to the oracle cone")
        for _ in range(budget):
            y = _sample_point(rng, oracle.dim)
            if oracle.contains(y):
                continue
            if all(
                oracle.contains(tuple(a + n * b for a, b in zip(x, y))) for n in scales
            ):
                return Evidence("element", x, y, scales)
        return None
    raise ValueError(f"unknown property {prop!r}")


# ---------------------------------------------------------------------------
# Named corpus


FACTORIES = {
    "closed_orthant": closed_orthant,
    "open_orthant_cone": open_orthant_cone,
    "k1": k1_cone,
    "lex_cone": lex_cone,
    "lex_pair_product": lex_pair_product,
    "halfspace_wedge": halfspace_wedge,
    "full_wedge": full_wedge,
    "zero_cone": zero_cone,
}

ORACLE_FACTORIES = {
    "poly_pos_deg2": poly_pos_cone_deg2,
}


def standard_corpus() -> list:
    """The named spaces used by the regression and property suites."""
    return [
        ("orthant1", closed_orthant(1)),
        ("quadrant", closed_orthant(2)),
        ("orthant3", closed_orthant(3)),
        ("k1", k1_cone()),
        ("k2", lex_cone(2)),
        ("lex3", lex_cone(3)),
        ("open2", open_orthant_cone(2)),
        ("open3", open_orthant_cone(3)),
        ("open4", open_orthant_cone(4)),
        ("pairs2", lex_pair_product(2)),
        ("pairs3", lex_pair_product(3)),
        ("halfspace", halfspace_wedge(2, (1, 1))),
        ("full2", full_wedge(2)),
        ("zero3", zero_cone(3)),
        ("butterfly", generated_wedge(((1, 1), (1, -1)))),
        ("simplicial3", generated_wedge(((1, 0, 0), (1, 1, 0), (1, 1, 1)))),
    ]
