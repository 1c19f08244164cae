"""Archimedeanization by iterated quotients, and its universal property.

Starting from an ordered vector space, the infinitesimal subspace is
computed and quotiented away; each nonzero stage strictly drops the
dimension, so the iteration stabilizes after at most ``dim`` steps.  The
final space carries the dominance wedge of the stabilized quotient and
is verified to be Archimedean.  Any positive map into an Archimedean
space then factors uniquely through the composite projection, which
:func:`factor_through` constructs and checks by exact matrix algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from . import linalg, qe
from .errors import (
    DimensionMismatch,
    InternalInvariantViolation,
    KernelConditionFailed,
    MapNotPositive,
    NotACone,
    TargetNotArchimedean,
)
from .linarith import conj, neg
from .spaces import (
    LinearMap,
    OVSpace,
    QuotientPresentation,
    SemilinearSet,
    Subspace,
    Verdict,
    _fresh,
    _var_exprs,
    d_wedge,
    infinitesimals,
    is_archimedean,
    quotient,
    section_map,
    xvars,
)


@dataclass(frozen=True)
class ArchStep:
    """One quotient stage: the infinitesimal ideal found at this stage
    (in current coordinates and pulled back to the original space) and
    the projection that removes it."""

    index: int
    ideal: Subspace
    pulled_back_ideal: Subspace
    presentation: QuotientPresentation


@dataclass(frozen=True)
class ArchResult:
    """The full iterated-quotient construction.

    ``final_space`` carries the dominance wedge of the last quotient;
    ``final_positive`` retains the projected positive set of the same
    quotient for inspection.  ``composite`` is the product of the step
    projections and ``section`` a right inverse of it.
    """

    space: OVSpace
    steps: tuple
    composite: LinearMap
    section: LinearMap
    final_space: OVSpace
    final_positive: SemilinearSet
    stabilization_depth: int

    @property
    def kernel(self) -> Subspace:
        if self.steps:
            return self.steps[-1].pulled_back_ideal
        return Subspace(self.space.dim, ())


def archimedeanize(V: OVSpace, budget=None) -> ArchResult:
    """Iterate infinitesimal quotients until none remain, then pass to
    the dominance wedge.  Requires a verified cone."""
    cone = V.cone_verdict(budget)
    if not cone:
        raise NotACone(f"positive set is not a cone: {cone.reason}")
    steps = []
    current = V
    composite = LinearMap.identity(V.dim)
    section = LinearMap.identity(V.dim)
    while True:
        _, ideal = infinitesimals(current, budget)
        if ideal.rank == 0:
            break
        quotient_space, pres = quotient(current, ideal, budget)
        composite = pres.projection.compose(composite)
        section = section.compose(section_map(pres))
        pulled_back = Subspace(V.dim, linalg.nullspace(composite.matrix, V.dim))
        steps.append(
            ArchStep(
                index=len(steps),
                ideal=ideal,
                pulled_back_ideal=pulled_back,
                presentation=pres,
            )
        )
        current = quotient_space
        if len(steps) > V.dim:
            raise InternalInvariantViolation("quotient iteration failed to stabilize")
    final_positive = current.positive
    dominance = d_wedge(current, budget)
    final_space = OVSpace(current.dim, dominance)
    if not is_archimedean(final_space, budget):
        raise InternalInvariantViolation("final dominance wedge is not Archimedean")
    return ArchResult(
        space=V,
        steps=tuple(steps),
        composite=composite,
        section=section,
        final_space=final_space,
        final_positive=final_positive,
        stabilization_depth=len(steps),
    )


def is_positive_map(phi: LinearMap, V: OVSpace, U: OVSpace, budget=None) -> Verdict:
    """Whether ``phi`` carries the positive set of ``V`` into ``U``'s."""
    if phi.domain_dim != V.dim or phi.codomain_dim != U.dim:
        raise DimensionMismatch("map shape disagrees with the spaces")
    names = _fresh("a", V.dim)
    exprs = _var_exprs(names)
    refut = conj([V.positive.at(exprs), neg(U.positive.at(phi.image_exprs(exprs)))])
    w = qe.find_witness(qe.exists(names, refut), budget)
    if w is not None:
        return Verdict(False, witness={"x": w.point(names)}, reason="positive point maps outside")
    return Verdict(True)


def factor_through(res: ArchResult, phi: LinearMap, U: OVSpace, budget=None) -> LinearMap:
    """The unique map through the composite projection satisfying
    ``factored . composite == phi``, verified exactly.

    Requires ``U`` Archimedean and ``phi`` positive; the kernel of the
    composite projection must be killed by ``phi``, which for a valid
    construction is automatic.
    """
    if not is_archimedean(U, budget):
        raise TargetNotArchimedean("target positive set is not Archimedean")
    positive = is_positive_map(phi, res.space, U, budget)
    if not positive:
        raise MapNotPositive(f"map is not positive at {positive.witness}")
    for k in res.kernel.basis:
        if any(phi.apply(k)):
            raise KernelConditionFailed(
                "map does not vanish on the projection kernel"
            )
    factored = phi.compose(res.section)
    if factored.compose(res.composite).matrix != phi.matrix:
        raise InternalInvariantViolation("factorization identity failed")
    if linalg.rank(res.composite.matrix) != res.final_space.dim:
        raise InternalInvariantViolation("composite projection is not surjective")
    factored_positive = is_positive_map(factored, res.final_space, U, budget)
    if not factored_positive:
        raise InternalInvariantViolation(
            "factored map is not positive for the dominance wedge"
        )
    return factored


# ---------------------------------------------------------------------------
# Bounded isomorphism search


def _cell_points(space: OVSpace, budget=None, cap: int = 6) -> list:
    """Sample nonzero members, one from each disjunct of the positive set."""
    from .linarith import cells_formula, dnf_cells, nonzero, disj

    names = xvars(space.dim)
    points = []
    for cell in dnf_cells(space.positive.formula):
        probe = conj(
            [cells_formula([cell]), disj(nonzero(e) for e in _var_exprs(names))]
        )
        w = qe.find_witness(qe.exists(names, probe), budget)
        if w is not None:
            pt = w.point(names)
            if pt not in points:
                points.append(pt)
        if len(points) >= cap:
            break
    return points


def _signed_permutations(n: int):
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            yield tuple(
                tuple(Fraction(signs[i]) if perm[i] == j else Fraction(0) for j in range(n))
                for i in range(n)
            )


def _maps_onto(T: LinearMap, A: OVSpace, B: OVSpace, budget=None) -> bool:
    """Decide x in A+ <=> Tx in B+ pointwise; with T invertible this is
    exactly T(A+) = B+ together with the inverse containment."""
    names = _fresh("a", A.dim)
    exprs = _var_exprs(names)
    image = B.positive.at(T.image_exprs(exprs))
    agree = conj(
        [
            neg(conj([A.positive.at(exprs), neg(image)])),
            neg(conj([neg(A.positive.at(exprs)), image])),
        ]
    )
    return qe.decide(qe.forall(names, agree), budget)


def order_isomorphic(A: OVSpace, B: OVSpace, budget=None, max_dim: int = 3) -> Verdict:
    """Bounded search for an invertible matrix matching the positive sets.

    Returns a definite True with the matrix as witness, a definite False
    only when a structural invariant (wedge/cone/generating/Archimedean
    flags) separates the spaces, and None when the candidate search is
    exhausted; exhaustion never certifies non-isomorphism.
    """
    if A.dim != B.dim:
        raise DimensionMismatch("spaces have different dimensions")
    if A.dim > max_dim:
        raise DimensionMismatch(f"isomorphism search is capped at dimension {max_dim}")
    wa, wb = A.wedge_verdict(budget), B.wedge_verdict(budget)
    if bool(wa) != bool(wb):
        return Verdict(False, reason="wedge axioms separate the spaces")
    if wa and wb:
        from .spaces import is_almost_archimedean

        for name, fa, fb in (
            ("cone", A.cone_verdict(budget), B.cone_verdict(budget)),
            ("generating", A.generating_verdict(budget), B.generating_verdict(budget)),
            ("archimedean", is_archimedean(A, budget), is_archimedean(B, budget)),
            (
                "almost archimedean",
                is_almost_archimedean(A, budget),
                is_almost_archimedean(B, budget),
            ),
        ):
            if bool(fa) != bool(fb):
                return Verdict(False, reason=f"{name} verdicts differ")
    n = A.dim
    candidates = [LinearMap.identity(n)]
    for rows in _signed_permutations(n):
        candidates.append(LinearMap(rows, n, n))
    pa = _cell_points(A, budget)
    pb = _cell_points(B, budget)
    for source in permutations(pa, n):
        if n == 0 or linalg.det(source) == 0:
            continue
        # Columns of the candidate matrix send the source tuple to the target.
        inv = linalg.inverse(tuple(zip(*source)))
        for target in permutations(pb, n):
            T = linalg.mat_mul(tuple(zip(*target)), inv)
            candidates.append(LinearMap(T, n, n))
            if len(candidates) > 200:
                break
        if len(candidates) > 200:
            break
    seen = set()
    for T in candidates:
        if T.matrix in seen:
            continue
        seen.add(T.matrix)
        if linalg.det(T.matrix) == 0:
            continue
        if not all(B.positive.contains(T.apply(p)) for p in pa):
            continue
        if _maps_onto(T, A, B, budget):
            return Verdict(True, witness={"matrix": T.matrix})
    return Verdict(None, reason="no isomorphism found within the candidate budget")
