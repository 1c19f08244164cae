"""Ordered vector spaces with semilinear positive sets, and the
order-theoretic predicates on them.

A :class:`SemilinearSet` is an ambient dimension together with a
quantifier-free formula in coordinates ``x1..xn``; it represents every
wedge, cone, and ideal handled by the toolkit.  An :class:`OVSpace`
pairs a dimension with its positive set and caches verified structural
flags.  All predicates compile to prenex sentences and are decided
exactly by the ``qe`` module; on a negative verdict they return a
validated rational counterexample.

Conditions quantified over all natural scalings ("for every n, the
point x - n*y stays positive") are rewritten with the ray/line helpers
of the ``qe`` module.  That rewrite assumes the positive set is convex,
so every operation that uses it first verifies the wedge axioms; for a
semilinear set those reduce to containing zero and being closed under
addition and halving, which together force closure under all
nonnegative rational scaling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import linalg, qe
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    EncodingDisagreement,
    NonUniqueSupremum,
    NotAnOrderIdeal,
    NotASubspace,
    NotAWedge,
    NotPositiveElement,
    PostconditionFailed,
)
from .linarith import (
    FALSE,
    TRUE,
    AffineExpr,
    Formula,
    canonical_str,
    conj,
    disj,
    eq,
    evaluate,
    ge,
    gt,
    neg,
    nonzero,
    substitute_all,
    var_key,
    variables,
)

_ZERO = Fraction(0)
_HALF = Fraction(1, 2)


def xvars(n: int) -> tuple:
    return tuple(f"x{i + 1}" for i in range(n))


def _fresh(prefix: str, n: int) -> tuple:
    return tuple(f"{prefix}{i + 1}" for i in range(n))


def _var_exprs(names: Sequence[str]) -> tuple:
    return tuple(AffineExpr.var(n) for n in names)


def point(values: Iterable) -> tuple:
    return linalg.vec(values)


def assignment_for(names: Sequence[str], values: Sequence[Fraction]) -> dict:
    return dict(zip(names, values))


@dataclass(frozen=True)
class Verdict:
    """Boolean result with an optional counterexample.

    ``value`` may be None when the question was not decided (for
    example an order-unit check on an element outside the positive
    set); ``bool(verdict)`` is True only for a definite yes.
    """

    value: Optional[bool]
    witness: Optional[dict] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.value is True


class SemilinearSet:
    """A finite boolean combination of rational linear constraints."""

    __slots__ = ("dim", "formula")

    def __init__(self, dim: int, formula: Formula):
        allowed = set(xvars(dim))
        free = variables(formula)
        if not free <= allowed:
            extra = ", ".join(sorted(free - allowed, key=var_key))
            raise DimensionMismatch(
                f"formula mentions {extra} outside x1..x{dim}"
            )
        self.dim = dim
        self.formula = formula

    def contains(self, pt: Sequence) -> bool:
        pt = point(pt)
        if len(pt) != self.dim:
            raise DimensionMismatch(f"point has {len(pt)} coordinates, set has dim {self.dim}")
        return evaluate(self.formula, assignment_for(xvars(self.dim), pt))

    def at(self, exprs: Sequence[AffineExpr]) -> Formula:
        """Membership formula with coordinate i replaced by exprs[i]."""
        if len(exprs) != self.dim:
            raise DimensionMismatch("coordinate expression count mismatch")
        mapping = {n: e for n, e in zip(xvars(self.dim), exprs)}
        return substitute_all(self.formula, mapping)

    def at_point(self, pt: Sequence) -> Formula:
        return self.at(tuple(AffineExpr.const(v) for v in point(pt)))

    def canonical_str(self) -> str:
        return canonical_str(self.formula)

    def __eq__(self, other):
        return (
            isinstance(other, SemilinearSet)
            and self.dim == other.dim
            and self.formula == other.formula
        )

    def __hash__(self):
        return hash((self.dim, self.formula))

    def __repr__(self):
        return f"SemilinearSet({self.dim}, {self.canonical_str()!r})"


def equivalent_sets(a: SemilinearSet, b: SemilinearSet, budget=None) -> bool:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dims {a.dim} and {b.dim} differ")
    names = xvars(a.dim)
    both = disj([conj([a.formula, b.formula]), conj([neg(a.formula), neg(b.formula)])])
    return qe.decide(qe.forall(names, both), budget)


def intersection(a: SemilinearSet, b: SemilinearSet) -> SemilinearSet:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dims {a.dim} and {b.dim} differ")
    return SemilinearSet(a.dim, conj([a.formula, b.formula]))


def negated_set(a: SemilinearSet) -> SemilinearSet:
    """The pointwise negation ``-A`` (not the complement)."""
    flip = tuple(-e for e in _var_exprs(xvars(a.dim)))
    return SemilinearSet(a.dim, a.at(flip))


class LinearMap:
    """Rational matrix acting on column points, rows = codomain."""

    __slots__ = ("matrix", "domain_dim", "codomain_dim")

    def __init__(self, rows: Iterable[Iterable], domain_dim: int = None, codomain_dim: int = None):
        m = linalg.mat(rows)
        if codomain_dim is None:
            codomain_dim = len(m)
        if domain_dim is None:
            if not m:
                raise DimensionMismatch("empty matrix needs an explicit domain dimension")
            domain_dim = len(m[0])
        if len(m) != codomain_dim or any(len(r) != domain_dim for r in m):
            raise DimensionMismatch("matrix shape disagrees with declared dimensions")
        self.matrix = m
        self.domain_dim = domain_dim
        self.codomain_dim = codomain_dim

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(linalg.identity(n), n, n)

    @classmethod
    def zero(cls, domain_dim: int, codomain_dim: int) -> "LinearMap":
        return cls(
            tuple(linalg.zeros(domain_dim) for _ in range(codomain_dim)),
            domain_dim,
            codomain_dim,
        )

    def apply(self, pt: Sequence) -> tuple:
        pt = point(pt)
        if len(pt) != self.domain_dim:
            raise DimensionMismatch("point dimension mismatch")
        return linalg.mat_vec(self.matrix, pt)

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self after inner."""
        if inner.codomain_dim != self.domain_dim:
            raise DimensionMismatch("composition dimensions disagree")
        if self.domain_dim == 0:
            rows = tuple(linalg.zeros(inner.domain_dim) for _ in range(self.codomain_dim))
        else:
            rows = linalg.mat_mul(self.matrix, inner.matrix)
        return LinearMap(rows, inner.domain_dim, self.codomain_dim)

    def image_exprs(self, exprs: Sequence[AffineExpr]) -> tuple:
        from .linarith import linear_combination

        return tuple(
            linear_combination((row[j], exprs[j]) for j in range(self.domain_dim))
            for row in self.matrix
        )

    def __eq__(self, other):
        return (
            isinstance(other, LinearMap)
            and self.matrix == other.matrix
            and self.domain_dim == other.domain_dim
            and self.codomain_dim == other.codomain_dim
        )

    def __hash__(self):
        return hash((self.matrix, self.domain_dim, self.codomain_dim))

    def __repr__(self):
        return f"LinearMap({self.matrix!r})"


class Subspace:
    """A vector subspace given by a linearly independent rational basis."""

    __slots__ = ("dim", "basis")

    def __init__(self, dim: int, basis: Iterable[Iterable] = ()):
        vectors = tuple(point(v) for v in basis)
        for v in vectors:
            if len(v) != dim:
                raise DimensionMismatch("basis vector dimension mismatch")
        if not linalg.independent(vectors, dim):
            raise NotASubspace("basis vectors are linearly dependent")
        self.dim = dim
        self.basis = vectors

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return linalg.in_span(self.basis, point(v))

    def span_set(self) -> SemilinearSet:
        """The span as a semilinear set, cut out by its annihilator."""
        functionals = linalg.annihilator(self.basis, self.dim)
        parts = [
            eq(AffineExpr({n: c for n, c in zip(xvars(self.dim), f) if c}))
            for f in functionals
        ]
        return SemilinearSet(self.dim, conj(parts))

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.dim == other.dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.dim, self.basis))

    def __repr__(self):
        return f"Subspace({self.dim}, {self.basis!r})"


class OVSpace:
    """A vector space of a given dimension with a semilinear positive set.

    Structural verdicts (wedge, cone, generating) are cached after the
    first computation; values are immutable so recomputation always
    agrees with the cache.
    """

    __slots__ = ("dim", "positive", "_flags")

    def __init__(self, dim: int, positive: SemilinearSet):
        if positive.dim != dim:
            raise DimensionMismatch("positive set dimension disagrees with space")
        self.dim = dim
        self.positive = positive
        self._flags: dict = {}

    @property
    def flags(self) -> dict:
        return dict(self._flags)

    def _cached(self, key: str, compute) -> Verdict:
        if key not in self._flags:
            self._flags[key] = compute()
        return self._flags[key]

    def wedge_verdict(self, budget=None) -> Verdict:
        return self._cached("wedge", lambda: is_wedge(self.positive, budget))

    def cone_verdict(self, budget=None) -> Verdict:
        return self._cached("cone", lambda: is_cone(self.positive, budget))

    def generating_verdict(self, budget=None) -> Verdict:
        return self._cached("generating", lambda: is_generating(self.positive, budget))

    def require_wedge(self, budget=None) -> None:
        verdict = self.wedge_verdict(budget)
        if not verdict:
            raise NotAWedge(f"positive set fails the wedge axioms: {verdict.reason}")

    def contains(self, pt: Sequence) -> bool:
        return self.positive.contains(pt)

    def __repr__(self):
        return f"OVSpace({self.dim}, {self.positive.canonical_str()!r})"


def space(dim: int, formula: Formula) -> OVSpace:
    return OVSpace(dim, SemilinearSet(dim, formula))


# ---------------------------------------------------------------------------
# Structural predicates on semilinear sets


def _membership_witness(S: SemilinearSet, extra: Formula = TRUE, budget=None):
    names = xvars(S.dim)
    return qe.find_witness(qe.exists(names, conj([S.formula, extra])), budget)


def is_wedge(S: SemilinearSet, budget=None) -> Verdict:
    """Closure under addition and all nonnegative rational scaling.

    For a semilinear set, closure under addition and halving together
    with membership of the origin is equivalent to the full scaling
    axiom: the scalars fixing a given point form a semilinear set that
    contains all dyadics and is closed under addition, which over the
    rationals leaves no room for gaps.
    """
    n = S.dim
    member = _membership_witness(S, budget=budget)
    if member is None:
        return Verdict(True, reason="empty set satisfies the closure axioms vacuously")
    zero = (_ZERO,) * n
    if not S.contains(zero):
        return Verdict(
            False,
            witness={"x": member.point(xvars(n)), "r": _ZERO},
            reason="zero scaling leaves the set",
        )
    a, b = _fresh("a", n), _fresh("b", n)
    ea, eb = _var_exprs(a), _var_exprs(b)
    total = tuple(x + y for x, y in zip(ea, eb))
    add_refut = conj([S.at(ea), S.at(eb), neg(S.at(total))])
    w = qe.find_witness(qe.exists(a + b, add_refut), budget)
    if w is not None:
        return Verdict(
            False,
            witness={"x": w.point(a), "y": w.point(b)},
            reason="not closed under addition",
        )
    halves = tuple(x.scale(_HALF) for x in ea)
    half_refut = conj([S.at(ea), neg(S.at(halves))])
    w = qe.find_witness(qe.exists(a, half_refut), budget)
    if w is not None:
        return Verdict(
            False,
            witness={"x": w.point(a), "r": _HALF},
            reason="not closed under scaling",
        )
    return Verdict(True)


def is_cone(S: SemilinearSet, budget=None) -> Verdict:
    wedge = is_wedge(S, budget)
    if not wedge:
        return Verdict(False, witness=wedge.witness, reason=f"not a wedge: {wedge.reason}")
    n = S.dim
    a = _fresh("a", n)
    ea = _var_exprs(a)
    pointed_refut = conj(
        [S.at(ea), S.at(tuple(-x for x in ea)), disj(nonzero(x) for x in ea)]
    )
    w = qe.find_witness(qe.exists(a, pointed_refut), budget)
    if w is not None:
        return Verdict(False, witness={"x": w.point(a)}, reason="contains a nonzero line pair")
    return Verdict(True)


def is_generating(S: SemilinearSet, budget=None) -> Verdict:
    """Every vector is a difference of two members."""
    n = S.dim
    v, a = _fresh("v", n), _fresh("a", n)
    ev, ea = _var_exprs(v), _var_exprs(a)
    diff = tuple(x - y for x, y in zip(ea, ev))
    inner = qe.eliminate_exists(conj([S.at(ea), S.at(diff)]), a, budget)
    w = qe.find_witness(qe.exists(v, neg(inner)), budget)
    if w is not None:
        return Verdict(False, witness={"v": w.point(v)}, reason="vector is not a difference")
    return Verdict(True)


# ---------------------------------------------------------------------------
# Order relations


def leq(V: OVSpace, x: Sequence, y: Sequence) -> bool:
    x, y = point(x), point(y)
    if len(x) != V.dim or len(y) != V.dim:
        raise DimensionMismatch("point dimension mismatch")
    return V.positive.contains(linalg.sub(y, x))


def order_interval_member(V: OVSpace, z: Sequence, a: Sequence, b: Sequence) -> bool:
    return leq(V, a, z) and leq(V, z, b)


def is_order_convex(V: OVSpace, A: SemilinearSet, budget=None) -> Verdict:
    if A.dim != V.dim:
        raise DimensionMismatch("set dimension disagrees with space")
    n = V.dim
    M = V.positive
    a, b, z = _fresh("a", n), _fresh("b", n), _fresh("w", n)
    ea, eb, ez = _var_exprs(a), _var_exprs(b), _var_exprs(z)
    between = conj(
        [
            M.at(tuple(zi - ai for zi, ai in zip(ez, ea))),
            M.at(tuple(bi - zi for bi, zi in zip(eb, ez))),
        ]
    )
    refut = conj([A.at(ea), A.at(eb), between, neg(A.at(ez))])
    w = qe.find_witness(qe.exists(a + b + z, refut), budget)
    if w is not None:
        return Verdict(
            False,
            witness={"a": w.point(a), "b": w.point(b), "z": w.point(z)},
            reason="order interval escapes the set",
        )
    return Verdict(True)


def _subspace_verdict(A: SemilinearSet, budget=None) -> Verdict:
    """Closure under addition, halving, and negation, plus the origin.

    Equivalent to being a vector subspace for semilinear sets, by the
    same density argument as the wedge scaling axiom.
    """
    n = A.dim
    if not A.contains((_ZERO,) * n):
        return Verdict(False, reason="missing the origin")
    a, b = _fresh("a", n), _fresh("b", n)
    ea, eb = _var_exprs(a), _var_exprs(b)
    add_refut = conj([A.at(ea), A.at(eb), neg(A.at(tuple(x + y for x, y in zip(ea, eb))))])
    w = qe.find_witness(qe.exists(a + b, add_refut), budget)
    if w is not None:
        return Verdict(
            False,
            witness={"x": w.point(a), "y": w.point(b)},
            reason="not closed under addition",
        )
    for reason, image in (
        ("not closed under halving", tuple(x.scale(_HALF) for x in ea)),
        ("not closed under negation", tuple(-x for x in ea)),
    ):
        w = qe.find_witness(qe.exists(a, conj([A.at(ea), neg(A.at(image))])), budget)
        if w is not None:
            return Verdict(False, witness={"x": w.point(a)}, reason=reason)
    return Verdict(True)


def is_order_ideal(V: OVSpace, A: SemilinearSet, budget=None) -> Verdict:
    sub = _subspace_verdict(A, budget)
    if not sub:
        return Verdict(False, witness=sub.witness, reason=f"not a subspace: {sub.reason}")
    return is_order_convex(V, A, budget)


# ---------------------------------------------------------------------------
# Archimedean-type predicates


def is_order_unit(V: OVSpace, e: Sequence, budget=None) -> Verdict:
    """Whether multiples of ``e`` eventually dominate every vector.

    The scaling quantifier is reduced to a single ray condition, which
    is only justified once ``e`` itself is positive; when it is not,
    the verdict is None ("undecided") rather than a guess.
    """
    V.require_wedge(budget)
    e = point(e)
    if len(e) != V.dim:
        raise DimensionMismatch("point dimension mismatch")
    if not V.positive.contains(e):
        return Verdict(None, reason="element is not positive; order-unit condition undecided")
    n = V.dim
    M = V.positive
    x = _fresh("a", n)
    ex = _var_exprs(x)
    t = "t1"
    te_minus_x = tuple(AffineExpr({t: ei}) - xi for ei, xi in zip(e, ex))
    dominated = qe.eliminate_exists(
        conj([ge(AffineExpr.var(t) - AffineExpr.const(1)), M.at(te_minus_x)]), (t,), budget
    )
    w = qe.find_witness(qe.exists(x, neg(dominated)), budget)
    if w is not None:
        return Verdict(False, witness={"x": w.point(x)}, reason="vector never dominated")
    return Verdict(True)


def _ray_hypothesis(M: SemilinearSet, start, direction) -> Formula:
    """Membership of the whole ray start + s*direction, s >= 0."""
    names = xvars(M.dim)
    p_map = {n: e for n, e in zip(names, start)}
    d_map = {n: e for n, e in zip(names, direction)}
    return qe.forall_on_ray(M.formula, p_map, d_map)


def _line_hypothesis(M: SemilinearSet, start, direction) -> Formula:
    names = xvars(M.dim)
    p_map = {n: e for n, e in zip(names, start)}
    d_map = {n: e for n, e in zip(names, direction)}
    return qe.forall_on_line(M.formula, p_map, d_map)


def is_archimedean(V: OVSpace, budget=None) -> Verdict:
    """Whether ``x - t*y`` positive for every t >= 1 forces ``-y`` positive."""
    V.require_wedge(budget)
    n = V.dim
    M = V.positive
    a, b = _fresh("a", n), _fresh("b", n)
    ea, eb = _var_exprs(a), _var_exprs(b)
    start = tuple(x - y for x, y in zip(ea, eb))
    direction = tuple(-y for y in eb)
    hypothesis = conj([M.at(ea), _ray_hypothesis(M, start, direction)])
    conclusion = M.at(tuple(-y for y in eb))
    w = qe.find_witness(qe.exists(a + b, conj([hypothesis, neg(conclusion)])), budget)
    if w is not None:
        return Verdict(
            False,
            witness={"x": w.point(a), "y": w.point(b)},
            reason="dominated direction is not negative-positive",
        )
    return Verdict(True)


def is_archimedean_lower_bounds(V: OVSpace, budget=None) -> Verdict:
    """Alternative encoding: zero is the greatest lower bound of the
    scalings y/n of every positive y.  Must agree with
    :func:`is_archimedean` on every space."""
    V.require_wedge(budget)
    n = V.dim
    M = V.positive
    y, z = _fresh("a", n), _fresh("b", n)
    ey, ez = _var_exprs(y), _var_exprs(z)
    start = tuple(u - v for u, v in zip(ey, ez))
    lower_bound = _ray_hypothesis(M, start, tuple(-v for v in ez))
    refut = conj([M.at(ey), lower_bound, neg(M.at(tuple(-v for v in ez)))])
    if qe.find_witness(qe.exists(y + z, refut), budget) is None:
        return Verdict(True)
    return Verdict(False)


def is_almost_archimedean(V: OVSpace, budget=None) -> Verdict:
    """Decided through both the scaling form and the straight-line form;
    the two must agree."""
    V.require_wedge(budget)
    n = V.dim
    M = V.positive
    a, b = _fresh("a", n), _fresh("b", n)
    ea, eb = _var_exprs(a), _var_exprs(b)
    line = _line_hypothesis(M, ea, eb)
    nonzero_b = disj(nonzero(y) for y in eb)
    # (i) the only direction dominated both ways is zero
    via_scaling = qe.decide(
        qe.forall(a + b, disj([neg(line), neg(nonzero_b)])), budget
    )
    # (ii) the set contains no straight line
    line_witness = qe.find_witness(qe.exists(a + b, conj([nonzero_b, line])), budget)
    via_lines = line_witness is None
    if via_scaling != via_lines:
        raise EncodingDisagreement(
            f"scaling encoding says {via_scaling}, line encoding says {via_lines}"
        )
    if via_lines:
        return Verdict(True)
    return Verdict(
        False,
        witness={"x": line_witness.point(a), "y": line_witness.point(b)},
        reason="contains a straight line",
    )


def is_archimedean_element(V: OVSpace, x: Sequence, budget=None) -> Verdict:
    V.require_wedge(budget)
    x = point(x)
    if not V.positive.contains(x):
        raise NotPositiveElement(f"{x} is not in the positive set")
    n = V.dim
    M = V.positive
    b = _fresh("b", n)
    eb = _var_exprs(b)
    ex = tuple(AffineExpr.const(v) for v in x)
    start = tuple(xi + yi for xi, yi in zip(ex, eb))
    hypothesis = _ray_hypothesis(M, start, eb)
    w = qe.find_witness(qe.exists(b, conj([hypothesis, neg(M.at(eb))])), budget)
    if w is not None:
        return Verdict(False, witness={"y": w.point(b)}, reason="perturbation is not positive")
    return Verdict(True)


def is_almost_archimedean_element(V: OVSpace, x: Sequence, budget=None) -> Verdict:
    V.require_wedge(budget)
    x = point(x)
    if not V.positive.contains(x):
        raise NotPositiveElement(f"{x} is not in the positive set")
    n = V.dim
    M = V.positive
    b = _fresh("b", n)
    eb = _var_exprs(b)
    ex = tuple(AffineExpr.const(v) for v in x)
    hypothesis = _line_hypothesis(M, ex, eb)
    nonzero_b = disj(nonzero(y) for y in eb)
    w = qe.find_witness(qe.exists(b, conj([hypothesis, nonzero_b])), budget)
    if w is not None:
        return Verdict(False, witness={"y": w.point(b)}, reason="nonzero two-sided perturbation")
    return Verdict(True)


# ---------------------------------------------------------------------------
# Infinitesimals, the dominance wedge, and uniform closure


def _infinitesimal_formula(V: OVSpace, budget=None) -> Formula:
    """The set of x bounded two-sidedly by a single y at every scale."""
    n = V.dim
    M = V.positive
    y = _fresh("b", n)
    ey = _var_exprs(y)
    ex = _var_exprs(xvars(n))
    up = _ray_hypothesis(M, tuple(v - u for v, u in zip(ey, ex)), tuple(-u for u in ex))
    down = _ray_hypothesis(M, tuple(v + u for v, u in zip(ey, ex)), ex)
    return qe.eliminate_exists(conj([up, down]), y, budget)


def subspace_from_set(S: SemilinearSet, budget=None) -> Subspace:
    """Extract a basis from a semilinear set known to be a subspace.

    Repeatedly finds a member outside the span built so far (using the
    annihilator functionals), then verifies the span reproduces the set
    exactly; failure to verify raises :class:`NotASubspace`.
    """
    n = S.dim
    names = xvars(n)
    basis: list = []
    while len(basis) < n:
        functionals = linalg.annihilator(tuple(basis), n)
        found = None
        for f in functionals:
            form = AffineExpr({nm: c for nm, c in zip(names, f) if c})
            w = qe.find_witness(
                qe.exists(names, conj([S.formula, nonzero(form)])), budget
            )
            if w is not None:
                found = w.point(names)
                break
        if found is None:
            break
        basis.append(found)
    sub = Subspace(n, basis)
    if not equivalent_sets(S, sub.span_set(), budget):
        raise NotASubspace("set is not the span of its extracted basis")
    return sub


def infinitesimals(V: OVSpace, budget=None) -> tuple:
    """The infinitesimal members as a set and as a verified subspace."""
    V.require_wedge(budget)
    formula = _infinitesimal_formula(V, budget)
    nset = SemilinearSet(V.dim, formula)
    return nset, subspace_from_set(nset, budget)


def d_wedge(V: OVSpace, budget=None) -> SemilinearSet:
    """Directions absorbed into the positive set by some positive offset.

    Postconditions checked exactly: the positive set is contained in the
    result, and the result meets its negation exactly in the
    infinitesimal subspace.
    """
    V.require_wedge(budget)
    n = V.dim
    M = V.positive
    xi = _fresh("u", n)
    exi = _var_exprs(xi)
    ex = _var_exprs(xvars(n))
    ray = _ray_hypothesis(M, tuple(a + b for a, b in zip(ex, exi)), ex)
    formula = qe.eliminate_exists(conj([M.at(exi), ray]), xi, budget)
    D = SemilinearSet(n, formula)
    if not qe.decide(qe.forall(xvars(n), disj([neg(M.formula), formula])), budget):
        raise PostconditionFailed("positive set escapes its dominance wedge")
    sym = intersection(D, negated_set(D))
    if not equivalent_sets(sym, SemilinearSet(n, _infinitesimal_formula(V, budget)), budget):
        raise PostconditionFailed("dominance wedge symmetric part differs from infinitesimals")
    return D


def uniform_closure(V: OVSpace, A: SemilinearSet, budget=None) -> SemilinearSet:
    """All limits of sequences from ``A`` converging uniformly relative
    to some positive bound.

    The epsilon quantifier is rescaled onto a ray, which requires ``A``
    to be a vector subspace (all intended uses are order ideals);
    anything else raises :class:`NotASubspace`.
    """
    V.require_wedge(budget)
    if A.dim != V.dim:
        raise DimensionMismatch("set dimension disagrees with space")
    sub = _subspace_verdict(A, budget)
    if not sub:
        raise NotASubspace(f"uniform closure needs a subspace: {sub.reason}")
    n = V.dim
    M = V.positive
    u, w, a = _fresh("u", n), _fresh("w", n), _fresh("a", n)
    eu, ew, ea = _var_exprs(u), _var_exprs(w), _var_exprs(a)
    near = conj(
        [
            A.at(ea),
            M.at(tuple(ui - wi + ai for ui, wi, ai in zip(eu, ew, ea))),
            M.at(tuple(ui + wi - ai for ui, wi, ai in zip(eu, ew, ea))),
        ]
    )
    chi = qe.eliminate_exists(near, a, budget)
    ex = _var_exprs(xvars(n))
    ray_map = {wn: xe for wn, xe in zip(w, ex)}
    along = qe.forall_on_ray(chi, ray_map, ray_map)
    formula = qe.eliminate_exists(conj([M.at(eu), along]), u, budget)
    return SemilinearSet(n, formula)


def uniform_closure_member(V: OVSpace, A: SemilinearSet, x: Sequence, budget=None) -> bool:
    return uniform_closure(V, A, budget).contains(x)


def is_uniformly_closed(V: OVSpace, A: SemilinearSet, budget=None) -> Verdict:
    closure = uniform_closure(V, A, budget)
    names = xvars(V.dim)
    w = qe.find_witness(
        qe.exists(names, conj([closure.formula, neg(A.formula)])), budget
    )
    if w is not None:
        return Verdict(
            False,
            witness={"x": w.point(names)},
            reason="uniform limit escapes the set",
        )
    return Verdict(True)


# ---------------------------------------------------------------------------
# Quotients


class QuotientPresentation:
    """A quotient by an ideal: kernel basis, complement coordinates, and
    the projection whose kernel is exactly the ideal."""

    __slots__ = ("ideal", "complement", "projection")

    def __init__(self, ideal: Subspace, complement: tuple, projection: LinearMap):
        self.ideal = ideal
        self.complement = complement
        self.projection = projection
        for v in ideal.basis:
            if any(projection.apply(v)):
                raise DimensionMismatch("projection does not vanish on the ideal")
        for i, v in enumerate(complement):
            if projection.apply(v) != linalg.unit(projection.codomain_dim, i):
                raise DimensionMismatch("projection is not the identity on the complement")

    def __repr__(self):
        return f"QuotientPresentation(rank={self.ideal.rank}, onto={self.projection.codomain_dim})"


def quotient_projection(N: Subspace) -> QuotientPresentation:
    """Canonical projection with kernel ``N``: complement coordinates are
    the non-pivot standard coordinates of the reduced basis."""
    n = N.dim
    reduced, pivots = linalg.rref(N.basis)
    pivot_set = set(pivots)
    free_cols = [c for c in range(n) if c not in pivot_set]
    rows = []
    for c in free_cols:
        row = [_ZERO] * n
        row[c] = Fraction(1)
        for r, p in zip(reduced, pivots):
            row[p] = -r[c]
        rows.append(tuple(row))
    projection = LinearMap(tuple(rows), n, len(free_cols))
    canonical_ideal = Subspace(n, reduced)
    complement = tuple(linalg.unit(n, c) for c in free_cols)
    return QuotientPresentation(canonical_ideal, complement, projection)


def quotient(V: OVSpace, N: Subspace, budget=None) -> tuple:
    """Quotient space by an order ideal, with its presentation.

    The positive set of the quotient is the projected positive set,
    which realizes adding the ideal to the original wedge.
    """
    if N.dim != V.dim:
        raise DimensionMismatch("ideal dimension disagrees with space")
    ideal_check = is_order_ideal(V, N.span_set(), budget)
    if not ideal_check:
        raise NotAnOrderIdeal(f"{ideal_check.reason}")
    pres = quotient_projection(N)
    positive = qe.project(V.positive, pres.projection, budget)
    return OVSpace(pres.projection.codomain_dim, positive), pres


def section_map(pres: QuotientPresentation) -> LinearMap:
    """Right inverse of the projection through the complement basis."""
    cols = pres.complement
    n = pres.ideal.dim
    rows = tuple(
        tuple(cols[j][i] for j in range(len(cols))) for i in range(n)
    )
    return LinearMap(rows, len(cols), n)


# ---------------------------------------------------------------------------
# Lattice structure


def _upper_bound_formula(V: OVSpace, names, u: Sequence, v: Sequence) -> Formula:
    es = _var_exprs(names)
    eu = tuple(AffineExpr.const(q) for q in point(u))
    ev = tuple(AffineExpr.const(q) for q in point(v))
    M = V.positive
    return conj(
        [
            M.at(tuple(s - q for s, q in zip(es, eu))),
            M.at(tuple(s - q for s, q in zip(es, ev))),
        ]
    )


def exists_sup(V: OVSpace, u: Sequence, v: Sequence, budget=None, max_dim: int = 4):
    """The least upper bound of two points when it is a single point.

    Returns None when no least upper bound exists; raises
    :class:`NonUniqueSupremum` when the minimizing set is not a point.
    """
    if V.dim > max_dim:
        raise BudgetExceeded(f"lattice checks are capped at dimension {max_dim}")
    n = V.dim
    M = V.positive
    s, w = _fresh("a", n), _fresh("w", n)
    es, ew = _var_exprs(s), _var_exprs(w)
    ub_s = _upper_bound_formula(V, s, u, v)
    ub_w = _upper_bound_formula(V, w, u, v)
    above = M.at(tuple(wi - si for wi, si in zip(ew, es)))
    minimal = neg(qe.eliminate_exists(conj([ub_w, neg(above)]), w, budget))
    sigma = conj([ub_s, minimal])
    first = qe.find_witness(qe.exists(s, sigma), budget)
    if first is None:
        return None
    s2 = _fresh("b", n)
    sigma2 = substitute_all(sigma, {a: AffineExpr.var(b) for a, b in zip(s, s2)})
    distinct = disj(nonzero(x - y) for x, y in zip(es, _var_exprs(s2)))
    if qe.find_witness(qe.exists(s + s2, conj([sigma, sigma2, distinct])), budget) is not None:
        raise NonUniqueSupremum("least upper bound set is not a single point")
    return first.point(s)


def is_riesz(V: OVSpace, budget=None, max_dim: int = 4) -> Verdict:
    """Whether every pair of vectors has a least upper bound."""
    if V.dim > max_dim:
        raise BudgetExceeded(f"lattice checks are capped at dimension {max_dim}")
    n = V.dim
    M = V.positive
    u, v, s, w = _fresh("a", n), _fresh("b", n), _fresh("c", n), _fresh("w", n)
    eu, ev, es, ew = _var_exprs(u), _var_exprs(v), _var_exprs(s), _var_exprs(w)
    ub = lambda cand: conj(
        [
            M.at(tuple(c - x for c, x in zip(cand, eu))),
            M.at(tuple(c - x for c, x in zip(cand, ev))),
        ]
    )
    above = M.at(tuple(wi - si for wi, si in zip(ew, es)))
    matrix = conj([ub(es), disj([neg(ub(ew)), above])])
    sentence = qe.forall(u + v, qe.exists(s, qe.forall(w, matrix)))
    if qe.decide(sentence, budget):
        return Verdict(True)
    return Verdict(False, reason="some pair has no least upper bound")
