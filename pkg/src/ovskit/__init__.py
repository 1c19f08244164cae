"""Exact, witness-producing decision procedures for finite-dimensional
ordered vector spaces over the rationals, and the iterated-quotient
construction that makes any such space Archimedean."""

from .errors import (
    BudgetExceeded,
    ContractViolation,
    DimensionMismatch,
    EncodingDisagreement,
    EngineInvariantError,
    InternalInvariantViolation,
    KernelConditionFailed,
    MapNotPositive,
    NonUniqueSupremum,
    NotACone,
    NotAnOrderIdeal,
    NotASubspace,
    NotAWedge,
    NotPositiveElement,
    OvskitError,
    ParseError,
    PostconditionFailed,
    TargetNotArchimedean,
    UnassignedVariable,
)
from .linarith import (
    FALSE,
    TRUE,
    AffineExpr,
    Atom,
    Formula,
    Rational,
    Rel,
    canonical_str,
    conj,
    disj,
    evaluate,
    neg,
    parse_formula,
    substitute,
    substitute_all,
    to_dnf,
)
from .qe import (
    Budget,
    PrenexFormula,
    Witness,
    decide,
    eliminate_exists,
    equivalent,
    exists,
    find_witness,
    forall,
    forall_on_line,
    forall_on_ray,
    project,
)
from .spaces import (
    LinearMap,
    OVSpace,
    QuotientPresentation,
    SemilinearSet,
    Subspace,
    Verdict,
    d_wedge,
    equivalent_sets,
    exists_sup,
    infinitesimals,
    is_almost_archimedean,
    is_almost_archimedean_element,
    is_archimedean,
    is_archimedean_element,
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
    point,
    quotient,
    space,
    subspace_from_set,
    uniform_closure,
    uniform_closure_member,
)
from .arch import (
    ArchResult,
    ArchStep,
    archimedeanize,
    factor_through,
    is_positive_map,
    order_isomorphic,
)
from .corpus import (
    Evidence,
    OracleCone,
    closed_orthant,
    falsify,
    from_semilinear,
    full_wedge,
    generated_wedge,
    halfspace_wedge,
    k1_cone,
    lex_cone,
    lex_pair_product,
    open_orthant_cone,
    poly_pos_cone_deg2,
    standard_corpus,
    zero_cone,
)

__version__ = "0.1.0"
