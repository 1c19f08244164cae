"""Decision procedures for first-order linear rational arithmetic.

Existential quantifiers are eliminated by exact Fourier-Motzkin
projection on the disjunctive normal form: equality atoms are removed by
substitution first, then the variable with the fewest occurrences is
projected by combining lower and upper bounds (strict with anything
strict stays strict).  Universal blocks go through double negation.

Truth of a prenex sentence is therefore decided exactly, and when a
sentence with a leading existential block is true, a rational witness is
recovered by back substitution: each eliminated variable is assigned the
midpoint of its tightest remaining bounds (or bound plus/minus one when
the interval is one-sided), so witnesses are deterministic.

The module also provides :func:`forall_on_ray` and
:func:`forall_on_line`, which rewrite "the whole ray/line lies in the
set" into a quantifier-free condition.  The rewrite is only valid when
the set is convex on the moved coordinates (any point of the ray in the
set plus the limiting sign of every atom along the direction pins down
the entire ray); callers are responsible for verifying convexity, which
the order-theoretic layer does by checking the wedge axioms first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import BudgetExceeded, DimensionMismatch, UnassignedVariable
from .linarith import (
    FALSE,
    TRUE,
    AffineExpr,
    And,
    Atom,
    AtomF,
    Cell,
    Formula,
    Not,
    Or,
    Rel,
    _prune_subsumed,
    atom,
    cell_formula,
    cells_formula,
    conj,
    disj,
    dnf_cells,
    evaluate,
    ge,
    gt,
    linear_combination,
    neg,
    nnf,
    simplify_cell,
    substitute_all,
    var_key,
    variables,
)

EXISTS = "exists"
FORALL = "forall"


@dataclass(frozen=True)
class Budget:
    """Resource bounds for a single decision or elimination call."""

    cell_limit: int = 100_000
    atom_limit: int = 10_000


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class PrenexFormula:
    """Quantifier blocks in front of a quantifier-free matrix."""

    blocks: tuple
    matrix: Formula

    def __post_init__(self):
        seen = set()
        for quant, names in self.blocks:
            if quant not in (EXISTS, FORALL):
                raise ValueError(f"unknown quantifier {quant!r}")
            for n in names:
                if n in seen:
                    raise ValueError(f"variable {n!r} bound twice")
                seen.add(n)

    @property
    def bound(self) -> frozenset:
        return frozenset(n for _, names in self.blocks for n in names)

    @property
    def free(self) -> frozenset:
        return variables(self.matrix) - self.bound


def _block(quant: str, names: Iterable[str], body) -> PrenexFormula:
    names = tuple(names)
    if isinstance(body, PrenexFormula):
        return PrenexFormula(((quant, names),) + body.blocks, body.matrix)
    return PrenexFormula(((quant, names),), body)


def exists(names: Iterable[str], body) -> PrenexFormula:
    return _block(EXISTS, names, body)


def forall(names: Iterable[str], body) -> PrenexFormula:
    return _block(FORALL, names, body)


class Witness:
    """A satisfying rational assignment for a leading existential block."""

    __slots__ = ("assignment",)

    def __init__(self, assignment: Mapping[str, Fraction]):
        self.assignment = dict(assignment)

    def point(self, names: Sequence[str]) -> tuple:
        return tuple(self.assignment[n] for n in names)

    def __getitem__(self, name: str) -> Fraction:
        return self.assignment[name]

    def __repr__(self):
        inner = ", ".join(f"{n}={q}" for n, q in sorted(self.assignment.items()))
        return f"Witness({inner})"


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination


def _bound_expr(a: Atom, name: str) -> AffineExpr:
    """Solve ``a.expr rel 0`` for ``name``: the bound is -(rest)/coeff."""
    coeff = a.expr.coefficient(name)
    return a.expr.drop(name).scale(Fraction(-1) / coeff)


def eliminate_from_cell(cell: Cell, names: Iterable[str], budget: Budget) -> Optional[Cell]:
    """Project the named variables out of one conjunctive cell.

    A conjunction stays a conjunction under Fourier-Motzkin, so the
    result is a single cell, or ``None`` when the cell is contradictory.
    """
    cell = simplify_cell(cell)
    if cell is None:
        return None
    remaining = sorted({n for n in names}, key=var_key)
    while remaining:
        occurrences = {n: 0 for n in remaining}
        for a in cell:
            for n, _ in a.expr.coeffs:
                if n in occurrences:
                    occurrences[n] += 1
        # Equality substitution first: cheapest and never grows the cell.
        chosen = None
        for n in remaining:
            if occurrences[n] == 0:
                continue
            for a in cell:
                if a.rel is Rel.EQ and a.expr.coefficient(n):
                    chosen = (n, a)
                    break
            if chosen:
                break
        if chosen:
            name, eq_atom = chosen
            repl = {name: _bound_expr(eq_atom, name)}
            new_atoms = []
            for a in cell:
                if a is eq_atom:
                    continue
                expr = a.expr.substitute(repl)
                if expr.is_constant():
                    if not Atom(expr, a.rel).holds({}):
                        return None
                else:
                    new_atoms.append(Atom(expr, a.rel))
            cell = simplify_cell(new_atoms)
            if cell is None:
                return None
            remaining.remove(name)
            continue
        name = min(remaining, key=lambda n: (occurrences[n], var_key(n)))
        remaining.remove(name)
        if occurrences[name] == 0:
            continue
        lowers, uppers, rest = [], [], []
        for a in cell:
            coeff = a.expr.coefficient(name)
            if not coeff:
                rest.append(a)
            elif coeff > 0:
                lowers.append((_bound_expr(a, name), a.rel is Rel.GT))
            else:
                uppers.append((_bound_expr(a, name), a.rel is Rel.GT))
        if lowers and uppers:
            if len(rest) + len(lowers) * len(uppers) > budget.atom_limit:
                raise BudgetExceeded(
                    f"elimination exceeds {budget.atom_limit} atoms"
                )
            for lo, lo_strict in lowers:
                for hi, hi_strict in uppers:
                    expr = hi - lo
                    rel = Rel.GT if (lo_strict or hi_strict) else Rel.GE
                    if expr.is_constant():
                        if not Atom(expr, rel).holds({}):
                            return None
                    else:
                        rest.append(Atom(expr, rel))
        cell = simplify_cell(rest)
        if cell is None:
            return None
    return cell


def _split_conjuncts(args: Sequence[Formula], names: set):
    """Group conjuncts by connectivity through the eliminated variables.

    Conjuncts that share no eliminated variable can be projected
    independently; conjuncts without any eliminated variable pass
    through untouched.
    """
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    tagged = []
    for a in args:
        shared = variables(a) & names
        tagged.append((a, shared))
        for n in shared:
            parent.setdefault(n, n)
        first = None
        for n in shared:
            if first is None:
                first = n
            else:
                union(first, n)
    groups: dict = {}
    passthrough = []
    for a, shared in tagged:
        if not shared:
            passthrough.append(a)
            continue
        root = find(next(iter(sorted(shared, key=var_key))))
        groups.setdefault(root, ([], set()))
        groups[root][0].append(a)
        groups[root][1].update(shared)
    ordered = sorted(groups.values(), key=lambda g: min(var_key(n) for n in g[1]))
    return ordered, passthrough


def _eliminate_core(f: Formula, names: set, budget: Budget) -> Formula:
    cells = dnf_cells(f, budget.cell_limit)
    out = []
    seen = set()
    total_atoms = 0
    for cell in cells:
        reduced = eliminate_from_cell(cell, names, budget)
        if reduced is None:
            continue
        if not reduced:
            return TRUE
        if reduced not in seen:
            seen.add(reduced)
            out.append(reduced)
            total_atoms += len(reduced)
            if total_atoms > budget.atom_limit:
                raise BudgetExceeded(f"elimination exceeds {budget.atom_limit} atoms")
    out.sort(key=lambda cell: tuple(a.sort_key() for a in cell))
    return cells_formula(_prune_subsumed(out))


def _eliminate(f: Formula, names: set, budget: Budget) -> Formula:
    names = names & variables(f)
    if not names:
        return f
    if isinstance(f, Or):
        return disj(_eliminate(a, names, budget) for a in f.args)
    if isinstance(f, And):
        groups, passthrough = _split_conjuncts(f.args, names)
        if len(groups) == 1 and not passthrough:
            return _eliminate_core(f, names, budget)
        parts = list(passthrough)
        for args, shared in groups:
            parts.append(_eliminate(conj(args), shared, budget))
        return conj(parts)
    return _eliminate_core(f, names, budget)


def eliminate_exists(matrix: Formula, names: Iterable[str], budget: Budget = None) -> Formula:
    """Quantifier-free formula equivalent to ``exists names. matrix``."""
    budget = budget or DEFAULT_BUDGET
    return _eliminate(nnf(matrix), set(names), budget)


def decide(sentence: PrenexFormula, budget: Budget = None) -> bool:
    """Exact truth value of a prenex sentence without free variables."""
    budget = budget or DEFAULT_BUDGET
    free = sentence.free
    if free:
        raise UnassignedVariable(
            "sentence has free variables: " + ", ".join(sorted(free, key=var_key))
        )
    f = sentence.matrix
    for quant, names in reversed(sentence.blocks):
        if quant == EXISTS:
            f = eliminate_exists(f, names, budget)
        else:
            f = neg(eliminate_exists(neg(f), names, budget))
    return evaluate(nnf(f), {})


def _canonical_value(cell: Cell, name: str) -> Fraction:
    """Deterministic value for a one-variable satisfiable constraint set."""
    lo = hi = None
    for a in cell:
        coeff = a.expr.coefficient(name)
        if not coeff:
            continue
        bound = -a.expr.constant / coeff
        if a.rel is Rel.EQ:
            return bound
        if coeff > 0:
            if lo is None or bound > lo:
                lo = bound
        else:
            if hi is None or bound < hi:
                hi = bound
    if lo is not None and hi is not None:
        return (lo + hi) / 2
    if lo is not None:
        return lo + 1
    if hi is not None:
        return hi - 1
    return Fraction(0)


def _solve_cell(cell: Cell, names: Sequence[str], budget: Budget) -> dict:
    assignment: dict = {}
    current: Optional[Cell] = cell
    for i, name in enumerate(names):
        rest = names[i + 1 :]
        one_var = eliminate_from_cell(current, rest, budget)
        assert one_var is not None, "cell became unsatisfiable during back substitution"
        value = _canonical_value(one_var, name)
        assignment[name] = value
        new_atoms = []
        repl = {name: AffineExpr.const(value)}
        for a in current:
            expr = a.expr.substitute(repl)
            if expr.is_constant():
                assert Atom(expr, a.rel).holds({}), "witness value violates its cell"
            else:
                new_atoms.append(Atom(expr, a.rel))
        current = simplify_cell(new_atoms)
        assert current is not None
    return assignment


def find_witness(sentence: PrenexFormula, budget: Budget = None) -> Optional[Witness]:
    """Witness for the leading existential block, or ``None`` when false.

    Inner blocks are eliminated first, so the witness satisfies the
    matrix with the inner quantifiers already decided.
    """
    budget = budget or DEFAULT_BUDGET
    if not sentence.blocks or sentence.blocks[0][0] != EXISTS:
        raise ValueError("sentence must start with an existential block")
    names = sorted(sentence.blocks[0][1], key=var_key)
    f = sentence.matrix
    for quant, inner in reversed(sentence.blocks[1:]):
        if quant == EXISTS:
            f = eliminate_exists(f, inner, budget)
        else:
            f = neg(eliminate_exists(neg(f), inner, budget))
    f = nnf(f)
    stray = variables(f) - set(names)
    if stray:
        raise UnassignedVariable(
            "sentence has free variables: " + ", ".join(sorted(stray, key=var_key))
        )
    for cell in dnf_cells(f, budget.cell_limit):
        reduced = eliminate_from_cell(cell, names, budget)
        if reduced is None:
            continue
        witness = Witness(_solve_cell(cell, names, budget))
        assert evaluate(f, witness.assignment), "witness fails its own matrix"
        return witness
    return None


def equivalent(f: Formula, g: Formula, budget: Budget = None) -> bool:
    """Decide whether two formulas agree on every rational assignment of
    the union of their free variables."""
    names = sorted(variables(f) | variables(g), key=var_key)
    both = disj([conj([f, g]), conj([neg(f), neg(g)])])
    return decide(forall(names, both), budget)


# ---------------------------------------------------------------------------
# Linear images of semilinear sets


def project(sset, lmap, budget: Budget = None):
    """Image ``{ y : exists x in sset, y = lmap(x) }`` of a semilinear set.

    ``sset`` needs ``dim`` and ``formula`` attributes (coordinates
    ``x1..xn``); ``lmap`` needs ``matrix``/``domain_dim``/``codomain_dim``.
    Returns an object of the same type as ``sset``.
    """
    n, m = lmap.domain_dim, lmap.codomain_dim
    if sset.dim != n:
        raise DimensionMismatch(f"set has dim {sset.dim}, map expects {n}")
    source = [f"u{i + 1}" for i in range(n)]
    rename = {f"x{i + 1}": AffineExpr.var(source[i]) for i in range(n)}
    parts = [substitute_all(sset.formula, rename)]
    for i in range(m):
        image = linear_combination(
            (lmap.matrix[i][j], AffineExpr.var(source[j])) for j in range(n)
        )
        parts.append(atom(AffineExpr.var(f"x{i + 1}") - image, Rel.EQ))
    result = eliminate_exists(conj(parts), source, budget)
    return type(sset)(m, result)


# ---------------------------------------------------------------------------
# Ray and line containment in convex sets


def _tail(f: Formula, p_map: Mapping[str, AffineExpr], d_map: Mapping[str, AffineExpr]) -> Formula:
    """Truth of ``f`` at points far along the ray ``p + s*d`` (s -> +inf).

    Along the ray every atom value is ``slope*s + base`` with
    ``slope = sum(coeff * d)`` and ``base`` the atom at ``p``, so its
    eventual sign is the sign of ``slope`` unless that is zero.
    """
    if f is TRUE or f is FALSE:
        return f
    if isinstance(f, AtomF):
        e = f.atom.expr
        slope = linear_combination(
            (c, d_map[n]) for n, c in e.coeffs if n in d_map
        )
        base = e.substitute(p_map)
        if f.atom.rel is Rel.EQ:
            return conj([atom(slope, Rel.EQ), atom(base, Rel.EQ)])
        limit = atom(base, f.atom.rel)
        return disj([atom(slope, Rel.GT), conj([atom(slope, Rel.EQ), limit])])
    if isinstance(f, And):
        return conj(_tail(a, p_map, d_map) for a in f.args)
    if isinstance(f, Or):
        return disj(_tail(a, p_map, d_map) for a in f.args)
    raise TypeError(f"tail substitution requires a negation-free formula: {f!r}")


def forall_on_ray(
    f: Formula,
    p_map: Mapping[str, AffineExpr],
    d_map: Mapping[str, AffineExpr],
) -> Formula:
    """Quantifier-free equivalent of "p + s*d satisfies ``f`` for all
    s >= 0", where p and d are affine in the remaining free variables.

    Sound only when the solution set of ``f`` restricted to the moved
    coordinates is convex for every value of the other free variables:
    then the parameter set is an interval, so membership of the start
    point together with eventual membership pins down the whole ray.
    """
    f = nnf(f)
    return conj([substitute_all(f, p_map), _tail(f, p_map, d_map)])


def forall_on_line(
    f: Formula,
    p_map: Mapping[str, AffineExpr],
    d_map: Mapping[str, AffineExpr],
) -> Formula:
    """Quantifier-free equivalent of "p + s*d satisfies ``f`` for all
    rational s"; same convexity requirement as :func:`forall_on_ray`."""
    f = nnf(f)
    neg_d = {n: -e for n, e in d_map.items()}
    return conj(
        [substitute_all(f, p_map), _tail(f, p_map, d_map), _tail(f, p_map, neg_d)]
    )
