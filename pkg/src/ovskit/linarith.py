"""Exact linear rational arithmetic: affine expressions, sign atoms, and
quantifier-free formulas.

Every scalar is a ``fractions.Fraction``; there is no floating point
anywhere, so evaluation, substitution, and normal forms are exact.  Atoms
compare an affine expression against zero with one of ``>``, ``>=``,
``=``; disequality is not primitive and is encoded as a disjunction of
two strict atoms.  Formulas are immutable trees, safe to share across
threads, and all operations on them are pure functions.

The textual syntax accepted by :func:`parse_formula` is the same one the
command-line DSL uses, and :func:`canonical_str` prints any formula in a
byte-deterministic disjunctive normal form (atoms sorted by variable
order then relation, cells sorted lexicographically) that reparses to an
equivalent formula.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import BudgetExceeded, ParseError, UnassignedVariable

Rational = Fraction

#: Default bound on the number of conjunctive cells a DNF may have.
DEFAULT_CELL_LIMIT = 100_000

_ZERO = Fraction(0)
_ONE = Fraction(1)

_VAR_SPLIT = re.compile(r"^(.*?)(\d*)$")


def rational(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce ints, fractions, and strings like ``-3/4`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational scalar")


def format_rational(q: Fraction) -> str:
    return str(q)


def var_key(name: str):
    """Sort key that orders a trailing integer index numerically.

    ``x2`` sorts before ``x10``; names without an index sort by string.
    """
    m = _VAR_SPLIT.match(name)
    prefix, digits = m.group(1), m.group(2)
    return (prefix, int(digits) if digits else -1)


class AffineExpr:
    """Sparse affine form: a rational-coefficient sum of variables plus a
    constant.  Zero coefficients are never stored and terms are kept
    sorted, so structurally equal forms compare equal."""

    __slots__ = ("coeffs", "constant", "_hash")

    def __init__(self, coeffs=(), constant=0):
        acc: dict = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for name, c in items:
            q = c if isinstance(c, Fraction) else Fraction(c)
            if name in acc:
                q = acc[name] + q
            if q:
                acc[name] = q
            elif name in acc:
                del acc[name]
        self.coeffs = tuple(sorted(acc.items(), key=lambda kv: var_key(kv[0])))
        self.constant = constant if isinstance(constant, Fraction) else Fraction(constant)
        self._hash = None

    @classmethod
    def var(cls, name: str) -> "AffineExpr":
        return cls(((name, _ONE),))

    @classmethod
    def const(cls, value) -> "AffineExpr":
        return cls((), value)

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs

    def coefficient(self, name: str) -> Fraction:
        for n, c in self.coeffs:
            if n == name:
                return c
        return _ZERO

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        total = self.constant
        for n, c in self.coeffs:
            if n not in assignment:
                raise UnassignedVariable(f"variable {n!r} has no value")
            total += c * assignment[n]
        return total

    def substitute(self, mapping: Mapping[str, "AffineExpr"]) -> "AffineExpr":
        """Simultaneously replace variables by affine expressions."""
        if not any(n in mapping for n, _ in self.coeffs):
            return self
        terms = []
        constant = self.constant
        for n, c in self.coeffs:
            repl = mapping.get(n)
            if repl is None:
                terms.append((n, c))
            else:
                for m, d in repl.coeffs:
                    terms.append((m, c * d))
                constant += c * repl.constant
        return AffineExpr(terms, constant)

    def __add__(self, other: "AffineExpr") -> "AffineExpr":
        return AffineExpr(self.coeffs + other.coeffs, self.constant + other.constant)

    def __sub__(self, other: "AffineExpr") -> "AffineExpr":
        return self + (-other)

    def __neg__(self) -> "AffineExpr":
        return self.scale(-1)

    def scale(self, factor) -> "AffineExpr":
        q = factor if isinstance(factor, Fraction) else Fraction(factor)
        if q == 1:
            return self
        return AffineExpr(tuple((n, c * q) for n, c in self.coeffs), self.constant * q)

    def shift(self, delta) -> "AffineExpr":
        return AffineExpr(self.coeffs, self.constant + delta)

    def drop(self, name: str) -> "AffineExpr":
        """The same form with ``name``'s term removed."""
        return AffineExpr(tuple((n, c) for n, c in self.coeffs if n != name), self.constant)

    def __eq__(self, other):
        return (
            isinstance(other, AffineExpr)
            and self.coeffs == other.coeffs
            and self.constant == other.constant
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.coeffs, self.constant))
        return self._hash

    def __repr__(self):
        return f"AffineExpr({format_affine(self)!r})"


def linear_combination(pairs: Iterable[tuple]) -> AffineExpr:
    """Exact sum of ``coeff * expr`` contributions."""
    terms = []
    constant = _ZERO
    for coeff, expr in pairs:
        q = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
        if not q:
            continue
        for n, c in expr.coeffs:
            terms.append((n, q * c))
        constant += q * expr.constant
    return AffineExpr(terms, constant)


def format_affine(expr: AffineExpr) -> str:
    parts = []
    for n, c in expr.coeffs:
        if not parts:
            if c == 1:
                parts.append(n)
            elif c == -1:
                parts.append(f"-{n}")
            else:
                parts.append(f"{c}*{n}")
        else:
            sign = " + " if c > 0 else " - "
            a = abs(c)
            parts.append(sign + (n if a == 1 else f"{a}*{n}"))
    c = expr.constant
    if not parts:
        return str(c)
    if c:
        parts.append((" + " if c > 0 else " - ") + str(abs(c)))
    return "".join(parts)


class Rel(enum.Enum):
    """Comparison of an affine expression against zero."""

    GT = ">"
    GE = ">="
    EQ = "="


_REL_ORDER = {Rel.GT: 0, Rel.GE: 1, Rel.EQ: 2}


class Atom:
    """A single constraint ``expr rel 0``."""

    __slots__ = ("expr", "rel", "_hash")

    def __init__(self, expr: AffineExpr, rel: Rel):
        self.expr = expr
        self.rel = rel
        self._hash = None

    def holds(self, assignment: Mapping[str, Fraction]) -> bool:
        value = self.expr.evaluate(assignment)
        if self.rel is Rel.GT:
            return value > 0
        if self.rel is Rel.GE:
            return value >= 0
        return value == 0

    def normalized(self) -> "Atom":
        """Scale to primitive integer coefficients.

        The scaling factor is positive, so the relation is preserved; an
        equality additionally gets a canonical sign (leading coefficient
        positive), which makes proportional atoms structurally equal.
        """
        expr = self.expr
        values = [c for _, c in expr.coeffs]
        values.append(expr.constant)
        den = 1
        for v in values:
            den = den * v.denominator // gcd(den, v.denominator)
        num = 0
        for v in values:
            num = gcd(num, abs(v.numerator * (den // v.denominator)))
        factor = Fraction(den, num) if num else _ONE
        if self.rel is Rel.EQ:
            lead = expr.coeffs[0][1] if expr.coeffs else expr.constant
            if lead < 0:
                factor = -factor
        if factor != 1:
            expr = expr.scale(factor)
        if expr is self.expr:
            return self
        return Atom(expr, self.rel)

    def sort_key(self):
        a = self.normalized()
        return (
            tuple((var_key(n), c) for n, c in a.expr.coeffs),
            _REL_ORDER[a.rel],
            a.expr.constant,
        )

    def __eq__(self, other):
        return isinstance(other, Atom) and self.rel is other.rel and self.expr == other.expr

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.expr, self.rel))
        return self._hash

    def __str__(self):
        return f"{format_affine(self.expr)} {self.rel.value} 0"

    def __repr__(self):
        return f"Atom({self})"


# ---------------------------------------------------------------------------
# Formula trees


class Formula:
    """Base class of the immutable quantifier-free formula nodes."""

    __slots__ = ()


@dataclass(frozen=True, repr=False)
class TrueF(Formula):
    __slots__ = ()

    def __repr__(self):
        return "TRUE"


@dataclass(frozen=True, repr=False)
class FalseF(Formula):
    __slots__ = ()

    def __repr__(self):
        return "FALSE"


TRUE = TrueF()
FALSE = FalseF()


@dataclass(frozen=True, repr=False)
class AtomF(Formula):
    atom: Atom

    def __repr__(self):
        return f"AtomF({self.atom})"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    arg: Formula

    def __repr__(self):
        return f"Not({self.arg!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    args: tuple

    def __repr__(self):
        return f"And{self.args!r}"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    args: tuple

    def __repr__(self):
        return f"Or{self.args!r}"


def atom(expr: AffineExpr, rel: Rel) -> Formula:
    """Atom constructor that folds variable-free constraints."""
    if expr.is_constant():
        return TRUE if Atom(expr, rel).holds({}) else FALSE
    return AtomF(Atom(expr, rel))


def gt(expr: AffineExpr) -> Formula:
    return atom(expr, Rel.GT)


def ge(expr: AffineExpr) -> Formula:
    return atom(expr, Rel.GE)


def eq(expr: AffineExpr) -> Formula:
    return atom(expr, Rel.EQ)


def nonzero(expr: AffineExpr) -> Formula:
    """Disequality, encoded as ``expr > 0 or -expr > 0``."""
    return disj([gt(expr), gt(-expr)])


def conj(args: Iterable[Formula]) -> Formula:
    out = []
    seen = set()
    for a in args:
        if a is TRUE:
            continue
        if a is FALSE:
            return FALSE
        if isinstance(a, And):
            for b in a.args:
                if b not in seen:
                    seen.add(b)
                    out.append(b)
        elif a not in seen:
            seen.add(a)
            out.append(a)
    if not out:
        return TRUE
    if len(out) == 1:
        return out[0]
    return And(tuple(out))


def disj(args: Iterable[Formula]) -> Formula:
    out = []
    seen = set()
    for a in args:
        if a is FALSE:
            continue
        if a is TRUE:
            return TRUE
        if isinstance(a, Or):
            for b in a.args:
                if b not in seen:
                    seen.add(b)
                    out.append(b)
        elif a not in seen:
            seen.add(a)
            out.append(a)
    if not out:
        return FALSE
    if len(out) == 1:
        return out[0]
    return Or(tuple(out))


def neg(f: Formula) -> Formula:
    if f is TRUE:
        return FALSE
    if f is FALSE:
        return TRUE
    if isinstance(f, Not):
        return f.arg
    return Not(f)


def variables(f: Formula) -> frozenset:
    if isinstance(f, AtomF):
        return frozenset(f.atom.expr.names)
    if isinstance(f, (And, Or)):
        out: frozenset = frozenset()
        for a in f.args:
            out |= variables(a)
        return out
    if isinstance(f, Not):
        return variables(f.arg)
    return frozenset()


def evaluate(f: Formula, assignment: Mapping[str, Fraction]) -> bool:
    """Exact truth value of ``f`` under a total assignment of its free
    variables.  Raises :class:`UnassignedVariable` on a missing value."""
    if f is TRUE:
        return True
    if f is FALSE:
        return False
    if isinstance(f, AtomF):
        return f.atom.holds(assignment)
    if isinstance(f, Not):
        return not evaluate(f.arg, assignment)
    if isinstance(f, And):
        return all(evaluate(a, assignment) for a in f.args)
    if isinstance(f, Or):
        return any(evaluate(a, assignment) for a in f.args)
    raise TypeError(f"not a formula: {f!r}")


def substitute_all(f: Formula, mapping: Mapping[str, AffineExpr]) -> Formula:
    """Simultaneous substitution of variables by affine expressions.

    Atoms whose expression becomes constant fold to TRUE/FALSE.
    """
    if f is TRUE or f is FALSE:
        return f
    if isinstance(f, AtomF):
        return atom(f.atom.expr.substitute(mapping), f.atom.rel)
    if isinstance(f, Not):
        return neg(substitute_all(f.arg, mapping))
    if isinstance(f, And):
        return conj(substitute_all(a, mapping) for a in f.args)
    if isinstance(f, Or):
        return disj(substitute_all(a, mapping) for a in f.args)
    raise TypeError(f"not a formula: {f!r}")


def substitute(f: Formula, name: str, expr: AffineExpr) -> Formula:
    """Replace every occurrence of one variable by an affine expression."""
    return substitute_all(f, {name: expr})


def negate_atom(a: Atom) -> Formula:
    if a.rel is Rel.GT:
        return ge(-a.expr)
    if a.rel is Rel.GE:
        return gt(-a.expr)
    return nonzero(a.expr)


def nnf(f: Formula) -> Formula:
    """Negation normal form; ``Not`` nodes are eliminated entirely by
    flipping atom relations."""
    if f is TRUE or f is FALSE or isinstance(f, AtomF):
        return f
    if isinstance(f, And):
        return conj(nnf(a) for a in f.args)
    if isinstance(f, Or):
        return disj(nnf(a) for a in f.args)
    g = f.arg
    if g is TRUE:
        return FALSE
    if g is FALSE:
        return TRUE
    if isinstance(g, AtomF):
        return negate_atom(g.atom)
    if isinstance(g, Not):
        return nnf(g.arg)
    if isinstance(g, And):
        return disj(nnf(neg(a)) for a in g.args)
    if isinstance(g, Or):
        return conj(nnf(neg(a)) for a in g.args)
    raise TypeError(f"not a formula: {g!r}")


# ---------------------------------------------------------------------------
# Conjunctive cells and disjunctive normal form

#: A cell is a tuple of atoms understood as their conjunction.
Cell = tuple


def _direction(expr: AffineExpr):
    """Split a normalized linear part into (canonical direction, sign).

    The canonical direction has a positive leading coefficient; sign is
    +1 when the expression's linear part equals the direction and -1
    when it is its negation.
    """
    lead = expr.coeffs[0][1]
    if lead > 0:
        return expr.coeffs, 1
    return tuple((n, -c) for n, c in expr.coeffs), -1


def simplify_cell(atoms: Iterable[Atom]) -> Optional[Cell]:
    """Normalize a conjunction of atoms, tightening proportional bounds.

    Returns ``None`` when the cell is contradictory.  For every group of
    atoms whose linear parts are proportional this keeps at most one
    lower bound, one upper bound, or one equality; a weak lower bound
    meeting a weak upper bound collapses to an equality.
    """
    groups: dict = {}
    for a in atoms:
        a = a.normalized()
        expr = a.expr
        if not expr.coeffs:
            if not a.holds({}):
                return None
            continue
        direction, sign = _direction(expr)
        slot = groups.get(direction)
        if slot is None:
            slot = groups[direction] = {"eq": None, "lo": None, "hi": None}
        # The atom reads  direction . x  (rel)  value  after reorienting.
        value = -expr.constant if sign > 0 else expr.constant
        if a.rel is Rel.EQ:
            if slot["eq"] is not None and slot["eq"] != value:
                return None
            slot["eq"] = value
        elif sign > 0:
            strict = a.rel is Rel.GT
            lo = slot["lo"]
            if lo is None or value > lo[0] or (value == lo[0] and strict):
                slot["lo"] = (value, strict)
        else:
            strict = a.rel is Rel.GT
            hi = slot["hi"]
            if hi is None or value < hi[0] or (value == hi[0] and strict):
                slot["hi"] = (value, strict)
    out = []
    for direction, slot in groups.items():
        eq_value, lo, hi = slot["eq"], slot["lo"], slot["hi"]
        if eq_value is not None:
            if lo and (eq_value < lo[0] or (eq_value == lo[0] and lo[1])):
                return None
            if hi and (eq_value > hi[0] or (eq_value == hi[0] and hi[1])):
                return None
            out.append(Atom(AffineExpr(direction, -eq_value), Rel.EQ).normalized())
            continue
        if lo and hi:
            if lo[0] > hi[0]:
                return None
            if lo[0] == hi[0]:
                if lo[1] or hi[1]:
                    return None
                out.append(Atom(AffineExpr(direction, -lo[0]), Rel.EQ).normalized())
                continue
        if lo:
            out.append(Atom(AffineExpr(direction, -lo[0]), Rel.GT if lo[1] else Rel.GE))
        if hi:
            neg_direction = tuple((n, -c) for n, c in direction)
            out.append(Atom(AffineExpr(neg_direction, hi[0]), Rel.GT if hi[1] else Rel.GE))
    out.sort(key=Atom.sort_key)
    return tuple(out)


def dnf_cells(f: Formula, cell_limit: int = DEFAULT_CELL_LIMIT) -> list:
    """All satisfiable-after-simplification conjunctive cells of ``f``.

    Cells are simplified, deduplicated, and sorted; contradictory cells
    are dropped.  Raises :class:`BudgetExceeded` past ``cell_limit``.
    """

    def rec(g: Formula) -> list:
        if g is TRUE:
            return [()]
        if g is FALSE:
            return []
        if isinstance(g, AtomF):
            return [(g.atom,)]
        if isinstance(g, Or):
            cells = []
            for a in g.args:
                cells.extend(rec(a))
                if len(cells) > cell_limit:
                    raise BudgetExceeded(f"DNF exceeds {cell_limit} cells")
            return cells
        if isinstance(g, And):
            cells = [()]
            for a in g.args:
                branch = rec(a)
                merged = []
                for left in cells:
                    for right in branch:
                        cell = simplify_cell(left + right)
                        if cell is not None:
                            merged.append(cell)
                    if len(merged) > cell_limit:
                        raise BudgetExceeded(f"DNF exceeds {cell_limit} cells")
                cells = merged
                if not cells:
                    return []
            return cells
        raise TypeError(f"not a normalized formula: {g!r}")

    raw = rec(nnf(f))
    out = []
    seen = set()
    for cell in raw:
        cell = simplify_cell(cell)
        if cell is None:
            continue
        if cell not in seen:
            seen.add(cell)
            out.append(cell)
    out.sort(key=lambda cell: tuple(a.sort_key() for a in cell))
    return out


def _atom_union(a: Atom, b: Atom):
    """Single atom equivalent to ``a or b`` when one exists.

    Returns the merged atom, ``True`` when the union is the whole
    space, or ``None`` when no single atom covers the union.
    """
    a, b = a.normalized(), b.normalized()
    if a.expr == b.expr:
        # Any two distinct relations on the same side union to >=.
        return a if a.rel is b.rel else Atom(a.expr, Rel.GE)
    if a.expr == (-b.expr):
        if a.rel is Rel.EQ:
            a, b = b, a
        if b.rel is Rel.EQ:
            # An inequality joined with equality of its negation closes it.
            return Atom(a.expr, Rel.GE) if a.rel is Rel.GT else a
        if a.rel is Rel.GT and b.rel is Rel.GT:
            return None
        return True
    return None


def _merge_once(cells: list):
    keyed = [frozenset(cell) for cell in cells]
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            common = keyed[i] & keyed[j]
            extra_i = keyed[i] - common
            extra_j = keyed[j] - common
            if len(extra_i) != 1 or len(extra_j) != 1:
                continue
            union = _atom_union(next(iter(extra_i)), next(iter(extra_j)))
            if union is None:
                continue
            base = tuple(a for a in cells[i] if a in common)
            merged = base if union is True else base + (union,)
            merged = simplify_cell(merged)
            if merged is None:
                continue
            rest = [c for k, c in enumerate(cells) if k not in (i, j)]
            rest.append(merged)
            return rest
    return None


def _prune_subsumed(cells: list) -> list:
    """Compress a cell list: drop cells whose atom set strictly contains
    another's, and merge pairs differing in a single mergeable atom."""
    if len(cells) > 256:
        return cells
    while True:
        keyed = [(frozenset(cell), cell) for cell in cells]
        out = []
        for i, (ki, cell) in enumerate(keyed):
            subsumed = any(
                j != i and kj <= ki and (kj < ki or j < i)
                for j, (kj, _) in enumerate(keyed)
            )
            if not subsumed:
                out.append(cell)
        merged = _merge_once(out)
        if merged is None:
            out.sort(key=lambda cell: tuple(a.sort_key() for a in cell))
            return out
        cells = merged


def cell_formula(cell: Cell) -> Formula:
    return conj(AtomF(a) for a in cell)


def cells_formula(cells: Iterable[Cell]) -> Formula:
    return disj(cell_formula(c) for c in cells)


def to_dnf(f: Formula, cell_limit: int = DEFAULT_CELL_LIMIT) -> Formula:
    """Logically equivalent disjunction of conjunctions of atoms."""
    return cells_formula(_prune_subsumed(dnf_cells(f, cell_limit)))


def atom_count(f: Formula) -> int:
    if isinstance(f, AtomF):
        return 1
    if isinstance(f, (And, Or)):
        return sum(atom_count(a) for a in f.args)
    if isinstance(f, Not):
        return atom_count(f.arg)
    return 0


def canonical_str(f: Formula, cell_limit: int = DEFAULT_CELL_LIMIT) -> str:
    """Byte-deterministic rendering of the canonical DNF of ``f``."""
    cells = _prune_subsumed(dnf_cells(f, cell_limit))
    if not cells:
        return "false"
    if cells == [()]:
        return "true"
    if len(cells) == 1:
        return " and ".join(str(a) for a in cells[0])
    parts = []
    for cell in cells:
        body = " and ".join(str(a) for a in cell)
        parts.append(f"({body})" if len(cell) > 1 else body)
    return " or ".join(parts)


# ---------------------------------------------------------------------------
# Formula text syntax (shared with the command-line DSL)


_TOKEN_RE = re.compile(
    r"(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>>=|<=|>|<|=|\+|-|\*|\(|\)|,|\[|\])"
)

_KEYWORDS = {"and", "or", "not", "true", "false"}


@dataclass(frozen=True)
class Token:
    kind: str  # "num" | "name" | "op" | "end"
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column: int = 1) -> list:
    """Token stream with positions; raises :class:`ParseError` on junk."""
    tokens = []
    pos = 0
    cur_line, cur_col = line, column
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            cur_line += 1
            cur_col = 1
            pos += 1
            continue
        if ch.isspace():
            pos += 1
            cur_col += 1
            continue
        if ch == "#":
            nl = text.find("\n", pos)
            if nl < 0:
                break
            pos = nl
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {ch!r}", cur_line, cur_col)
        kind = m.lastgroup
        value = m.group(kind)
        tokens.append(Token(kind, value, cur_line, cur_col))
        cur_col += len(value)
        pos = m.end()
    tokens.append(Token("end", "", cur_line, cur_col))
    return tokens


class _Parser:
    def __init__(self, tokens: Sequence[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def expect_op(self, text: str) -> Token:
        tok = self.next()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.column)
        return tok

    def error(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.column)

    # formula := or_expr
    def formula(self) -> Formula:
        return self.or_expr()

    def or_expr(self) -> Formula:
        parts = [self.and_expr()]
        while self.peek().kind == "name" and self.peek().text == "or":
            self.next()
            parts.append(self.and_expr())
        return disj(parts)

    def and_expr(self) -> Formula:
        parts = [self.not_expr()]
        while self.peek().kind == "name" and self.peek().text == "and":
            self.next()
            parts.append(self.not_expr())
        return conj(parts)

    def not_expr(self) -> Formula:
        if self.peek().kind == "name" and self.peek().text == "not":
            self.next()
            return neg(self.not_expr())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "name" and tok.text == "true":
            self.next()
            return TRUE
        if tok.kind == "name" and tok.text == "false":
            self.next()
            return FALSE
        if tok.kind == "op" and tok.text == "(":
            # Either a parenthesized formula or the left side of an atom;
            # backtrack if the parenthesis closes into a comparison.
            save = self.pos
            self.next()
            try:
                inner = self.formula()
                self.expect_op(")")
            except ParseError:
                self.pos = save
                return self.atom()
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text in (">", ">=", "<", "<=", "="):
                self.pos = save
                return self.atom()
            return inner
        return self.atom()

    def atom(self) -> Formula:
        left = self.affine()
        tok = self.next()
        if tok.kind != "op" or tok.text not in (">", ">=", "<", "<=", "="):
            raise ParseError(f"expected a comparison, found {tok.text!r}", tok.line, tok.column)
        right = self.affine()
        if tok.text == ">":
            return gt(left - right)
        if tok.text == ">=":
            return ge(left - right)
        if tok.text == "<":
            return gt(right - left)
        if tok.text == "<=":
            return ge(right - left)
        return eq(left - right)

    def affine(self) -> AffineExpr:
        expr = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in ("+", "-"):
                self.next()
                rhs = self.term()
                expr = expr + rhs if tok.text == "+" else expr - rhs
            else:
                return expr

    def term(self) -> AffineExpr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.next()
            return -self.term()
        if tok.kind == "op" and tok.text == "+":
            self.next()
            return self.term()
        if tok.kind == "op" and tok.text == "(":
            self.next()
            inner = self.affine()
            self.expect_op(")")
            return inner
        if tok.kind == "num":
            self.next()
            q = Fraction(tok.text)
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "*":
                self.next()
                name_tok = self.next()
                if name_tok.kind != "name" or name_tok.text in _KEYWORDS:
                    raise ParseError("expected a variable after '*'", name_tok.line, name_tok.column)
                return AffineExpr(((name_tok.text, q),))
            return AffineExpr.const(q)
        if tok.kind == "name" and tok.text not in _KEYWORDS:
            self.next()
            return AffineExpr.var(tok.text)
        raise ParseError(f"expected a term, found {tok.text!r}", tok.line, tok.column)


def parse_formula(text: str, line: int = 1, column: int = 1) -> Formula:
    """Parse the shared textual formula syntax.

    Atoms are affine comparisons (``2*x1 - x2 + 1/2 >= 0``); connectives
    are ``and``, ``or``, ``not`` with the usual precedence, plus
    parentheses and the literals ``true``/``false``.
    """
    parser = _Parser(tokenize(text, line, column))
    f = parser.formula()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected trailing input {tok.text!r}", tok.line, tok.column)
    return f
