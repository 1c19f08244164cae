"""Shared oracles and sampling utilities for the test suite.

The checks here deliberately avoid the elimination engine: memberships
are evaluated pointwise with exact arithmetic, grids are explicit, and
witnesses are validated by direct substitution, so they can serve as
independent cross-checks of the decision procedures.
"""

from fractions import Fraction
import random

from ovskit.linarith import AtomF, And, Or, Not, evaluate, variables
from ovskit.spaces import xvars

GRID = tuple(Fraction(v) for v in (-2, -1, Fraction(-1, 2), 0, Fraction(1, 2), 1, 2))


def grid_assignments(names, values=GRID):
    """Full cartesian grid of assignments for the given variables."""
    names = sorted(names)
    if not names:
        return [{}]
    out = [{}]
    for n in names:
        out = [dict(a, **{n: v}) for a in out for v in values]
    return out


def random_rational(rng, span=6):
    return Fraction(rng.randint(-span, span), rng.choice((1, 1, 2, 3, 4)))


def random_point(rng, dim, span=6):
    return tuple(random_rational(rng, span) for _ in range(dim))


def formula_atoms(f):
    if isinstance(f, AtomF):
        return [f.atom]
    if isinstance(f, (And, Or)):
        out = []
        for a in f.args:
            out.extend(formula_atoms(a))
        return out
    if isinstance(f, Not):
        return formula_atoms(f.arg)
    return []


def boundary_adjacent(f, names, rng, count):
    """Assignments that satisfy some atom of ``f`` with equality.

    Picks an atom, assigns random values to all but one of its
    variables, and solves the remaining coordinate exactly.
    """
    atoms = [a for a in formula_atoms(f) if a.expr.coeffs]
    names = sorted(names)
    out = []
    if not atoms or not names:
        return out
    for _ in range(count):
        atom = rng.choice(atoms)
        pivot, coeff = rng.choice(atom.expr.coeffs)
        assignment = {n: random_rational(rng) for n in names}
        rest = atom.expr.constant
        for n, c in atom.expr.coeffs:
            if n != pivot:
                rest += c * assignment.get(n, Fraction(0))
        assignment[pivot] = -rest / coeff
        out.append(assignment)
    return out


def agree_on_points(f, g, assignments):
    return all(evaluate(f, a) == evaluate(g, a) for a in assignments)


def points_of(space_or_set, candidates):
    sset = getattr(space_or_set, "positive", space_or_set)
    return [p for p in candidates if sset.contains(p)]


def sample_members(space, rng, count, span=4):
    """Deterministically sampled members of the positive set."""
    sset = space.positive
    out = []
    tries = 0
    while len(out) < count and tries < count * 200:
        tries += 1
        p = random_point(rng, space.dim, span)
        if sset.contains(p) and p not in out:
            out.append(p)
    return out


def check_ray_memberships(space, x, y, scales=range(1, 1001)):
    """Exact membership of x - n*y for every sampled scale."""
    sset = space.positive
    return all(
        sset.contains(tuple(a - n * b for a, b in zip(x, y))) for n in scales
    )


def check_line_memberships(space, x, y, scales=range(-1000, 1001)):
    sset = space.positive
    return all(
        sset.contains(tuple(a + n * b for a, b in zip(x, y))) for n in scales
    )


def validate_archimedean_witness(space, witness):
    """A refutation witness must satisfy the hypothesis on sampled scales
    and fail the conclusion exactly."""
    x, y = witness["x"], witness["y"]
    if not space.positive.contains(x):
        return False
    if not check_ray_memberships(space, x, y):
        return False
    return not space.positive.contains(tuple(-v for v in y))


def validate_line_witness(space, witness):
    x, y = witness["x"], witness["y"]
    if not any(y):
        return False
    return check_line_memberships(space, x, y)
