"""Small exact linear algebra helpers over the rationals.

Vectors are tuples of ``Fraction``; matrices are tuples of row vectors.
Everything here is deterministic: reduced row echelon form always picks
the lowest-index pivot, so derived bases (null spaces, annihilators,
complements) are canonical.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

_ZERO = Fraction(0)
_ONE = Fraction(1)


def vec(values: Iterable) -> tuple:
    return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)


def mat(rows: Iterable[Iterable]) -> tuple:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> tuple:
    return (_ZERO,) * n


def unit(n: int, i: int) -> tuple:
    return tuple(_ONE if j == i else _ZERO for j in range(n))


def identity(n: int) -> tuple:
    return tuple(unit(n, i) for i in range(n))


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(u: Sequence, q) -> tuple:
    q = q if isinstance(q, Fraction) else Fraction(q)
    return tuple(a * q for a in u)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), _ZERO)


def mat_vec(m: Sequence, v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence, b: Sequence) -> tuple:
    cols = len(b[0]) if b else 0
    bt = tuple(tuple(row[j] for row in b) for j in range(cols))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Sequence, width: int = None) -> tuple:
    if not m:
        return tuple(() for _ in range(width or 0))
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def rref(m: Sequence) -> tuple:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [list(r) for r in m]
    if not rows:
        return (), ()
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        factor = rows[r][c]
        rows[r] = [x / factor for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    reduced = tuple(tuple(row) for row in rows[:r])
    return reduced, tuple(pivots)


def rank(m: Sequence) -> int:
    return len(rref(m)[0])


def nullspace(m: Sequence, ncols: int) -> tuple:
    """Canonical basis of ``{x : m x = 0}`` in dimension ``ncols``."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [_ZERO] * ncols
        v[f] = _ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return tuple(basis)


def independent(vectors: Sequence, dim: int) -> bool:
    if not vectors:
        return True
    if any(len(v) != dim for v in vectors):
        return False
    return rank(vectors) == len(vectors)


def annihilator(vectors: Sequence, dim: int) -> tuple:
    """Basis of the functionals vanishing on every given vector."""
    if not vectors:
        return identity(dim)
    return nullspace(vectors, dim)


def in_span(vectors: Sequence, v: Sequence) -> bool:
    if not vectors:
        return not any(v)
    return rank(vectors) == rank(tuple(vectors) + (tuple(v),))


def det(m: Sequence) -> Fraction:
    rows = [list(r) for r in m]
    n = len(rows)
    result = _ONE
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            return _ZERO
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            result = -result
        result *= rows[c][c]
        inv = _ONE / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result


def inverse(m: Sequence) -> tuple:
    """Inverse of a square matrix; raises ``ZeroDivisionError`` if singular."""
    n = len(m)
    aug = [list(row) + list(unit(n, i)) for i, row in enumerate(m)]
    reduced, pivots = rref(aug)
    if tuple(pivots) != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in reduced)
