"""Exact rational linear algebra over `fractions.Fraction`.

Everything downstream (cones, polytopes, refinements, invariant identities)
relies on exact set equality, so all predicates here are rational and
deterministic.  Vectors are tuples; matrices are tuples of row tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Vec = tuple[Fraction, ...]
IVec = tuple[int, ...]


def vec(xs: Iterable) -> Vec:
    return tuple(Fraction(x) for x in xs)


def dot(a: Sequence, b: Sequence):
    # entries are ints or Fractions already; avoid re-wrapping in the hot path
    total = 0
    for x, y in zip(a, b):
        total += x * y
    return total


def vadd(a: Sequence, b: Sequence) -> Vec:
    return tuple(Fraction(x) + Fraction(y) for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> Vec:
    return tuple(Fraction(x) - Fraction(y) for x, y in zip(a, b))


def vscale(c, a: Sequence) -> Vec:
    c = Fraction(c)
    return tuple(c * Fraction(x) for x in a)


def is_zero_vec(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def unit_vec(i: int, n: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def primitive(a: Sequence) -> IVec:
    """Scale by a positive rational so entries are coprime integers.

    Preserves direction, which is what matters for rays and normals.
    """
    if all(type(x) is int for x in a):
        g = gcd(*a) if any(a) else 1
        if g <= 1:
            return tuple(a)
        return tuple(x // g for x in a)
    fr = [Fraction(x) for x in a]
    denom = lcm(*[f.denominator for f in fr]) if fr else 1
    ints = [int(f * denom) for f in fr]
    g = gcd(*ints) if any(ints) else 1
    if g == 0:
        g = 1
    return tuple(x // g for x in ints)


def primitive_signed(a: Sequence) -> IVec:
    """Primitive vector with the first nonzero entry positive (line reps)."""
    p = primitive(a)
    for x in p:
        if x < 0:
            return tuple(-y for y in p)
        if x > 0:
            break
    return p


def rref(rows: Sequence[Sequence]) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def _is_int_rows(rows: Sequence[Sequence]) -> bool:
    return all(all(type(x) is int for x in r) for r in rows)


def _echelon_int(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free integer Gauss-Jordan; returns (reduced rows, pivot cols).

    Rows are gcd-reduced after each elimination step to keep entries small.
    In the output, each pivot column has a single nonzero entry.
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                row = [pv * x - f * y for x, y in zip(mat[i], mat[r])]
                g = gcd(*row) if any(row) else 1
                mat[i] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    reduced = [row for row in mat[:r]]
    return reduced, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if _is_int_rows(rows):
        return len(_echelon_int(rows)[0])
    return len(rref(rows)[0])


def kernel_basis(rows: Sequence[Sequence], ncols: int) -> list[IVec]:
    """Primitive integer basis of {x : A x = 0}."""
    if _is_int_rows(rows):
        red, pivots = _echelon_int(rows)
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * ncols
            v[fc] = Fraction(1)
            for i, pc in enumerate(pivots):
                v[pc] = Fraction(-red[i][fc], red[i][pc])
            basis.append(primitive_signed(v))
        return basis
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(primitive_signed(v))
    return basis


def row_space_basis(rows: Sequence[Sequence]) -> list[IVec]:
    if _is_int_rows(rows):
        red, _ = _echelon_int(rows)
        return [primitive_signed(r) for r in red]
    red, _ = rref(rows)
    return [primitive_signed(r) for r in red]


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[Vec]:
    """One exact solution of A x = b, or None if inconsistent."""
    if not rows:
        return None if any(Fraction(b) != 0 for b in rhs) else ()
    ncols = len(rows[0])
    aug = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    for row in red:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = red[i][-1]
    return tuple(x)


def det(rows: Sequence[Sequence]) -> Fraction:
    mat = [list(map(Fraction, r)) for r in rows]
    n = len(mat)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            sign = -sign
        pv = mat[c][c]
        out *= pv
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c] / pv
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[c])]
    return out * sign


def gram_matrix(vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[dot(u, v) for v in vectors] for u in vectors]


def gram_det(vectors: Sequence[Sequence]) -> Fraction:
    return det(gram_matrix(vectors))


def orthogonal_complement_basis(
    dirs: Sequence[Sequence], ambient: int, within: Optional[Sequence[Sequence]] = None
) -> list[IVec]:
    """Basis of the orthogonal complement of span(dirs), optionally inside
    the subspace spanned by `within`."""
    if within is None:
        return kernel_basis(list(dirs), ambient)
    coeffs = [[dot(d, w) for w in within] for d in dirs]
    ker = kernel_basis(coeffs, len(within))
    out = []
    for y in ker:
        v = zero_vec(ambient)
        for yi, w in zip(y, within):
            v = vadd(v, vscale(yi, w))
        out.append(primitive_signed(v))
    return out


def exact_sqrt(q: Fraction) -> Optional[Fraction]:
    """Square root of a nonnegative rational if it is rational, else None."""
    if q < 0:
        raise ValueError("negative radicand")
    from math import isqrt

    a, b = q.numerator, q.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None
