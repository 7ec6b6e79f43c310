"""Reproducible random geometry for the identity suites.

All randomness flows from one 64-bit seed through a named-stream splitter:
`stream_rng(seed, suite, case)` hashes the labels with blake2b, so results
are independent of execution order and identical across runs and platforms.
"""

from __future__ import annotations

import random
from fractions import Fraction
from hashlib import blake2b
from typing import Optional

from .cellcomplex import CellComplex, build_complex, complex_from_cell, overlay
from .cone import Cone
from .element import Element, _make, from_cone, from_polytope, indicator, transfer
from .linalg import dot
from .polytope import Polytope


def stream_seed(seed: int, *labels) -> int:
    h = blake2b(digest_size=8)
    h.update(str(int(seed)).encode())
    for label in labels:
        h.update(b"/")
        h.update(str(label).encode())
    return int.from_bytes(h.digest(), "big")


def stream_rng(seed: int, *labels) -> random.Random:
    return random.Random(stream_seed(seed, *labels))


def random_vector(rng: random.Random, dim: int, span: int = 4) -> tuple:
    while True:
        v = tuple(rng.randint(-span, span) for _ in range(dim))
        if any(v):
            return v


def random_cone(rng: random.Random, dim: int, full: bool = False) -> Cone:
    """Random rational cone; `full` asks for a full-dimensional one."""
    if dim == 0:
        return Cone.origin(0)
    while True:
        k = rng.randint(1, dim + 2)
        gens = [random_vector(rng, dim) for _ in range(k)]
        cone = Cone.from_generators(gens, dim)
        if not full or cone.dim == dim:
            return cone


def random_pointed_cone(rng: random.Random, dim: int, full: bool = True) -> Cone:
    while True:
        cone = random_cone(rng, dim, full=full)
        if cone.is_pointed() and cone.rays:
            return cone


def random_polytope(rng: random.Random, dim: int, span: int = 4, full: bool = False) -> Polytope:
    while True:
        k = rng.randint(1, dim + 3)
        pts = [tuple(rng.randint(-span, span) for _ in range(dim)) for _ in range(k)]
        p = Polytope.from_points(pts)
        if not full or p.dim == dim:
            return p


def random_box(rng: random.Random, dim: int, den: int = 5) -> Polytope:
    lo = [Fraction(rng.randint(-8, 0), rng.randint(1, den)) for _ in range(dim)]
    hi = [l + Fraction(rng.randint(1, 8), rng.randint(1, den)) for l in lo]
    pts = []
    for mask in range(1 << dim):
        pts.append(tuple(hi[i] if mask >> i & 1 else lo[i] for i in range(dim)))
    return Polytope.from_points(pts)


def random_conical_element(rng: random.Random, dim: int, spread: int = 2) -> Element:
    """Random weights on the face complex of a random cone."""
    cone = random_cone(rng, dim)
    k = complex_from_cell(cone)
    wm = {}
    for i in range(len(k.cells)):
        w = rng.randint(-spread, spread)
        if w:
            wm[i] = w
    if not wm:
        wm = {0: 1}
    return _make(k, wm)


def random_polytopal_element(rng: random.Random, dim: int, max_support: Optional[int] = None, spread: int = 2) -> Element:
    """Random weights on the face complex of one or two random polytopes.

    Overlays of two carriers are only drawn in the plane, where they stay
    small; higher-dimensional random elements use one face complex.
    """
    sup = dim if max_support is None else max_support
    p = random_polytope(rng, dim)
    while p.dim > sup:
        p = random_polytope(rng, dim)
    k = complex_from_cell(p)
    if dim <= 2 and rng.random() < 0.4:
        q = random_polytope(rng, dim, span=3)
        if q.dim <= sup:
            k = overlay(k, complex_from_cell(q))
    wm = {}
    for i in range(len(k.cells)):
        w = rng.randint(-spread, spread)
        if w:
            wm[i] = w
    if not wm:
        wm = {0: 1}
    return _make(k, wm)


def random_cut_pair(rng: random.Random, dim: int):
    """(P, Q, C): a convex cone split by a hyperplane through the origin,
    with P union Q = C convex and both pieces full inside C."""
    while True:
        c = random_cone(rng, dim, full=True)
        n = random_vector(rng, dim)
        vals = [dot(n, g) for g in c.generators]
        if any(v > 0 for v in vals) and any(v < 0 for v in vals):
            p = c.intersect_halfspace(n)
            q = c.intersect_halfspace(tuple(-x for x in n))
            return p, q, c


_PYTHAGOREAN = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (20, 21, 29), (7, 24, 25)]


def random_rotation(rng: random.Random, dim: int, steps: int = 3):
    """Random rational orthogonal matrix: a product of Pythagorean Givens
    rotations (and possibly a coordinate permutation)."""
    mat = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    perm = list(range(dim))
    rng.shuffle(perm)
    mat = [[mat[i][perm[j]] for j in range(dim)] for i in range(dim)]
    for _ in range(steps):
        if dim < 2:
            break
        i, j = rng.sample(range(dim), 2)
        a, b, c = _PYTHAGOREAN[rng.randrange(len(_PYTHAGOREAN))]
        cos, sin = Fraction(a, c), Fraction(b, c)
        for row in mat:
            x, y = row[i], row[j]
            row[i], row[j] = cos * x - sin * y, sin * x + cos * y
    return [tuple(r) for r in mat]


def random_frame(rng: random.Random, dim: int, k: int):
    """Orthonormal rational frame of length k in R^dim."""
    rot = random_rotation(rng, dim)
    return [tuple(rot[r][i] for r in range(dim)) for i in range(k)]


def random_isometry(rng: random.Random, dim: int):
    """Random affine isometry with rational matrix (rotation + translation)."""
    rot = random_rotation(rng, dim)
    shift = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(dim))
    return rot, shift
