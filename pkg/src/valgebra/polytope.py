"""Convex rational polytopes via homogenization.

A bounded polytope P in R^d is the slice at x0 = 1 of the pointed cone over
its lifted vertices (1, v).  That one trick buys vertex/facet conversion,
face lattices and exact predicates from the cone machinery for free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, Optional, Sequence

from .cone import Cone, DimensionMismatch
from .linalg import (
    IVec,
    Vec,
    dot,
    exact_sqrt,
    gram_det,
    orthogonal_complement_basis,
    primitive,
    row_space_basis,
    vadd,
    vec,
    vscale,
    vsub,
    zero_vec,
)


class UnboundedError(ValueError):
    """Raised when an H-description does not bound a polytope."""


def _lift(p: Sequence) -> Vec:
    return (Fraction(1),) + vec(p)


def _drop(ray: IVec) -> Vec:
    r0 = Fraction(ray[0])
    return tuple(Fraction(x) / r0 for x in ray[1:])


_POLY_POOL: dict = {}


@dataclass(frozen=True)
class Polytope:
    """Nonempty convex polytope; `hcone` is the homogenization cone."""

    ambient: int
    hcone: Cone

    @staticmethod
    def make(ambient: int, hcone: Cone) -> "Polytope":
        key = (ambient, hcone.rays, hcone.lines)
        poly = _POLY_POOL.get(key)
        if poly is None:
            poly = Polytope(ambient, hcone)
            _POLY_POOL[key] = poly
        return poly

    @staticmethod
    def from_points(points: Iterable[Sequence]) -> "Polytope":
        pts = [vec(p) for p in points]
        if not pts:
            raise ValueError("a polytope is nonempty; got no points")
        ambient = len(pts[0])
        cone = Cone.from_generators([_lift(p) for p in pts], ambient + 1)
        return Polytope.make(ambient, cone)

    @staticmethod
    def from_halfspaces(
        inequalities: Iterable[tuple[Sequence, Fraction]], ambient: int
    ) -> Optional["Polytope"]:
        """Polytope {x : <n, x> <= c}; None if empty, error if unbounded."""
        normals = [(-Fraction(1),) + zero_vec(ambient)]  # x0 >= 0
        for n, c in inequalities:
            normals.append((-Fraction(c),) + vec(n))
        cone = Cone.from_halfspaces(normals, ambient + 1)
        if not cone.rays and not cone.lines:
            return None
        if cone.lines or any(r[0] == 0 for r in cone.rays):
            raise UnboundedError("halfspaces do not bound a polytope")
        return Polytope.make(ambient, cone)

    # -- structure ---------------------------------------------------------

    @cached_property
    def vertices(self) -> tuple[Vec, ...]:
        return tuple(sorted(_drop(r) for r in self.hcone.rays))

    @cached_property
    def dim(self) -> int:
        return self.hcone.dim - 1

    @property
    def facets(self) -> tuple[tuple[Vec, Fraction], ...]:
        """Irredundant H-description as (normal, offset): <n, x> <= c."""
        out = []
        for w in self.hcone.facet_normals:
            n, c = w[1:], -Fraction(w[0])
            if all(x == 0 for x in n):
                continue  # the lifted x0 >= 0 constraint
            out.append((vec(n), c))
        return tuple(out)

    @property
    def span_equalities(self) -> tuple[tuple[Vec, Fraction], ...]:
        out = []
        for w in self.hcone.span_normals:
            out.append((vec(w[1:]), -Fraction(w[0])))
        return tuple(out)

    def contains(self, x: Sequence) -> bool:
        return self.hcone.contains(_lift(x))

    def relint_contains(self, x: Sequence) -> bool:
        return self.hcone.relint_contains(_lift(x))

    def contains_polytope(self, other: "Polytope") -> bool:
        return all(self.contains(v) for v in other.vertices)

    def barycenter(self) -> Vec:
        n = len(self.vertices)
        p = zero_vec(self.ambient)
        for v in self.vertices:
            p = vadd(p, v)
        return vscale(Fraction(1, n), p)

    @cached_property
    def dir_basis(self) -> tuple[IVec, ...]:
        """Primitive basis of the direction space of the affine hull."""
        v0 = self.vertices[0]
        return tuple(row_space_basis([vsub(v, v0) for v in self.vertices[1:]]))

    # -- faces -------------------------------------------------------------

    @cached_property
    def faces(self) -> tuple["Polytope", ...]:
        out = []
        for f in self.hcone.faces:
            if not f.rays:
                continue  # apex of the homogenization, not a polytope face
            out.append(Polytope.make(self.ambient, f))
        return tuple(sorted(out, key=lambda p: (p.dim, p.vertices)))

    def facet_faces(self) -> tuple["Polytope", ...]:
        d = self.dim
        return tuple(f for f in self.faces if f.dim == d - 1)

    def vertex_faces(self) -> tuple["Polytope", ...]:
        return tuple(f for f in self.faces if f.dim == 0)

    # -- operations --------------------------------------------------------

    def intersect(self, other: "Polytope") -> Optional["Polytope"]:
        if self.ambient != other.ambient:
            raise DimensionMismatch("polytope ambient dimensions differ")
        cone = Cone.from_halfspaces(
            self.hcone.halfspaces + other.hcone.halfspaces, self.ambient + 1
        )
        if not cone.rays:
            return None
        return Polytope.make(self.ambient, cone)

    def intersect_halfspace(self, normal: Sequence, offset) -> Optional["Polytope"]:
        lifted = (-Fraction(offset),) + vec(normal)
        cone = self.hcone.intersect_halfspace(lifted)
        if not cone.rays:
            return None
        return Polytope.make(self.ambient, cone)

    def intersect_affine(self, equalities: Sequence[tuple[Sequence, Fraction]]) -> Optional["Polytope"]:
        cur = self
        for n, c in equalities:
            cur = cur.intersect_halfspace(n, c)
            if cur is None:
                return None
            cur = cur.intersect_halfspace(vscale(-1, vec(n)), -Fraction(c))
            if cur is None:
                return None
        return cur

    def affine_image(self, matrix: Sequence[Sequence], shift: Sequence) -> "Polytope":
        pts = [vadd(tuple(dot(row, v) for row in matrix), shift) for v in self.vertices]
        return Polytope.from_points(pts)

    def translate(self, shift: Sequence) -> "Polytope":
        return Polytope.from_points([vadd(v, shift) for v in self.vertices])

    def scale(self, factor) -> "Polytope":
        return Polytope.from_points([vscale(factor, v) for v in self.vertices])

    def embed(self, ambient: int) -> "Polytope":
        """Pad with zero coordinates up to the requested ambient dimension."""
        if ambient < self.ambient:
            raise DimensionMismatch("cannot embed into a smaller space")
        pad = zero_vec(ambient - self.ambient)
        return Polytope.from_points([v + pad for v in self.vertices])

    # -- metric ------------------------------------------------------------

    def tangent_cone(self, at: Sequence) -> Cone:
        """Cone of directions into the polytope at a point of it."""
        lifted = _lift(at)
        normals = []
        for w in self.hcone.facet_normals:
            if dot(w, lifted) == 0 and any(x != 0 for x in w[1:]):
                normals.append(w[1:])
        for w in self.hcone.span_normals:
            normals.append(w[1:])
            normals.append(tuple(-x for x in w[1:]))
        return Cone.from_halfspaces(normals, self.ambient)

    def normal_cone(self, face: "Polytope") -> Cone:
        """Germ at a relative-interior point of `face` inside span(face)^perp."""
        v = face.barycenter()
        tangent = self.tangent_cone(v)
        normals = list(tangent.halfspaces)
        for d in face.dir_basis:
            normals.append(d)
            normals.append(tuple(-x for x in d))
        return Cone.from_halfspaces(normals, self.ambient)

    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1

    def pull_triangulation(self) -> tuple[tuple[Vec, ...], ...]:
        """Simplices (vertex tuples) of the pulling triangulation at the
        lexicographically least vertex; compatible across shared faces."""
        return _pull_poly(self)

    def volume_value(self):
        """Intrinsic volume as (exact Fraction | None, float)."""
        from mpmath import mp, mpf, sqrt as msqrt

        k = self.dim
        if k == 0:
            return Fraction(1), 1.0
        exact = Fraction(0)
        rational = True
        with mp.workdps(40):
            acc = mpf(0)
            for simplex in self.pull_triangulation():
                edges = [vsub(v, simplex[0]) for v in simplex[1:]]
                q = gram_det(edges)
                root = exact_sqrt(q)
                if root is not None:
                    exact += root
                    acc += mpf(root.numerator) / mpf(root.denominator)
                else:
                    rational = False
                    acc += msqrt(mpf(q.numerator) / mpf(q.denominator))
            total = acc / factorial(k)
        if rational:
            vol = exact / factorial(k)
            return vol, float(vol)
        return None, float(total)


def _pull_poly(poly: Polytope) -> tuple[tuple[Vec, ...], ...]:
    if poly.dim == 0:
        return ((poly.vertices[0],),)
    if poly.is_simplex():
        return (poly.vertices,)
    v0 = min(poly.vertices)
    out = []
    for facet in poly.facet_faces():
        if v0 in facet.vertices:
            continue
        for piece in _pull_poly(facet):
            out.append(tuple(sorted((v0,) + piece)))
    return tuple(out)


def minkowski_sum(p: Polytope, q: Polytope) -> Polytope:
    """Exact vertex description of P + Q."""
    if p.ambient != q.ambient:
        raise DimensionMismatch("ambient dimensions differ")
    return Polytope.from_points([vadd(a, b) for a in p.vertices for b in q.vertices])


def product_polytope(p: Polytope, q: Polytope) -> Polytope:
    return Polytope.from_points([a + b for a in p.vertices for b in q.vertices])


def product_cone(c: Cone, d: Cone) -> Cone:
    zeros_d = zero_vec(d.ambient)
    zeros_c = zero_vec(c.ambient)
    gens = [g + zeros_d for g in c.generators] + [zeros_c + g for g in d.generators]
    return Cone.from_generators(gens, c.ambient + d.ambient)
