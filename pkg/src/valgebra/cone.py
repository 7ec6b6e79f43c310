"""Convex rational cones with exact double-description conversion.

A cone is stored in a canonical form that makes set equality a tuple
comparison: extreme rays of the pointed part as sorted primitive integer
vectors, plus a sign-normalized reduced basis of the lineality space.
Conversion between generator and halfspace descriptions goes through one
exact enumeration primitive (`_dd`), so ``dual(dual(C)) == C`` holds on the
nose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

from .linalg import (
    IVec,
    Vec,
    dot,
    is_zero_vec,
    kernel_basis,
    orthogonal_complement_basis,
    primitive,
    primitive_signed,
    rank,
    row_space_basis,
    vadd,
    vec,
    vscale,
    zero_vec,
)


@lru_cache(maxsize=None)
def _dd(normals: tuple[IVec, ...], dim: int) -> tuple[tuple[IVec, ...], tuple[IVec, ...]]:
    """Extreme rays and lineality basis of {x : <n, x> <= 0 for n in normals}.

    The lineality space is ker(normals).  The pointed part is enumerated in
    coordinates on the row space: a ray is the kernel of some corank-one
    subset of the constraints, kept if it satisfies all of them.
    """
    normals = tuple(sorted({primitive(n) for n in normals if not is_zero_vec(n)}))
    lines = tuple(kernel_basis(normals, dim))
    if not normals:
        return (), lines
    basis = row_space_basis(normals)
    m = len(basis)
    rows = [tuple(dot(n, b) for b in basis) for n in normals]
    rays_y: set[IVec] = set()
    for subset in itertools.combinations(range(len(rows)), m - 1):
        sub = [rows[i] for i in subset]
        ker = kernel_basis(sub, m)
        if len(ker) != 1:
            continue
        v = ker[0]
        for cand in (v, tuple(-x for x in v)):
            if all(dot(r, cand) <= 0 for r in rows):
                rays_y.add(primitive(cand))
                break
    rays = set()
    for y in rays_y:
        r = zero_vec(dim)
        for yi, b in zip(y, basis):
            r = vadd(r, vscale(yi, b))
        rays.add(primitive(r))
    return tuple(sorted(rays)), lines


class DimensionMismatch(ValueError):
    pass


_CONE_POOL: dict = {}


@dataclass(frozen=True)
class Cone:
    """Closed convex cone in R^ambient, canonical form."""

    ambient: int
    rays: tuple[IVec, ...]
    lines: tuple[IVec, ...]

    # -- constructors ------------------------------------------------------

    @staticmethod
    def make(ambient: int, rays: tuple[IVec, ...], lines: tuple[IVec, ...]) -> "Cone":
        """Interned construction from already-canonical data, so face
        lattices and duals are computed once per distinct cone."""
        key = (ambient, rays, lines)
        cone = _CONE_POOL.get(key)
        if cone is None:
            cone = Cone(ambient, rays, lines)
            _CONE_POOL[key] = cone
        return cone

    @staticmethod
    def from_halfspaces(normals: Iterable[Sequence], ambient: int) -> "Cone":
        rays, lines = _dd(tuple(primitive(n) for n in normals), ambient)
        return Cone.make(ambient, rays, lines)

    @staticmethod
    def from_generators(gens: Iterable[Sequence], ambient: int) -> "Cone":
        gens = tuple(primitive(g) for g in gens if not is_zero_vec(g))
        # Generators of C are halfspace normals of the dual cone; dualizing
        # twice lands back on C in canonical form.
        dual_rays, dual_lines = _dd(gens, ambient)
        norms = dual_rays + dual_lines + tuple(tuple(-x for x in l) for l in dual_lines)
        rays, lines = _dd(norms, ambient)
        cone = Cone.make(ambient, rays, lines)
        dual = Cone.make(ambient, dual_rays, dual_lines)
        cone.__dict__.setdefault("dual", dual)
        dual.__dict__.setdefault("dual", cone)
        return cone

    @staticmethod
    def full_space(ambient: int) -> "Cone":
        return Cone.from_halfspaces([], ambient)

    @staticmethod
    def origin(ambient: int) -> "Cone":
        return Cone.from_generators([], ambient)

    # -- basic structure ---------------------------------------------------

    @property
    def generators(self) -> tuple[IVec, ...]:
        return self.rays + self.lines + tuple(tuple(-x for x in l) for l in self.lines)

    @cached_property
    def dim(self) -> int:
        return rank(self.rays + self.lines)

    @cached_property
    def dual(self) -> "Cone":
        rays, lines = _dd(self.generators, self.ambient)
        dual = Cone.make(self.ambient, rays, lines)
        dual.__dict__.setdefault("dual", _CONE_POOL.get((self.ambient, self.rays, self.lines), self))
        return dual

    @property
    def facet_normals(self) -> tuple[IVec, ...]:
        """Normals of proper supporting halfspaces (strict on the relint)."""
        return self.dual.rays

    @property
    def span_normals(self) -> tuple[IVec, ...]:
        """Normals vanishing on span(C); come in implicit +/- pairs."""
        return self.dual.lines

    @property
    def halfspaces(self) -> tuple[IVec, ...]:
        both = tuple(tuple(-x for x in l) for l in self.span_normals)
        return self.facet_normals + self.span_normals + both

    def is_pointed(self) -> bool:
        return not self.lines

    def is_subspace(self) -> bool:
        return not self.rays

    # -- predicates --------------------------------------------------------

    def contains(self, x: Sequence) -> bool:
        return all(dot(n, x) <= 0 for n in self.facet_normals) and all(
            dot(n, x) == 0 for n in self.span_normals
        )

    def relint_contains(self, x: Sequence) -> bool:
        return all(dot(n, x) < 0 for n in self.facet_normals) and all(
            dot(n, x) == 0 for n in self.span_normals
        )

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def relint_point(self) -> Vec:
        p = zero_vec(self.ambient)
        for r in self.rays:
            p = vadd(p, vec(r))
        return p

    # -- operations --------------------------------------------------------

    def intersect(self, other: "Cone") -> "Cone":
        if self.ambient != other.ambient:
            raise DimensionMismatch("cone ambient dimensions differ")
        return Cone.from_halfspaces(self.halfspaces + other.halfspaces, self.ambient)

    def intersect_halfspace(self, normal: Sequence) -> "Cone":
        return Cone.from_halfspaces(self.halfspaces + (primitive(normal),), self.ambient)

    def linear_image(self, matrix: Sequence[Sequence]) -> "Cone":
        """Image under an injective linear map given by rows (y = M x)."""
        gens = [tuple(dot(row, g) for row in matrix) for g in self.generators]
        return Cone.from_generators(gens, len(matrix))

    def negate(self) -> "Cone":
        return Cone.make(self.ambient, tuple(sorted(tuple(-x for x in r) for r in self.rays)), self.lines)

    # -- face lattice ------------------------------------------------------

    @cached_property
    def face_raysets(self) -> tuple[frozenset, ...]:
        """All faces, each identified by its set of incident extreme rays.

        Faces are intersections of facets; BFS from the top face.  The
        minimal face (the lineality space, {0} if pointed) always appears.
        """
        normals = self.facet_normals
        top = frozenset(self.rays)
        seen = {top}
        queue = [top]
        while queue:
            cur = queue.pop()
            for n in normals:
                child = frozenset(r for r in cur if dot(n, r) == 0)
                if child not in seen:
                    seen.add(child)
                    queue.append(child)
        # The lineality space (empty rayset) is always the minimal face.
        seen.add(frozenset())
        return tuple(sorted(seen, key=lambda s: (len(s), sorted(s))))

    def face_from_rayset(self, rayset: frozenset) -> "Cone":
        return Cone.make(self.ambient, tuple(sorted(rayset)), self.lines)

    @cached_property
    def faces(self) -> tuple["Cone", ...]:
        out = {self.face_from_rayset(rs) for rs in self.face_raysets}
        # Guard: every face must genuinely be exposed.  For cones built from
        # halfspaces this holds by construction.
        return tuple(sorted(out, key=lambda c: (c.dim, c.rays)))

    def facets(self) -> tuple["Cone", ...]:
        d = self.dim
        return tuple(f for f in self.faces if f.dim == d - 1)

    @cached_property
    def span_basis(self) -> tuple[IVec, ...]:
        return tuple(row_space_basis(self.rays + self.lines))

    def normal_cone(self, face: "Cone") -> "Cone":
        """Germ of this cone at a relative-interior point of `face`, taken in
        the orthogonal complement of span(face)."""
        v = face.relint_point()
        active = [n for n in self.facet_normals if dot(n, v) == 0]
        eqs: list[IVec] = list(self.span_normals)
        dirs = face.span_basis
        perp = []
        for d in dirs:
            perp.append(d)
            perp.append(tuple(-x for x in d))
        normals = active + eqs + [tuple(-x for x in n) for n in eqs] + perp
        return Cone.from_halfspaces(normals, self.ambient)

    # -- triangulation -----------------------------------------------------

    def is_simplicial(self) -> bool:
        return self.is_pointed() and len(self.rays) == self.dim

    def pull_triangulation(self) -> tuple[tuple[IVec, ...], ...]:
        """Simplicial subcones (as ray tuples) of a pointed cone, by pulling
        at the lexicographically least extreme ray.  Depends only on the
        cone, so shared faces of different cells triangulate compatibly."""
        if not self.is_pointed():
            raise ValueError("pull_triangulation requires a pointed cone")
        return _pull_cone(self)


def _pull_cone(cone: Cone) -> tuple[tuple[IVec, ...], ...]:
    if cone.dim == 0:
        return ((),)
    if cone.is_simplicial():
        return (cone.rays,)
    r0 = min(cone.rays)
    out = []
    for facet in cone.facets():
        if r0 in facet.rays:
            continue
        for piece in _pull_cone(facet):
            out.append(tuple(sorted((r0,) + piece)))
    return tuple(out)


def dual_cone(cone: Cone, ambient_dim: int) -> Cone:
    """Exact dual {w : <w, v> <= 0 for all v in the cone}."""
    if cone.ambient != ambient_dim:
        raise DimensionMismatch(
            f"cone lives in R^{cone.ambient}, not R^{ambient_dim}"
        )
    return cone.dual


def dual_in_subspace(cone: Cone, basis: Sequence[IVec]) -> Cone:
    """Dual taken inside span(basis); the cone must lie in that span."""
    ambient = cone.ambient
    perp = orthogonal_complement_basis(list(basis), ambient)
    normals: list[IVec] = list(cone.generators)
    for n in perp:
        normals.append(n)
        normals.append(tuple(-x for x in n))
    return Cone.from_halfspaces(normals, ambient)


def cone_faces(cone: Cone) -> list[tuple[int, Cone]]:
    """Face lattice with dimensions, minimal face included."""
    return [(f.dim, f) for f in cone.faces]
