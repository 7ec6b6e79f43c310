"""Embedded cell complexes (polytopal or conical) and their refinements.

A complex is stored closure-complete: every face of every cell is a cell.
Relative interiors of cells then partition the underlying set, which is the
normal form constructible elements rely on.  Common refinements are built
from pairwise intersections (already closed under faces); overlays of
complexes with different underlying sets go through hyperplane splitting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from .cone import Cone
from .linalg import Vec, dot, primitive_signed, vec, zero_vec
from .polytope import Polytope

Cell = Union[Polytope, Cone]


def cell_dim(c: Cell) -> int:
    return c.dim


def cell_faces(c: Cell) -> Sequence[Cell]:
    return c.faces


def cell_relint_point(c: Cell) -> Vec:
    return c.barycenter() if isinstance(c, Polytope) else c.relint_point()


def cell_relint_contains(c: Cell, x: Sequence) -> bool:
    return c.relint_contains(x)


def cell_contains(c: Cell, x: Sequence) -> bool:
    return c.contains(x)


def cell_sort_key(c: Cell):
    if isinstance(c, Polytope):
        return (c.dim, 0, c.vertices)
    return (c.dim, 1, c.rays, c.lines)


def cell_contained_in(inner: Cell, outer: Cell) -> bool:
    if isinstance(inner, Polytope):
        return all(outer.contains(v) for v in inner.vertices)
    return all(outer.contains(g) for g in inner.generators)


@dataclass(frozen=True)
class CellComplex:
    ambient: int
    conical: bool
    cells: tuple[Cell, ...]

    @cached_property
    def index(self) -> dict:
        return {c: i for i, c in enumerate(self.cells)}

    @cached_property
    def face_indices(self) -> tuple[tuple[int, ...], ...]:
        """For each cell, the indices of all its faces (itself included)."""
        out = []
        for c in self.cells:
            out.append(tuple(sorted(self.index[f] for f in cell_faces(c))))
        return tuple(out)

    def dims(self) -> tuple[int, ...]:
        return tuple(cell_dim(c) for c in self.cells)

    @cached_property
    def _bboxes(self):
        """Outward-padded float bounding boxes; a conservative prefilter
        only, every hit is confirmed by the exact predicate."""
        pad = 1e-6
        boxes = []
        for c in self.cells:
            if isinstance(c, Polytope):
                pts = c.vertices
                lo = [min(float(v[i]) for v in pts) for i in range(self.ambient)]
                hi = [max(float(v[i]) for v in pts) for i in range(self.ambient)]
                span = max((abs(x) for x in lo + hi), default=1.0) + 1.0
                boxes.append(
                    ([x - pad * span for x in lo], [x + pad * span for x in hi])
                )
            else:
                boxes.append(None)
        return boxes

    def locate(self, x: Sequence) -> Optional[int]:
        """Index of the unique cell whose relative interior contains x."""
        xf = [float(v) for v in x]
        for i, c in enumerate(self.cells):
            box = self._bboxes[i]
            if box is not None and any(
                not (lo <= v <= hi) for v, lo, hi in zip(xf, box[0], box[1])
            ):
                continue
            if cell_relint_contains(c, x):
                return i
        return None

    def is_triangulated(self) -> bool:
        for c in self.cells:
            if isinstance(c, Polytope):
                if not c.is_simplex():
                    return False
            elif not c.is_simplicial():
                return False
        return True

    def support_dim(self) -> int:
        return max((cell_dim(c) for c in self.cells), default=-1)


def build_complex(cells: Iterable[Cell], ambient: int, conical: bool) -> CellComplex:
    """Close the cell set under faces, dedupe, and sort canonically."""
    seen = set()
    stack = list(cells)
    while stack:
        c = stack.pop()
        if c in seen:
            continue
        seen.add(c)
        for f in cell_faces(c):
            if f not in seen:
                stack.append(f)
    ordered = tuple(sorted(seen, key=cell_sort_key))
    return CellComplex(ambient, conical, ordered)


def complex_from_cell(cell: Cell) -> CellComplex:
    conical = isinstance(cell, Cone)
    return build_complex([cell], cell.ambient, conical)


def validate_complex(k: CellComplex) -> list[str]:
    """Diagnostic checks: pairwise disjoint relative interiors and exact
    face closure.  Used by tests; building goes through `build_complex`,
    which is closure-complete by construction."""
    problems = []
    for i, a in enumerate(k.cells):
        for b in k.cells[i + 1 :]:
            inter = _intersect_cells(a, b)
            if inter is None:
                continue
            z = cell_relint_point(inter)
            if cell_relint_contains(a, z) and cell_relint_contains(b, z):
                problems.append(f"interiors of cells {a} and {b} overlap")
    present = set(k.cells)
    for c in k.cells:
        for f in cell_faces(c):
            if f not in present:
                problems.append(f"face {f} of {c} missing from complex")
    return problems


def _intersect_cells(a: Cell, b: Cell) -> Optional[Cell]:
    if isinstance(a, Polytope):
        return a.intersect(b)
    inter = a.intersect(b)
    return inter


def refine_common(k1: CellComplex, k2: CellComplex) -> CellComplex:
    """Common refinement of two cell structures on the same underlying set.

    Pairwise intersections of cells are already closed under faces (the
    minimal face of an intersection at a point is the intersection of the
    minimal faces), so no further completion is required.
    """
    if k1.ambient != k2.ambient or k1.conical != k2.conical:
        raise ValueError("complexes are not comparable")
    _check_same_support(k1, k2)
    pieces = set()
    for a in k1.cells:
        for b in k2.cells:
            inter = _intersect_cells(a, b)
            if inter is not None:
                pieces.add(inter)
    return build_complex(pieces, k1.ambient, k1.conical)


def _check_same_support(k1: CellComplex, k2: CellComplex) -> None:
    """Indicator sampling at relative-interior points plus exact membership."""
    for src, other in ((k1, k2), (k2, k1)):
        for c in src.cells:
            z = cell_relint_point(c)
            if not any(cell_contains(d, z) for d in other.cells):
                raise ValueError("complexes have different underlying sets")


def is_refinement(fine: CellComplex, coarse: CellComplex) -> bool:
    return all(
        any(cell_contained_in(c, d) for d in coarse.cells) for c in fine.cells
    )


# -- hyperplane splitting ----------------------------------------------------


def _cell_hyperplanes(c: Cell) -> set:
    """Canonical cutting-hyperplane keys: the affine hull of the cell and,
    for each facet, the hyperplane through it orthogonal to the facet
    inside the cell's own direction space.

    Polytopal key: primitive signed lift (-c, n) of <n, x> = c.
    Conical key: primitive signed normal n of <n, x> = 0.

    (The raw facet normals of a lower-dimensional cell are canonical only
    modulo its affine hull; these keys avoid spurious slanted cuts.)
    """
    from .linalg import orthogonal_complement_basis

    keys = set()
    if isinstance(c, Polytope):
        v0 = c.vertices[0]
        for n in orthogonal_complement_basis(c.dir_basis, c.ambient):
            keys.add(primitive_signed((-dot(n, v0),) + tuple(n)))
        for f in c.facet_faces():
            u = orthogonal_complement_basis(f.dir_basis, c.ambient, within=c.dir_basis)[0]
            keys.add(primitive_signed((-dot(u, f.vertices[0]),) + tuple(u)))
    else:
        for n in c.span_normals:
            keys.add(primitive_signed(n))
        for f in c.facets():
            u = orthogonal_complement_basis(f.span_basis, c.ambient, within=c.span_basis)[0]
            keys.add(primitive_signed(u))
    return keys


def _cell_float_points(c: Cell):
    cached = c.__dict__.get("_float_points")
    if cached is None:
        pts = c.vertices if isinstance(c, Polytope) else c.generators
        cached = tuple(tuple(float(x) for x in v) for v in pts)
        c.__dict__["_float_points"] = cached
    return cached


def _split_cell(c: Cell, key) -> list[Cell]:
    """Split a cell by one hyperplane; returns [c] when it does not cut.

    A scale-aware floating sign test rejects the common no-cut case; any
    inconclusive sign goes through the exact rational predicate.
    """
    polytopal = isinstance(c, Polytope)
    if polytopal:
        off = -float(key[0])
        fn = tuple(float(x) for x in key[1:])
    else:
        off = 0.0
        fn = tuple(float(x) for x in key)
    fvals = []
    scale = 1.0
    for p in _cell_float_points(c):
        v = sum(a * b for a, b in zip(fn, p)) - off
        fvals.append(v)
        scale = max(scale, abs(v))
    margin = 1e-9 * scale
    decisive = all(abs(v) > margin for v in fvals)
    if decisive and (all(v > 0 for v in fvals) or all(v < 0 for v in fvals)):
        return [c]
    if isinstance(c, Polytope):
        offq, n = -Fraction(key[0]), key[1:]
        vals = [dot(n, v) - offq for v in c.vertices]
        if not (any(v > 0 for v in vals) and any(v < 0 for v in vals)):
            return [c]
        lo = c.intersect_halfspace(n, offq)
        hi = c.intersect_halfspace(tuple(-x for x in n), -offq)
        return [p for p in (lo, hi) if p is not None]
    vals = [dot(key, g) for g in c.generators]
    if not (any(v > 0 for v in vals) and any(v < 0 for v in vals)):
        return [c]
    return [c.intersect_halfspace(key), c.intersect_halfspace(tuple(-x for x in key))]


def split_cells(cells: Iterable[Cell], keys: Iterable) -> list[Cell]:
    pieces = list(cells)
    for key in keys:
        nxt = []
        for c in pieces:
            nxt.extend(_split_cell(c, key))
        pieces = nxt
    return pieces


def overlay(k1: CellComplex, k2: CellComplex) -> CellComplex:
    """A complex covering the union of both supports, refining both.

    Every facet/affine-hull hyperplane of either complex is used to split
    every cell of both, after which pieces from the two sides are equal or
    have disjoint relative interiors.
    """
    if k1.ambient != k2.ambient or k1.conical != k2.conical:
        raise ValueError("complexes are not comparable")
    keys = set()
    for k in (k1, k2):
        for c in k.cells:
            keys |= _cell_hyperplanes(c)
    keys = sorted(keys)
    pieces = split_cells(k1.cells, keys) + split_cells(k2.cells, keys)
    return build_complex(pieces, k1.ambient, k1.conical)


# -- triangulation -----------------------------------------------------------


def triangulate(k: CellComplex) -> CellComplex:
    """Refinement of a complex into a (conical) simplicial complex.

    Polytopal cells use the pulling triangulation at the least vertex.
    Conical complexes are first cut by hyperplanes normal to every lineality
    direction so that all cells are pointed, then pulled at the least ray.
    """
    if k.conical:
        keys = set()
        for c in k.cells:
            for l in c.lines:
                keys.add(primitive_signed(l))
        cells = split_cells(k.cells, sorted(keys)) if keys else list(k.cells)
        simplices: set[Cell] = set()
        for c in cells:
            for rays in c.pull_triangulation():
                simplices.add(Cone.make(k.ambient, tuple(sorted(rays)), ()))
        return build_complex(simplices, k.ambient, True)
    simplices = set()
    for c in k.cells:
        for verts in c.pull_triangulation():
            simplices.add(Polytope.from_points(verts))
    return build_complex(simplices, k.ambient, False)
