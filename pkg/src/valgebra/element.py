"""Constructible elements: integer weights on open cells of a complex.

The value of an element at a point is the weight of the unique cell whose
relative interior contains it, so two elements are equal exactly when they
agree after overlaying their carriers.  All operations are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .cellcomplex import (
    Cell,
    CellComplex,
    build_complex,
    cell_dim,
    cell_relint_point,
    complex_from_cell,
    overlay,
    triangulate,
)
from .cone import Cone
from .linalg import Vec, dot, vec, vscale, zero_vec
from .polytope import Polytope, product_cone, product_polytope


class FiltrationError(ValueError):
    """Support dimension exceeds the stated filtration stage."""


@dataclass(frozen=True)
class Element:
    complex: CellComplex
    weights: tuple[tuple[int, int], ...]  # (cell index, weight), weight != 0

    @property
    def wmap(self) -> dict[int, int]:
        return dict(self.weights)

    def is_zero(self) -> bool:
        return not self.weights

    def conical(self) -> bool:
        return self.complex.conical


def _make(complex_: CellComplex, wmap: dict[int, int]) -> Element:
    items = tuple(sorted((i, w) for i, w in wmap.items() if w != 0))
    return Element(complex_, items)


def indicator(k: CellComplex, member: Callable[[Cell], bool] = lambda c: True) -> Element:
    return _make(k, {i: 1 for i, c in enumerate(k.cells) if member(c)})


def from_polytope(p: Union[Polytope, CellComplex, None]) -> Element:
    """Indicator element of a closed polytope (or of a complex's support)."""
    if p is None:
        return zero_element(0, conical=False)
    if isinstance(p, CellComplex):
        return indicator(p)
    return indicator(complex_from_cell(p))


def from_cone(c: Union[Cone, CellComplex]) -> Element:
    if isinstance(c, CellComplex):
        if not c.conical:
            raise ValueError("expected a conical complex")
        return indicator(c)
    return indicator(complex_from_cell(c))


def zero_element(ambient: int, conical: bool) -> Element:
    if conical:
        k = build_complex([Cone.origin(ambient)], ambient, True)
    else:
        k = build_complex([Polytope.from_points([zero_vec(ambient)])], ambient, False)
    return _make(k, {})


def value_at(xi: Element, x: Sequence) -> int:
    i = xi.complex.locate(x)
    return 0 if i is None else xi.wmap.get(i, 0)


def support_dim(xi: Element) -> int:
    dims = xi.complex.dims()
    return max((dims[i] for i, _ in xi.weights), default=-1)


def euler_char(xi: Element) -> int:
    """Compactly supported Euler characteristic: alternating open-cell sum."""
    dims = xi.complex.dims()
    return sum(w * (-1) ** dims[i] for i, w in xi.weights)


def scale(xi: Element, c: int) -> Element:
    return _make(xi.complex, {i: c * w for i, w in xi.weights})


def add_same_carrier(a: Element, b: Element) -> Element:
    wm = dict(a.weights)
    for i, w in b.weights:
        wm[i] = wm.get(i, 0) + w
    return _make(a.complex, wm)


def transfer(xi: Element, target: CellComplex) -> Element:
    """Re-express on a complex refining the carrier (weights via relint points)."""
    wm = {}
    for i, c in enumerate(target.cells):
        w = value_at(xi, cell_relint_point(c))
        if w:
            wm[i] = w
    return _make(target, wm)


def add(a: Element, b: Element) -> Element:
    if a.complex == b.complex:
        return add_same_carrier(a, b)
    if a.is_zero() and b.is_zero():
        return a
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    k = overlay(a.complex, b.complex)
    return add_same_carrier(transfer(a, k), transfer(b, k))


def subtract(a: Element, b: Element) -> Element:
    return add(a, scale(b, -1))


def equals(a: Element, b: Element) -> bool:
    """Exact equality as constructible functions (Lemma-level faithfulness)."""
    if a.complex == b.complex:
        return a.weights == b.weights
    return subtract(a, b).is_zero()


def closed_expansion(xi: Element) -> dict[int, int]:
    """Coefficients c with  xi = sum_tau c[tau] * (closed cell tau).

    Uses (open sigma) = sum over faces tau of sigma of (-1)^(dim s - dim t)
    (closed tau); the carrier is closure-complete so all faces are indexed.
    """
    dims = xi.complex.dims()
    out: dict[int, int] = {}
    for i, w in xi.weights:
        ds = dims[i]
        for j in xi.complex.face_indices[i]:
            out[j] = out.get(j, 0) + w * (-1) ** (ds - dims[j])
    return {j: c for j, c in out.items() if c != 0}


def from_closed_weights(k: CellComplex, coeffs: dict[int, int]) -> Element:
    """Element sum_tau coeffs[tau] * (closed cell tau)."""
    wm: dict[int, int] = {}
    for i, c in coeffs.items():
        for j in k.face_indices[i]:
            wm[j] = wm.get(j, 0) + c
    return _make(k, wm)


def closure_coefficients(k: CellComplex) -> dict[int, int]:
    """Coefficient of each closed cell when the indicator of the support is
    written over closed cells; equals 1 - (Euler characteristic of the link).
    """
    return closed_expansion(indicator(k))


def interior_involution(xi: Element) -> Element:
    """The involution sending a closed d-manifold cell to (-1)^d times the
    indicator of its interior; computed cellwise on the carrier."""
    dims = xi.complex.dims()
    wm: dict[int, int] = {}
    for i, w in xi.weights:
        sgn = (-1) ** dims[i]
        for j in xi.complex.face_indices[i]:
            wm[j] = wm.get(j, 0) + sgn * w
    return _make(xi.complex, wm)


def delta(xi: Element, n: int) -> Element:
    """Boundary operator at filtration stage n: xi - (-1)^n I(xi)."""
    if support_dim(xi) > n:
        raise FiltrationError(f"support dimension {support_dim(xi)} exceeds {n}")
    return add_same_carrier(xi, scale(interior_involution(xi), -((-1) ** n)))


def dilate(xi: Element, lam) -> Element:
    """Image under v -> lam * v, exact for nonzero rational lam."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("dilatation factor must be nonzero")
    amb = xi.complex.ambient
    if xi.complex.conical:
        sign = 1 if lam > 0 else -1
        cells = [
            Cone.make(amb, tuple(sorted(vscale_int(sign, r) for r in c.rays)), c.lines)
            for c in xi.complex.cells
        ]
    else:
        cells = [
            Polytope.from_points([vscale(lam, v) for v in c.vertices])
            for c in xi.complex.cells
        ]
    k = build_complex(cells, amb, xi.complex.conical)
    out: dict[int, int] = {}
    for i, w in xi.weights:
        idx = k.index[cells[i]]
        out[idx] = out.get(idx, 0) + w
    return _make(k, out)


def vscale_int(s: int, r):
    return tuple(s * x for x in r)


def external_product(a: Element, b: Element) -> Element:
    """Element over the orthogonal coordinate-block product of the carriers."""
    if a.conical() != b.conical():
        raise ValueError("cannot mix conical and polytopal elements")
    ka, kb = a.complex, b.complex
    prod = product_cone if a.conical() else product_polytope
    cells = []
    pairs = []
    for ca in ka.cells:
        for cb in kb.cells:
            cells.append(prod(ca, cb))
            pairs.append((ca, cb))
    k = build_complex(cells, ka.ambient + kb.ambient, a.conical())
    wa, wb = a.wmap, b.wmap
    out: dict[int, int] = {}
    for (i, wi) in a.weights:
        for (j, wj) in b.weights:
            cell = prod(ka.cells[i], kb.cells[j])
            idx = k.index[cell]
            out[idx] = out.get(idx, 0) + wi * wj
    return _make(k, out)


def embed_element(xi: Element, ambient: int) -> Element:
    """Pad coordinates with zeros; for conical carriers this realizes the
    filtration inclusion, for polytopal ones multiplication by a point."""
    amb = xi.complex.ambient
    if ambient < amb:
        raise ValueError("cannot embed into a smaller space")
    if ambient == amb:
        return xi
    pad = zero_vec(ambient - amb)
    if xi.complex.conical:
        cells = [
            Cone.make(ambient, tuple(tuple(r) + (0,) * (ambient - amb) for r in c.rays),
                 tuple(tuple(l) + (0,) * (ambient - amb) for l in c.lines))
            for c in xi.complex.cells
        ]
        k = build_complex(cells, ambient, True)
    else:
        cells = [Polytope.from_points([v + pad for v in c.vertices]) for c in xi.complex.cells]
        k = build_complex(cells, ambient, False)
    out: dict[int, int] = {}
    for i, w in xi.weights:
        c = cells[i]
        out[k.index[c]] = out.get(k.index[c], 0) + w
    return _make(k, out)


def triangulated(xi: Element) -> Element:
    """Same element on a simplicial refinement of its carrier."""
    if xi.complex.is_triangulated():
        return xi
    return transfer(xi, triangulate(xi.complex))


# -- pushforward -------------------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix @ x + shift, with rational entries."""

    matrix: tuple[Vec, ...]
    shift: Vec

    def __call__(self, x: Sequence) -> Vec:
        return tuple(dot(row, x) + s for row, s in zip(self.matrix, self.shift))

    def is_injective(self) -> bool:
        from .linalg import rank

        cols = len(self.matrix[0]) if self.matrix else 0
        return rank(self.matrix) == cols


@dataclass(frozen=True)
class CoordinateProjection:
    """x -> (x[i] for i in coords)."""

    coords: tuple[int, ...]

    def __call__(self, x: Sequence) -> Vec:
        return tuple(Fraction(x[i]) for i in self.coords)


def pushforward(f, xi: Element) -> Element:
    """Pushforward along an injective affine map or a coordinate projection.

    Injective maps relabel the geometry.  Projections assign to each open
    cell of the refined shadow arrangement the Euler characteristic of the
    fiber of the element over a relative-interior sample point.
    """
    if isinstance(f, AffineMap):
        if not f.is_injective():
            raise ValueError("affine pushforward requires an injective map")
        cells = [c.affine_image(f.matrix, f.shift) for c in xi.complex.cells]
        k = build_complex(cells, len(f.shift), False)
        out: dict[int, int] = {}
        for i, w in xi.weights:
            idx = k.index[cells[i]]
            out[idx] = out.get(idx, 0) + w
        return _make(k, out)
    if not isinstance(f, CoordinateProjection):
        raise ValueError(f"unsupported map kind: {f!r}")
    if xi.complex.conical:
        raise ValueError("projection pushforward is defined for polytopal elements")
    coords = f.coords
    shadows = [
        Polytope.from_points([f(v) for v in c.vertices]) for c in xi.complex.cells
    ]
    from .cellcomplex import _cell_hyperplanes, split_cells

    keys = set()
    shadow_cells = set()
    for s in shadows:
        keys |= _cell_hyperplanes(s)
        shadow_cells.update(s.faces)
    pieces = split_cells(sorted(shadow_cells, key=lambda c: (c.dim, c.vertices)), sorted(keys))
    k = build_complex(pieces, len(coords), False)
    out: dict[int, int] = {}
    for j, cell in enumerate(k.cells):
        y = cell_relint_point(cell)
        eqs = [(unit_row(i, xi.complex.ambient), y[t]) for t, i in enumerate(coords)]
        total = 0
        for i, w in xi.weights:
            total += w * _fiber_chi(xi.complex.cells[i], eqs)
        if total:
            out[j] = total
    return _make(k, out)


def unit_row(i: int, n: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def _fiber_chi(cell: Polytope, eqs) -> int:
    """chi_c(relint(cell) intersected with an affine subspace)."""
    slab = cell.intersect_affine(eqs)
    if slab is None:
        return 0
    z = slab.barycenter()
    if not cell.relint_contains(z):
        return 0
    return (-1) ** slab.dim
