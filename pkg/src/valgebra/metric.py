"""Abstract Euclidean simplicial complexes and their vertex germs.

A complex is combinatorial data plus exact squared edge lengths; a
Cayley-Menger determinant certifies each simplex embeds nondegenerately.
Vertex germs are conical simplicial complexes carried by exact Gram
matrices, which keeps angle defects exact for all the Niven angles (the
cube surface, octahedron, flat tori, right-isoceles tilings) without ever
needing irrational coordinates.  Numeric embeddings are available on
demand through one floating-point Cholesky step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .angle import Angle, ZERO_ANGLE, angle_from_gram
from .linalg import det, exact_sqrt
from .ringvalue import Rat, Real, RingValue


class DegenerateMetric(ValueError):
    """A simplex's edge lengths admit no nondegenerate Euclidean embedding."""


def _edge(a, b) -> frozenset:
    return frozenset((a, b))


@dataclass(frozen=True)
class AbstractEuclideanComplex:
    """Simplicial complex with exact squared edge lengths."""

    simplices: tuple[frozenset, ...]
    sq_lengths: tuple[tuple[frozenset, Fraction], ...]

    @staticmethod
    def build(maximal: Iterable[Sequence], sq_lengths: Mapping) -> "AbstractEuclideanComplex":
        closed = set()
        for s in maximal:
            fs = frozenset(s)
            for k in range(1, len(fs) + 1):
                for sub in combinations(sorted(fs, key=str), k):
                    closed.add(frozenset(sub))
        lengths = {}
        for key, val in sq_lengths.items():
            lengths[frozenset(key)] = Fraction(val)
        simplices = tuple(sorted(closed, key=lambda s: (len(s), sorted(map(str, s)))))
        for s in simplices:
            for e in combinations(sorted(s, key=str), 2):
                if _edge(*e) not in lengths:
                    raise ValueError(f"missing edge length for {e}")
        k = AbstractEuclideanComplex(simplices, tuple(sorted(lengths.items(), key=lambda p: sorted(map(str, p[0])))))
        k.validate()
        return k

    @cached_property
    def _length_map(self) -> dict:
        return dict(self.sq_lengths)

    def sq_length(self, a, b) -> Fraction:
        return self._length_map[_edge(a, b)]

    def dim(self) -> int:
        return max(len(s) for s in self.simplices) - 1

    def vertices(self) -> list:
        return sorted({v for s in self.simplices for v in s}, key=str)

    def edges(self) -> list[frozenset]:
        return [s for s in self.simplices if len(s) == 2]

    def top_simplices(self, d: Optional[int] = None) -> list[frozenset]:
        if d is None:
            d = self.dim()
        return [s for s in self.simplices if len(s) == d + 1]

    def euler_char(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)

    # -- metric checks -----------------------------------------------------

    def cayley_menger(self, simplex: frozenset) -> Fraction:
        verts = sorted(simplex, key=str)
        n = len(verts)
        size = n + 1
        rows = []
        rows.append([Fraction(0)] + [Fraction(1)] * n)
        for i, a in enumerate(verts):
            row = [Fraction(1)]
            for b in verts:
                row.append(Fraction(0) if a == b else self.sq_length(a, b))
            rows.append(row)
        return det(rows)

    def validate(self) -> None:
        """Cayley-Menger sign sequence certifies nondegenerate embeddings."""
        for s in self.simplices:
            k = len(s) - 1
            if k == 0:
                continue
            cm = self.cayley_menger(s)
            if cm == 0 or (cm > 0) != (k % 2 == 1):
                raise DegenerateMetric(f"simplex {sorted(map(str, s))} has no Euclidean realization")

    def simplex_volume_sq(self, simplex: frozenset) -> Fraction:
        k = len(simplex) - 1
        cm = self.cayley_menger(simplex)
        from math import factorial

        return Fraction((-1) ** (k + 1), 2**k) * cm / (factorial(k) ** 2)

    def area(self) -> RingValue:
        """Total top-dimensional volume (exact when each piece is rational)."""
        total_exact = Fraction(0)
        total_float = 0.0
        exact = True
        for s in self.top_simplices():
            q = self.simplex_volume_sq(s)
            root = exact_sqrt(q)
            if root is None:
                exact = False
                total_float += float(q) ** 0.5
            else:
                total_exact += root
                total_float += float(root)
        return Rat(total_exact) if exact else Real(total_float)

    # -- germs --------------------------------------------------------------

    def germ_gram(self, v, others: Sequence) -> list[list[Fraction]]:
        """Gram matrix of the edge vectors from v toward `others`."""
        g = []
        for a in others:
            row = []
            for b in others:
                if a == b:
                    row.append(self.sq_length(v, a))
                else:
                    row.append(
                        (self.sq_length(v, a) + self.sq_length(v, b) - self.sq_length(a, b)) / 2
                    )
            g.append(row)
        return g

    def germ_cone(self, v) -> "MetricConicalComplex":
        """The vertex germ: a conical simplicial complex with exact metric."""
        if not any(v in s and len(s) == 1 for s in self.simplices):
            raise ValueError(f"{v!r} is not a vertex")
        cells = [frozenset(s - {v}) for s in self.simplices if v in s]
        cells = tuple(sorted(set(cells), key=lambda s: (len(s), sorted(map(str, s)))))
        return MetricConicalComplex(self, v, cells)


@dataclass(frozen=True)
class MetricConicalComplex:
    """Conical simplicial complex carried by Gram data at a vertex germ."""

    parent: AbstractEuclideanComplex
    apex: object
    cells: tuple[frozenset, ...]

    @cached_property
    def index(self) -> dict:
        return {c: i for i, c in enumerate(self.cells)}

    @cached_property
    def face_indices(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for c in self.cells:
            sub = []
            for k in range(0, len(c) + 1):
                for subset in combinations(sorted(c, key=str), k):
                    sub.append(self.index[frozenset(subset)])
            out.append(tuple(sorted(sub)))
        return tuple(out)

    def dims(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    def dim(self) -> int:
        return max(self.dims(), default=0)

    def gram(self, cell: frozenset) -> list[list[Fraction]]:
        return self.parent.germ_gram(self.apex, sorted(cell, key=str))

    def cell_angle(self, cell: frozenset) -> Angle:
        if len(cell) != 2:
            raise ValueError("angles are attached to two-dimensional conical cells")
        g = self.gram(cell)
        return angle_from_gram(g[0][0], g[1][1], g[0][1])

    def total_angle(self) -> Angle:
        total = ZERO_ANGLE
        for c in self.cells:
            if len(c) == 2:
                total = total + self.cell_angle(c)
        return total

    def angle_defect(self) -> RingValue:
        """1 - (total angle)/2pi: the dual volume of a surface vertex germ."""
        q = self.total_angle().over_two_pi()
        if isinstance(q, Fraction):
            return Rat(1 - q)
        return Real(1.0 - q)

    def embed(self, tol: float = 1e-9):
        """Float coordinates for the germ's generators via Cholesky."""
        import numpy as np

        gens = sorted({v for c in self.cells for v in c}, key=str)
        g = np.array(self.parent.germ_gram(self.apex, gens), dtype=float)
        w, vecs = np.linalg.eigh(g)
        w = np.where(w > tol, w, np.maximum(w, 0.0))
        coords = vecs @ np.diag(np.sqrt(w))
        return {v: coords[i] for i, v in enumerate(gens)}


@dataclass(frozen=True)
class MetricConeElement:
    """Integer weights on open cells of a metric conical complex."""

    complex: MetricConicalComplex
    weights: tuple[tuple[int, int], ...]

    @property
    def wmap(self) -> dict[int, int]:
        return dict(self.weights)

    def is_zero(self) -> bool:
        return not self.weights


def metric_indicator(k: MetricConicalComplex) -> MetricConeElement:
    return MetricConeElement(k, tuple((i, 1) for i in range(len(k.cells))))


def metric_make(k: MetricConicalComplex, wm: dict[int, int]) -> MetricConeElement:
    return MetricConeElement(k, tuple(sorted((i, w) for i, w in wm.items() if w)))


def metric_closed_expansion(xi: MetricConeElement) -> dict[int, int]:
    dims = xi.complex.dims()
    out: dict[int, int] = {}
    for i, w in xi.weights:
        for j in xi.complex.face_indices[i]:
            out[j] = out.get(j, 0) + w * (-1) ** (dims[i] - dims[j])
    return {j: c for j, c in out.items() if c}


def metric_interior_involution(xi: MetricConeElement) -> MetricConeElement:
    dims = xi.complex.dims()
    wm: dict[int, int] = {}
    for i, w in xi.weights:
        sgn = (-1) ** dims[i]
        for j in xi.complex.face_indices[i]:
            wm[j] = wm.get(j, 0) + sgn * w
    return metric_make(xi.complex, wm)


def metric_delta(xi: MetricConeElement, n: int) -> MetricConeElement:
    sup = max((len(xi.complex.cells[i]) for i, _ in xi.weights), default=0)
    if sup > n:
        raise ValueError("support dimension exceeds the filtration stage")
    ix = metric_interior_involution(xi)
    wm = xi.wmap
    for i, w in ix.weights:
        wm[i] = wm.get(i, 0) - ((-1) ** n) * w
    return metric_make(xi.complex, wm)


def metric_epsilon(xi: MetricConeElement) -> int:
    return xi.wmap.get(xi.complex.index[frozenset()], 0)


def metric_local_euler(xi: MetricConeElement) -> int:
    # simplicial cones are never subspaces except the origin cell
    return metric_closed_expansion(xi).get(xi.complex.index[frozenset()], 0)


def metric_conical_volume(xi: MetricConeElement, ambient_dim: Optional[int] = None) -> RingValue:
    k = xi.complex
    if ambient_dim is None:
        ambient_dim = k.dim()
    total: RingValue = Rat(Fraction(0))
    from .ringvalue import add

    for i, c in metric_closed_expansion(xi).items():
        cell = k.cells[i]
        if len(cell) != ambient_dim:
            continue
        total = add(total, _scale_rv(_metric_cell_volume(k, cell, ambient_dim), c))
    return total


def _metric_cell_volume(k: MetricConicalComplex, cell: frozenset, ambient_dim: int) -> RingValue:
    m = len(cell)
    if m == 0:
        return Rat(Fraction(1))
    if m == 1:
        return Rat(Fraction(1, 2))
    if m == 2:
        q = k.cell_angle(cell).over_two_pi()
        return Rat(q) if isinstance(q, Fraction) else Real(q)
    raise NotImplementedError("metric conical volume implemented through dimension 2")


def metric_dual_volume(xi: MetricConeElement, ambient_dim: Optional[int] = None) -> RingValue:
    """W on a metric conical element; absolute, so no ambient bookkeeping."""
    k = xi.complex
    from .ringvalue import add

    total: RingValue = Rat(Fraction(0))
    for i, c in metric_closed_expansion(xi).items():
        cell = k.cells[i]
        m = len(cell)
        if m == 0:
            val: RingValue = Rat(Fraction(1))
        elif m == 1:
            val = Rat(Fraction(1, 2))
        elif m == 2:
            q = k.cell_angle(cell).over_two_pi()
            val = Rat(Fraction(1, 2) - q) if isinstance(q, Fraction) else Real(0.5 - q)
        else:
            raise NotImplementedError("metric dual volume implemented through dimension 2")
        total = add(total, _scale_rv(val, c))
    return total


def _scale_rv(v: RingValue, c: int) -> RingValue:
    from .ringvalue import Int, mul

    return mul(Int(c), v)


# -- intrinsic invariants of abstract surfaces ---------------------------------


def surface_gauss_defect_sum(k: AbstractEuclideanComplex) -> RingValue:
    """Sum over vertices of 1 - theta/2pi; the Gauss-Bonnet total."""
    from .ringvalue import add

    total: RingValue = Rat(Fraction(0))
    for v in k.vertices():
        total = add(total, k.germ_cone(v).angle_defect())
    return total


def surface_chi1(k: AbstractEuclideanComplex) -> RingValue:
    """Intrinsic one-dimensional volume of an abstract surface complex:
    sum over edges of W(edge germ) * length.  Vanishes on closed surfaces."""
    from math import sqrt

    from .ringvalue import add

    total: RingValue = Rat(Fraction(0))
    for e in k.edges():
        cofaces = [s for s in k.simplices if len(s) == 3 and e < s]
        # closed expansion of the union-of-rays edge germ: rays get W = 1/2
        # each, the origin carries coefficient 1 - #rays with W = 1
        w = Fraction(1, 2) * len(cofaces) + (1 - len(cofaces))
        if w == 0:
            continue
        q = k.sq_length(*sorted(e, key=str))
        root = exact_sqrt(q)
        if root is not None:
            total = add(total, Rat(w * root))
        else:
            total = add(total, Real(float(w) * sqrt(float(q))))
    return total


# -- example complexes ----------------------------------------------------------


def cube_surface() -> AbstractEuclideanComplex:
    """Surface of the unit cube, each square face cut into two right triangles."""
    verts = {(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)}
    faces = []
    for axis in range(3):
        for level in (0, 1):
            quad = [v for v in sorted(verts) if v[axis] == level]
            a, b, c, d = quad  # lex order: a-b-d-c traverses the square
            faces.append((a, b, d))
            faces.append((a, c, d))
    lengths = {}
    for f in faces:
        for u, w in combinations(f, 2):
            lengths[frozenset((u, w))] = sum((x - y) ** 2 for x, y in zip(u, w))
    return AbstractEuclideanComplex.build(faces, lengths)


def octahedron_surface() -> AbstractEuclideanComplex:
    pts = []
    for i in range(3):
        for s in (1, -1):
            v = [0, 0, 0]
            v[i] = s
            pts.append(tuple(v))
    faces = []
    for sx in (1, -1):
        for sy in (1, -1):
            for sz in (1, -1):
                faces.append(((sx, 0, 0), (0, sy, 0), (0, 0, sz)))
    lengths = {}
    for f in faces:
        for u, w in combinations(f, 2):
            lengths[frozenset((u, w))] = sum((x - y) ** 2 for x, y in zip(u, w))
    return AbstractEuclideanComplex.build(faces, lengths)


def flat_torus(n: int = 3) -> AbstractEuclideanComplex:
    """n x n unit-square grid torus, squares cut along parallel diagonals."""
    if n < 3:
        raise ValueError("a simplicial torus needs at least a 3 x 3 grid")
    faces = []
    lengths = {}

    def vert(i, j):
        return (i % n, j % n)

    for i in range(n):
        for j in range(n):
            a, b, c, d = vert(i, j), vert(i + 1, j), vert(i, j + 1), vert(i + 1, j + 1)
            faces.append((a, b, d))
            faces.append((a, c, d))
            lengths[frozenset((a, b))] = Fraction(1)
            lengths[frozenset((a, c))] = Fraction(1)
            lengths[frozenset((a, d))] = Fraction(2)
    return AbstractEuclideanComplex.build(faces, lengths)


def projective_plane_rp6(scale_sq: Fraction = Fraction(1)) -> AbstractEuclideanComplex:
    """The 6-vertex triangulation of the projective plane (icosahedron mod
    antipodes) made of right-isoceles triangles.

    Hypotenuse edges form a perfect matching in the dual Petersen graph;
    legs have squared length `scale_sq`, hypotenuses twice that.
    """
    faces = [
        (1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
        (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6),
    ]
    hyp = _hypotenuse_matching(faces)
    lengths = {}
    for f in faces:
        for e in combinations(f, 2):
            lengths[frozenset(e)] = 2 * scale_sq if frozenset(e) in hyp else scale_sq
    return AbstractEuclideanComplex.build(faces, lengths)


def _hypotenuse_matching(faces) -> set:
    """Edges marked so that every face contains exactly one marked edge
    (a perfect matching in the dual graph); found by backtracking."""
    edges = sorted({frozenset(e) for f in faces for e in combinations(f, 2)}, key=sorted)
    face_sets = [frozenset(f) for f in faces]

    def backtrack(chosen: set, remaining: list) -> Optional[set]:
        uncovered = [f for f in face_sets if not any(e < f for e in chosen)]
        if not uncovered:
            return chosen
        target = uncovered[0]
        for e in remaining:
            if not e < target:
                continue
            touched = [f for f in face_sets if e < f]
            if any(any(c < f for c in chosen) for f in touched):
                continue
            result = backtrack(chosen | {e}, [r for r in remaining if r != e])
            if result is not None:
                return result
        return None

    out = backtrack(set(), edges)
    if out is None:
        raise ValueError("no one-hypotenuse-per-face edge marking exists")
    return out
