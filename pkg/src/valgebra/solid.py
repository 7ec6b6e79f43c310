"""The basic cone valuations: yes/no, local Euler, conical and dual volume,
and the duality involution on conical constructible elements.

Solid angles are exact through ambient dimension 3 (sector angles and
Girard's spherical excess, both computed from rational Gram data) and
estimated by counter-based Monte Carlo above that.  Values are normalized
so the full sphere has measure 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .angle import Angle, angle_from_gram
from .cellcomplex import build_complex, cell_relint_point, split_cells
from .cone import Cone
from .element import Element, _make, closed_expansion, transfer, triangulated, value_at
from .linalg import dot, primitive_signed, rank, zero_vec
from .ringvalue import Rat, Real, RingValue

_METHOD_ORDER = ("exact0d", "exact1d", "planar", "girard", "monte_carlo")


@dataclass(frozen=True)
class SolidAngle:
    """Normalized spherical measure with an honest uncertainty report."""

    value: float
    half_width: float
    method: str
    exact: Optional[Fraction] = None

    def as_ring_value(self) -> RingValue:
        if self.exact is not None:
            return Rat(self.exact)
        return Real(self.value, max(self.half_width, 1e-12))

    def is_exact(self) -> bool:
        return self.exact is not None


@dataclass(frozen=True)
class McOptions:
    samples: int = 10**6
    seed: int = 0


def _combine(parts: list[tuple[Fraction, SolidAngle]]) -> SolidAngle:
    exact: Optional[Fraction] = Fraction(0)
    total = 0.0
    hw = 0.0
    method = "exact0d"
    for coeff, sa in parts:
        total += float(coeff) * sa.value
        hw += abs(float(coeff)) * sa.half_width
        if _METHOD_ORDER.index(sa.method) > _METHOD_ORDER.index(method):
            method = sa.method
        if exact is not None:
            exact = exact + coeff * sa.exact if sa.exact is not None else None
    if exact is not None:
        total = float(exact)
    return SolidAngle(total, hw, method, exact)


class NonConicalError(ValueError):
    pass


def _require_conical(xi: Element) -> None:
    if not xi.complex.conical:
        raise NonConicalError("operation requires a conical carrier")


# -- the four basic valuations on convex cones -------------------------------


def epsilon_cone(cone: Cone) -> int:
    return 1  # every convex cone contains the origin


def local_euler_cone(cone: Cone) -> int:
    """chi(P, P - 0): nonzero only on vector subspaces."""
    if cone.rays:
        return 0
    return (-1) ** cone.dim


def solid_angle_cone(cone: Cone, ambient_dim: Optional[int] = None, mc: McOptions = McOptions()) -> SolidAngle:
    """Normalized measure of cone intersect the unit sphere of the ambient.

    Conventions: in ambient dimension 0 the nonempty cone has measure 1;
    any cone of positive codimension has measure 0.
    """
    if ambient_dim is None:
        ambient_dim = cone.ambient
    d = cone.dim
    if d > ambient_dim:
        raise ValueError("cone dimension exceeds the ambient dimension")
    if ambient_dim == 0:
        return SolidAngle(1.0, 0.0, "exact0d", Fraction(1))
    if d < ambient_dim:
        return SolidAngle(0.0, 0.0, "exact0d", Fraction(0))
    # full-dimensional: split off the lineality space (measure-preserving)
    m = ambient_dim - (d - _pointed_dim(cone))
    return _pointed_solid_angle(cone, m, mc)


def _pointed_dim(cone: Cone) -> int:
    return rank(cone.rays) if cone.rays else 0


def _pointed_solid_angle(cone: Cone, m: int, mc: McOptions) -> SolidAngle:
    """Solid angle of the pointed part, full-dimensional in an m-space."""
    rays = cone.rays
    if m == 0:
        return SolidAngle(1.0, 0.0, "exact0d", Fraction(1))
    if m == 1:
        return SolidAngle(0.5, 0.0, "exact1d", Fraction(1, 2))
    if m == 2:
        u, v = rays
        ang = angle_from_gram(dot(u, u), dot(v, v), dot(u, v))
        q = ang.over_two_pi()
        if ang.is_exact():
            return SolidAngle(float(q), 0.0, "planar", Fraction(q))
        return SolidAngle(q, 0.0, "planar", None)
    if m == 3:
        pointed = Cone.from_generators(rays, cone.ambient)
        parts = []
        for simplex_rays in pointed.pull_triangulation():
            parts.append((Fraction(1), _girard(simplex_rays)))
        return _combine(parts)
    return _mc_volume([(Fraction(1), cone)], cone.ambient, mc)


def _girard(rays: Sequence) -> SolidAngle:
    """Spherical-excess area of a simplicial 3-cone from its Gram data."""
    a, b, c = rays
    g = {
        ("aa"): dot(a, a), ("bb"): dot(b, b), ("cc"): dot(c, c),
        ("ab"): dot(a, b), ("ac"): dot(a, c), ("bc"): dot(b, c),
    }
    angles = []
    for e, f1, f2 in (("aa", "ab", "ac"), ("bb", "ab", "bc"), ("cc", "ac", "bc")):
        other = {"aa": ("bb", "cc"), "bb": ("aa", "cc"), "cc": ("aa", "bb")}[e]
        num = g[e] * g[{"aa": "bc", "bb": "ac", "cc": "ab"}[e]] - g[f1] * g[f2]
        den = (g[e] * g[other[0]] - g[f1] * g[f1]) * (g[e] * g[other[1]] - g[f2] * g[f2])
        cos2 = Fraction(num * num, den)
        angles.append(Angle.from_cos2(cos2, num < 0))
    total = angles[0] + angles[1] + angles[2]
    if total.is_exact():
        q = (total.pi_mult - 1) / 4
        return SolidAngle(float(q), 0.0, "girard", q)
    from mpmath import mp

    return SolidAngle(float((total.value - float(mp.pi)) / (4 * float(mp.pi))), 0.0, "girard", None)


# -- Monte Carlo for ambient dimension >= 4 ----------------------------------

_MC_CHUNK = 1 << 14


def _mc_volume(parts: list[tuple[Fraction, Cone]], ambient: int, mc: McOptions) -> SolidAngle:
    """Counter-based Monte Carlo estimate of sum_i c_i * U(cone_i).

    Chunk k of samples is drawn from Philox keyed (seed, counter=k), so the
    result is bit-identical for a fixed (seed, samples) pair regardless of
    scheduling.  Membership tests run in floating point; this is quadrature
    measurement, with the error folded into the reported half-width.
    """
    import numpy as np

    if mc.samples <= 0:
        raise ValueError("Monte Carlo requested with a zero sample budget")
    tests = []
    for coeff, cone in parts:
        fac = np.array(cone.facet_normals, dtype=float) if cone.facet_normals else None
        eqs = np.array(cone.span_normals, dtype=float) if cone.span_normals else None
        tests.append((float(coeff), fac, eqs))
    total = 0.0
    total_sq = 0.0
    n_done = 0
    chunk_idx = 0
    while n_done < mc.samples:
        n = min(_MC_CHUNK, mc.samples - n_done)
        bitgen = np.random.Philox(key=mc.seed, counter=[0, 0, 0, chunk_idx])
        rng = np.random.Generator(bitgen)
        x = rng.standard_normal((ambient, n))
        norms = np.sqrt((x * x).sum(axis=0))
        norms[norms == 0] = 1.0
        x /= norms
        vals = np.zeros(n)
        for coeff, fac, eqs in tests:
            mask = np.ones(n, dtype=bool)
            if fac is not None:
                mask &= (fac @ x <= 1e-12).all(axis=0)
            if eqs is not None:
                mask &= (np.abs(eqs @ x) <= 1e-12).all(axis=0)
            vals += coeff * mask
        total += vals.sum()
        total_sq += (vals * vals).sum()
        n_done += n
        chunk_idx += 1
    mean = total / mc.samples
    var = max(total_sq / mc.samples - mean * mean, 0.0)
    hw = 3.0 * (var / mc.samples) ** 0.5
    return SolidAngle(mean, hw, "monte_carlo", None)


# -- element-level valuations -------------------------------------------------


def epsilon(xi: Element) -> int:
    """1 or 0 according to whether the origin lies in the element."""
    _require_conical(xi)
    return value_at(xi, zero_vec(xi.complex.ambient))


def local_euler(xi: Element) -> int:
    _require_conical(xi)
    coeffs = closed_expansion(xi)
    return sum(c * local_euler_cone(xi.complex.cells[i]) for i, c in coeffs.items())


def conical_volume(xi: Element, ambient_dim: Optional[int] = None, mc: McOptions = McOptions()) -> SolidAngle:
    _require_conical(xi)
    if ambient_dim is None:
        ambient_dim = xi.complex.ambient
    if ambient_dim > xi.complex.ambient:
        # every cell has positive codimension at that filtration stage
        return SolidAngle(0.0, 0.0, "exact0d", Fraction(0))
    coeffs = closed_expansion(xi)
    if ambient_dim <= 3:
        parts = [
            (Fraction(c), solid_angle_cone(xi.complex.cells[i], ambient_dim, mc))
            for i, c in coeffs.items()
        ]
        return _combine(parts)
    if ambient_dim != xi.complex.ambient:
        raise NotImplementedError(
            "Monte Carlo conical volume needs the stage to match the carrier space"
        )
    full = [
        (Fraction(c), xi.complex.cells[i])
        for i, c in coeffs.items()
        if xi.complex.cells[i].dim == ambient_dim
    ]
    if not full:
        return SolidAngle(0.0, 0.0, "exact0d", Fraction(0))
    return _mc_volume(full, xi.complex.ambient, mc)


def dualize(xi: Element) -> Element:
    """Duality involution on conical elements.

    The element is written as an integer combination of closed conical
    simplices over a conical triangulation, each simplex is replaced by its
    dual cone, and the result is renormalized onto the cell complex cut out
    by all facet hyperplanes of the dual cones.
    """
    _require_conical(xi)
    tri = triangulated(xi)
    coeffs = closed_expansion(tri)
    if not coeffs:
        return xi
    duals = [(c, tri.complex.cells[i].dual) for i, c in coeffs.items()]
    keys = set()
    for _, cone in duals:
        for n in cone.facet_normals:
            keys.add(primitive_signed(n))
        for n in cone.span_normals:
            keys.add(primitive_signed(n))
    cells = set()
    for _, cone in duals:
        cells.update(cone.faces)
    pieces = split_cells(sorted(cells, key=lambda c: (c.dim, c.rays, c.lines)), sorted(keys))
    k = build_complex(pieces, xi.complex.ambient, True)
    wm: dict[int, int] = {}
    for idx, cell in enumerate(k.cells):
        z = cell_relint_point(cell)
        w = sum(c for c, cone in duals if cone.contains(z))
        if w:
            wm[idx] = w
    return _make(k, wm)


def dual_volume(xi: Element, ambient_dim: Optional[int] = None, mc: McOptions = McOptions()) -> SolidAngle:
    """W = U after dualizing; computed termwise on the closed expansion.

    The dual volume is absolute (independent of the ambient space), so it
    is always evaluated in the carrier's own coordinate space; the
    `ambient_dim` argument only participates in filtration bookkeeping.
    """
    _require_conical(xi)
    amb = xi.complex.ambient
    coeffs = closed_expansion(xi)
    if amb <= 3:
        parts = [
            (Fraction(c), solid_angle_cone(xi.complex.cells[i].dual, amb, mc))
            for i, c in coeffs.items()
        ]
        return _combine(parts)
    full = [
        (Fraction(c), xi.complex.cells[i].dual)
        for i, c in coeffs.items()
        if xi.complex.cells[i].dual.dim == amb
    ]
    if not full:
        return SolidAngle(0.0, 0.0, "exact0d", Fraction(0))
    return _mc_volume(full, amb, mc)
