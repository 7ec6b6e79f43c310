"""Multiplicative invariants and their composition product.

A cone invariant assigns a ring value to every closed convex cone in every
ambient subspace, multiplicatively across orthogonal products; a polytope
invariant does the same for convex polytopes, translation-invariantly.
Composition follows the cell formula

    (F * G)(P) = sum over faces s of  F(normal cone of s in P) * G(open s),

with G(open s) expanded by inclusion-exclusion over the face lattice.
Evaluation on constructible elements is the linear extension over the
closed-cell expansion of the carrier.  Sources, targets and locations are
tracked symbolically and spot-checked numerically before composing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .cone import Cone, dual_in_subspace
from .element import Element, closed_expansion, support_dim
from .linalg import (
    IVec,
    dot,
    orthogonal_complement_basis,
    rank,
    row_space_basis,
    unit_vec,
)
from .polytope import Polytope
from .ringvalue import (
    Int,
    Poly,
    Rat,
    Real,
    RingValue,
    add,
    eq_within,
    is_zero,
    mul,
    neg,
    rv,
    substitute,
    tensor_embed,
    variable,
)
from .solid import McOptions, local_euler_cone, solid_angle_cone


def rv_pow(v: RingValue, n: int) -> RingValue:
    out: RingValue = Int(1)
    for _ in range(n):
        out = mul(out, v)
    return out


# -- ambient spaces -----------------------------------------------------------


@dataclass(frozen=True)
class Ambient:
    """An evaluation subspace: its dimension, and a rational basis when the
    subspace is concretely embedded (required by frame-relative data)."""

    dim: int
    basis: Optional[tuple[IVec, ...]] = None

    @staticmethod
    def standard(dim: int) -> "Ambient":
        return Ambient(dim, tuple(tuple(int(x) for x in unit_vec(i, dim)) for i in range(dim)))


def _sub_ambient(amb: Ambient, dirs: Sequence[IVec], coord_dim: int) -> Ambient:
    """Ambient orthogonal complement of span(dirs) inside amb."""
    d = rank(dirs)
    if amb.basis is None:
        return Ambient(amb.dim - d, None)
    basis = tuple(orthogonal_complement_basis(dirs, coord_dim, within=amb.basis))
    return Ambient(amb.dim - d, basis)


def _span_ambient(dirs: Sequence[IVec]) -> Ambient:
    basis = tuple(row_space_basis(dirs))
    return Ambient(len(basis), basis)


# -- objects ------------------------------------------------------------------


def _canonical_subspace(basis) -> tuple[IVec, ...]:
    return tuple(row_space_basis(list(basis)))


@dataclass(frozen=True)
class Obj:
    """Multiplicative function of subspaces: scalar^dim times [V inside W]."""

    scalar: RingValue = Int(1)
    subspace: Optional[tuple[IVec, ...]] = None  # None: no containment constraint

    @staticmethod
    def of(scalar) -> "Obj":
        scalar = rv(scalar)
        if isinstance(scalar, (Int, Rat)) and is_zero(scalar):
            return Obj(Int(1), ())  # 0^dim = [dim == 0] = indicator of {0}
        return Obj(scalar, None)

    @staticmethod
    def space(basis) -> "Obj":
        return Obj(Int(1), _canonical_subspace(basis))

    def value(self, amb: Ambient) -> RingValue:
        out = rv_pow(self.scalar, amb.dim)
        if self.subspace is not None:
            if amb.dim == 0:
                return out
            if amb.basis is None:
                raise ValueError("subspace-indicator object needs an embedded ambient")
            if not _contained_in_span(amb.basis, self.subspace):
                return Int(0)
        return out

    def value_on(self, dim: int) -> RingValue:
        """Value on a coordinate space of the given dimension."""
        if self.subspace is not None and dim > 0:
            return Int(0) if self.subspace == () else self.value(Ambient.standard(dim))
        return rv_pow(self.scalar, dim)

    def mul(self, other: "Obj") -> "Obj":
        scalar = mul(self.scalar, other.scalar)
        if self.subspace is None:
            sub = other.subspace
        elif other.subspace is None:
            sub = self.subspace
        else:
            sub = _intersect_spans(self.subspace, other.subspace)
        if isinstance(scalar, (Int, Rat)) and is_zero(scalar):
            return Obj(Int(1), ())
        return Obj(scalar, sub)

    def negated(self) -> "Obj":
        return Obj(neg(self.scalar), self.subspace)


def _contained_in_span(vectors, span_basis) -> bool:
    if not vectors:
        return True
    if not span_basis:
        return all(all(x == 0 for x in v) for v in vectors)
    base = list(span_basis)
    r0 = rank(base)
    return all(rank(base + [list(v)]) == r0 for v in vectors)


def _intersect_spans(b1, b2) -> tuple[IVec, ...]:
    if not b1 or not b2:
        return ()
    n = len(b1[0])
    # solve x in span(b1) and x in span(b2): kernel of [b1^T | -b2^T] coords
    from .linalg import kernel_basis

    m = [[b1[i][k] for i in range(len(b1))] + [-b2[j][k] for j in range(len(b2))] for k in range(n)]
    ker = kernel_basis(m, len(b1) + len(b2))
    vecs = []
    for coeffs in ker:
        x = [0] * n
        for c, v in zip(coeffs[: len(b1)], b1):
            for k in range(n):
                x[k] += c * v[k]
        vecs.append(tuple(x))
    return _canonical_subspace([v for v in vecs if any(v)])


def obj_equal(a: Obj, b: Obj, tol: float = 1e-12) -> bool:
    if (a.subspace is None) != (b.subspace is None):
        return False
    if a.subspace is not None and _canonical_subspace(a.subspace) != _canonical_subspace(b.subspace):
        return False
    return eq_within(a.scalar, b.scalar, tol)


class StarIncompatible(ValueError):
    pass


# -- invariants ---------------------------------------------------------------

_VALUE_CACHE: dict = {}


def clear_caches() -> None:
    _VALUE_CACHE.clear()


class ConeInvariant:
    key: str
    source: Obj
    target: Obj
    euclidean: bool = True

    def value_on_cone(self, cone: Cone, amb: Ambient, mc: McOptions) -> RingValue:
        raise NotImplementedError

    def cached_value(self, cone: Cone, amb: Ambient, mc: McOptions) -> RingValue:
        ck = (self.key, cone.ambient, cone.rays, cone.lines, amb, mc.samples, mc.seed)
        hit = _VALUE_CACHE.get(ck)
        if hit is None:
            hit = self.value_on_cone(cone, amb, mc)
            _VALUE_CACHE[ck] = hit
        return hit

    def open_cone_value(self, cone: Cone, amb: Ambient, mc: McOptions) -> RingValue:
        """Value on the relative interior, by inclusion-exclusion over faces."""
        d = cone.dim
        total: RingValue = Int(0)
        for f in cone.faces:
            total = add(total, mul(Int((-1) ** (d - f.dim)), self.cached_value(f, amb, mc)))
        return total


class PolytopeInvariant:
    key: str
    location: Obj

    def value_on_polytope(self, poly: Polytope, amb: Ambient, mc: McOptions) -> RingValue:
        raise NotImplementedError

    def cached_value(self, poly: Polytope, amb: Ambient, mc: McOptions) -> RingValue:
        ck = (self.key, poly.ambient, poly.hcone.rays, amb, mc.samples, mc.seed)
        hit = _VALUE_CACHE.get(ck)
        if hit is None:
            hit = self.value_on_polytope(poly, amb, mc)
            _VALUE_CACHE[ck] = hit
        return hit

    def open_polytope_value(self, poly: Polytope, amb: Ambient, mc: McOptions) -> RingValue:
        d = poly.dim
        total: RingValue = Int(0)
        for f in poly.faces:
            total = add(total, mul(Int((-1) ** (d - f.dim)), self.cached_value(f, amb, mc)))
        return total


Invariant = Union[ConeInvariant, PolytopeInvariant]


# -- atomic cone invariants ----------------------------------------------------


class EpsilonInv(ConeInvariant):
    key = "eps"
    source = Obj.of(1)
    target = Obj.of(1)

    def value_on_cone(self, cone, amb, mc):
        return Int(1)


class LocalEulerInv(ConeInvariant):
    key = "e"
    source = Obj.of(-1)
    target = Obj.of(1)

    def value_on_cone(self, cone, amb, mc):
        return Int(local_euler_cone(cone))


class ConicalVolumeInv(ConeInvariant):
    key = "U"
    source = Obj.of(1)
    target = Obj.of(0)

    def value_on_cone(self, cone, amb, mc):
        return solid_angle_cone(cone, amb.dim, mc).as_ring_value()


class DualVolumeInv(ConeInvariant):
    key = "W"
    source = Obj.of(0)
    target = Obj.of(1)

    def value_on_cone(self, cone, amb, mc):
        # absolute: dualize in the cone's own coordinate space
        return solid_angle_cone(cone.dual, cone.ambient, mc).as_ring_value()


class FrameOrderInv(ConeInvariant):
    """1 on cones that are nonnegative in the lexicographic frame order."""

    euclidean = False

    def __init__(self, frame: tuple[IVec, ...]):
        self.frame = tuple(tuple(u) for u in frame)
        self.key = f"Lframe{self.frame}"
        n = len(self.frame[0])
        perp = orthogonal_complement_basis(list(self.frame), n)
        self.source = Obj.space(perp)
        self.target = Obj.of(1)

    def value_on_cone(self, cone, amb, mc):
        return Int(1 if all(self._nonneg(g) for g in cone.generators) else 0)

    def _nonneg(self, v) -> bool:
        for u in self.frame:
            ip = dot(u, v)
            if ip > 0:
                return True
            if ip < 0:
                return False
        return True


class IdentityInv(ConeInvariant):
    def __init__(self, obj: Obj):
        self.obj = obj
        self.key = f"id({obj.scalar!r},{obj.subspace!r})"
        self.source = obj
        self.target = obj

    def value_on_cone(self, cone, amb, mc):
        return self.obj.value(amb)


class ScaledConeInv(ConeInvariant):
    def __init__(self, obj: Obj, inner: ConeInvariant):
        self.obj = obj
        self.inner = inner
        self.key = f"scale({obj.scalar!r},{obj.subspace!r},{inner.key})"
        self.source = obj.mul(inner.source)
        self.target = obj.mul(inner.target)
        self.euclidean = inner.euclidean and obj.subspace is None

    def value_on_cone(self, cone, amb, mc):
        factor = self.obj.value(amb)
        if is_zero(factor):
            return Int(0)
        return mul(factor, self.inner.cached_value(cone, amb, mc))


class InverseInv(ConeInvariant):
    """Precomposition with the duality involution: the groupoid inverse."""

    def __init__(self, inner: ConeInvariant):
        self.inner = inner
        self.key = f"inv({inner.key})"
        self.source = inner.target
        self.target = inner.source
        self.euclidean = inner.euclidean

    def value_on_cone(self, cone, amb, mc):
        extra = 0
        if amb.basis is None:
            if amb.dim < cone.ambient:
                raise NotImplementedError(
                    "inverse at a lower filtration stage needs an embedded ambient"
                )
            dual = cone.dual
            extra = amb.dim - cone.ambient  # virtual orthogonal padding
        elif rank(amb.basis) == cone.ambient:
            dual = cone.dual
        else:
            dual = dual_in_subspace(cone, amb.basis)
        val = self.inner.cached_value(dual, Ambient(amb.dim - extra, amb.basis), mc)
        if extra:
            val = mul(val, rv_pow(self.inner.source.scalar, extra))
        return val


class PrecomposeInteriorInv(ConeInvariant):
    """F composed with the interior involution."""

    def __init__(self, inner: ConeInvariant):
        self.inner = inner
        self.key = f"preI({inner.key})"
        self.source = inner.source  # not used for composition in suites
        self.target = inner.target

    def value_on_cone(self, cone, amb, mc):
        total: RingValue = Int(0)
        for f in cone.faces:
            total = add(total, mul(Int((-1) ** f.dim), self.inner.cached_value(f, amb, mc)))
        return total


class PrecomposeNegateInv(ConeInvariant):
    """F composed with the dilatation by -1."""

    def __init__(self, inner: ConeInvariant):
        self.inner = inner
        self.key = f"preneg({inner.key})"
        self.source = inner.source
        self.target = inner.target
        self.euclidean = inner.euclidean

    def value_on_cone(self, cone, amb, mc):
        return self.inner.cached_value(cone.negate(), amb, mc)


class TensorLiftConeInv(ConeInvariant):
    """Postcompose with the ring map into slot `pos` of a rank-r tensor ring."""

    def __init__(self, inner: ConeInvariant, tensor_rank: int, pos: int):
        self.inner = inner
        self.tensor_rank = tensor_rank
        self.pos = pos
        self.key = f"tlift({inner.key},{tensor_rank},{pos})"
        self.source = Obj(tensor_embed(inner.source.scalar, tensor_rank, pos), inner.source.subspace)
        self.target = Obj(tensor_embed(inner.target.scalar, tensor_rank, pos), inner.target.subspace)
        self.euclidean = inner.euclidean

    def value_on_cone(self, cone, amb, mc):
        return tensor_embed(self.inner.cached_value(cone, amb, mc), self.tensor_rank, self.pos)


class SpecializeConeInv(ConeInvariant):
    def __init__(self, inner: ConeInvariant, assignment: dict):
        self.inner = inner
        self.assignment = dict(assignment)
        items = ",".join(f"{k}={v!r}" for k, v in sorted(self.assignment.items()))
        self.key = f"spec({inner.key};{items})"
        self.source = Obj(substitute(inner.source.scalar, self.assignment), inner.source.subspace)
        self.target = Obj(substitute(inner.target.scalar, self.assignment), inner.target.subspace)
        self.euclidean = inner.euclidean

    def value_on_cone(self, cone, amb, mc):
        return substitute(self.inner.cached_value(cone, amb, mc), self.assignment)


class StarConeInv(ConeInvariant):
    """Composition F * G of two cone invariants (requires s(F) = t(G))."""

    def __init__(self, left: ConeInvariant, right: ConeInvariant):
        self.left = left
        self.right = right
        self.key = f"star({left.key},{right.key})"
        self.source = right.source
        self.target = left.target
        self.euclidean = left.euclidean and right.euclidean

    def value_on_cone(self, cone, amb, mc):
        total: RingValue = Int(0)
        for face in cone.faces:
            dirs = face.span_basis
            f_amb = _sub_ambient(amb, dirs, cone.ambient)
            nc = cone.normal_cone(face)
            fval = self.left.cached_value(nc, f_amb, mc)
            if is_zero(fval):
                continue
            gval = self.right.open_cone_value(face, _span_ambient(dirs), mc)
            total = add(total, mul(fval, gval))
        return total


# -- atomic polytope invariants -------------------------------------------------


class EulerInv(PolytopeInvariant):
    key = "chi"
    location = Obj.of(1)

    def value_on_polytope(self, poly, amb, mc):
        return Int(1)


class VolumeInv(PolytopeInvariant):
    key = "vol"
    location = Obj.of(0)

    def value_on_polytope(self, poly, amb, mc):
        if poly.dim < amb.dim:
            return Int(0)
        exact, approx = poly.volume_value()
        if exact is not None:
            return Rat(exact)
        return Real(approx)


class ScaledPolyInv(PolytopeInvariant):
    def __init__(self, obj: Obj, inner: PolytopeInvariant):
        self.obj = obj
        self.inner = inner
        self.key = f"scale({obj.scalar!r},{obj.subspace!r},{inner.key})"
        self.location = obj.mul(inner.location)

    def value_on_polytope(self, poly, amb, mc):
        factor = self.obj.value(amb)
        if is_zero(factor):
            return Int(0)
        return mul(factor, self.inner.cached_value(poly, amb, mc))


class TensorLiftPolyInv(PolytopeInvariant):
    def __init__(self, inner: PolytopeInvariant, tensor_rank: int, pos: int):
        self.inner = inner
        self.tensor_rank = tensor_rank
        self.pos = pos
        self.key = f"tlift({inner.key},{tensor_rank},{pos})"
        self.location = Obj(tensor_embed(inner.location.scalar, tensor_rank, pos), inner.location.subspace)

    def value_on_polytope(self, poly, amb, mc):
        return tensor_embed(self.inner.cached_value(poly, amb, mc), self.tensor_rank, self.pos)


class SpecializePolyInv(PolytopeInvariant):
    def __init__(self, inner: PolytopeInvariant, assignment: dict):
        self.inner = inner
        self.assignment = dict(assignment)
        items = ",".join(f"{k}={v!r}" for k, v in sorted(self.assignment.items()))
        self.key = f"spec({inner.key};{items})"
        self.location = Obj(substitute(inner.location.scalar, self.assignment), inner.location.subspace)

    def value_on_polytope(self, poly, amb, mc):
        return substitute(self.inner.cached_value(poly, amb, mc), self.assignment)


class PrecomposeInteriorPolyInv(PolytopeInvariant):
    def __init__(self, inner: PolytopeInvariant):
        self.inner = inner
        self.key = f"preI({inner.key})"
        self.location = inner.location

    def value_on_polytope(self, poly, amb, mc):
        total: RingValue = Int(0)
        for f in poly.faces:
            total = add(total, mul(Int((-1) ** f.dim), self.inner.cached_value(f, amb, mc)))
        return total


class PrecomposeDilatePolyInv(PolytopeInvariant):
    def __init__(self, inner: PolytopeInvariant, factor: Fraction):
        self.inner = inner
        self.factor = Fraction(factor)
        self.key = f"predil({inner.key},{self.factor})"
        self.location = inner.location

    def value_on_polytope(self, poly, amb, mc):
        scaled = poly.scale(self.factor)
        return self.inner.cached_value(scaled, amb, mc)


class StarPolyInv(PolytopeInvariant):
    """Transport of a polytope invariant by a cone invariant."""

    def __init__(self, left: ConeInvariant, right: PolytopeInvariant):
        self.left = left
        self.right = right
        self.key = f"star({left.key},{right.key})"
        self.location = left.target

    def value_on_polytope(self, poly, amb, mc):
        total: RingValue = Int(0)
        for face in poly.faces:
            dirs = face.dir_basis
            f_amb = _sub_ambient(amb, dirs, poly.ambient)
            nc = poly.normal_cone(face)
            fval = self.left.cached_value(nc, f_amb, mc)
            if is_zero(fval):
                continue
            gval = self.right.open_polytope_value(face, _span_ambient(dirs) if dirs else Ambient(0, ()), mc)
            total = add(total, mul(fval, gval))
        return total


# -- public engine operations ---------------------------------------------------


def check_compatible(left: ConeInvariant, right: Invariant, dims: int = 3, mc: McOptions = McOptions()) -> None:
    """Symbolic source/target match plus numeric spot checks on R^0..R^dims."""
    right_obj = right.target if isinstance(right, ConeInvariant) else right.location
    if not obj_equal(left.source, right_obj):
        raise StarIncompatible(
            f"source {left.source} of {left.key} differs from {right_obj} of {right.key}"
        )
    if left.source.subspace is not None:
        return  # numeric probes on coordinate spaces are meaningless here
    for n in range(dims + 1):
        amb = Ambient.standard(n)
        sval = left.cached_value(Cone.full_space(n), amb, mc)
        if isinstance(right, ConeInvariant):
            tval = right.cached_value(Cone.origin(n), amb, mc)
        else:
            tval = right.cached_value(Polytope.from_points([(0,) * n]), amb, mc)
        if not eq_within(sval, tval, 1e-9):
            raise StarIncompatible(
                f"compatibility fails in dimension {n}: {left.key} source value {sval!r}"
                f" vs {right.key} value {tval!r}"
            )


def star(left: ConeInvariant, right: Invariant, check: bool = True) -> Invariant:
    if check:
        check_compatible(left, right)
    if isinstance(right, ConeInvariant):
        return StarConeInv(left, right)
    return StarPolyInv(left, right)


def inverse(f: ConeInvariant) -> ConeInvariant:
    return InverseInv(f)


def scale(a, f: Invariant) -> Invariant:
    obj = a if isinstance(a, Obj) else Obj.of(a)
    if isinstance(f, ConeInvariant):
        return ScaledConeInv(obj, f)
    return ScaledPolyInv(obj, f)


def identity(a) -> ConeInvariant:
    obj = a if isinstance(a, Obj) else Obj.of(a)
    return IdentityInv(obj)


def specialize(f: Invariant, assignment: dict) -> Invariant:
    if isinstance(f, ConeInvariant):
        return SpecializeConeInv(f, assignment)
    return SpecializePolyInv(f, assignment)


def tensor_lift(f: Invariant, tensor_rank: int, pos: int) -> Invariant:
    if isinstance(f, ConeInvariant):
        return TensorLiftConeInv(f, tensor_rank, pos)
    return TensorLiftPolyInv(f, tensor_rank, pos)


class KindMismatch(ValueError):
    pass


def eval_element(f: Invariant, xi: Element, ambient_dim: Optional[int] = None, mc: McOptions = McOptions()) -> RingValue:
    """Linear extension of an invariant over the closed-cell expansion."""
    if ambient_dim is None:
        ambient_dim = xi.complex.ambient
    if support_dim(xi) > ambient_dim:
        raise KindMismatch(
            f"support dimension {support_dim(xi)} exceeds the stage {ambient_dim}"
        )
    conical = xi.complex.conical
    if conical != isinstance(f, ConeInvariant):
        raise KindMismatch("invariant kind does not match the carrier kind")
    if ambient_dim == xi.complex.ambient:
        amb = Ambient.standard(xi.complex.ambient)
    else:
        amb = Ambient(ambient_dim, None)
    coeffs = closed_expansion(xi)
    total: RingValue = Int(0)
    for i, c in coeffs.items():
        total = add(total, mul(Int(c), f.cached_value(xi.complex.cells[i], amb, mc)))
    return total


def eval_convex(f: Invariant, cell, ambient_dim: Optional[int] = None, mc: McOptions = McOptions()) -> RingValue:
    if ambient_dim is None:
        ambient_dim = cell.ambient
    amb = Ambient.standard(cell.ambient) if ambient_dim == cell.ambient else Ambient(ambient_dim, None)
    return f.cached_value(cell, amb, mc)


# -- named builders ----------------------------------------------------------


EPS = EpsilonInv()
LOCAL_EULER = LocalEulerInv()
CONICAL_VOLUME = ConicalVolumeInv()
DUAL_VOLUME = DualVolumeInv()
CHI = EulerInv()
VOLUME = VolumeInv()
ZERO_POLY = scale(0, CHI)
ZERO_CONE = scale(0, EPS)


def build(name: str, **kwargs) -> Invariant:
    """Construct a named invariant family.

    Names: chi, vol, eps, e, U, W, zero, zero_cone, intrinsic,
    conical_intrinsic, S, T, dehn_S, dehn_T, K, T_chain, S_chain, L_frame,
    frame_star.
    """
    x, y = variable("x"), variable("y")
    if name == "chi":
        return CHI
    if name == "vol":
        return VOLUME
    if name == "eps":
        return EPS
    if name == "e":
        return LOCAL_EULER
    if name == "U":
        return CONICAL_VOLUME
    if name == "W":
        return DUAL_VOLUME
    if name == "zero":
        return ZERO_POLY
    if name == "zero_cone":
        return ZERO_CONE
    if name == "intrinsic":
        return star(DUAL_VOLUME, scale(x, VOLUME), check=False)
    if name == "conical_intrinsic":
        return star(DUAL_VOLUME, scale(x, CONICAL_VOLUME), check=False)
    if name == "S":
        return star(scale(x, DUAL_VOLUME), scale(y, VOLUME), check=False)
    if name == "T":
        return star(scale(x, DUAL_VOLUME), scale(y, CONICAL_VOLUME), check=False)
    if name == "dehn_S":
        return star(
            tensor_lift(scale(x, DUAL_VOLUME), 2, 0),
            tensor_lift(scale(y, VOLUME), 2, 1),
            check=False,
        )
    if name == "dehn_T":
        return star(
            tensor_lift(scale(x, DUAL_VOLUME), 2, 0),
            tensor_lift(scale(y, CONICAL_VOLUME), 2, 1),
            check=False,
        )
    if name == "K":
        return star(tensor_lift(CONICAL_VOLUME, 2, 0), tensor_lift(DUAL_VOLUME, 2, 1), check=False)
    if name == "T_chain":
        return t_chain(kwargs["vars"])
    if name == "S_chain":
        return s_chain(kwargs["vars"])
    if name == "L_frame":
        return FrameOrderInv(_check_frame(kwargs["frame"]))
    if name == "frame_star":
        # Germs at the iterated *maximizing* faces are lexicographically
        # nonpositive in the frame order, so the transport that reproduces
        # the maximization route tests positivity for the negated frame.
        frame = _check_frame(kwargs["frame"])
        neg_frame = tuple(tuple(-x for x in u) for u in frame)
        lu = FrameOrderInv(neg_frame)
        xow = Obj(variable("x"), _canonical_subspace(frame))
        return star(scale(xow, lu), VOLUME, check=False)
    raise ValueError(f"unknown invariant name: {name}")


class FrameError(ValueError):
    pass


def _check_frame(frame) -> tuple[IVec, ...]:
    frame = tuple(tuple(u) for u in frame)
    for i, u in enumerate(frame):
        for j, v in enumerate(frame):
            expected = 1 if i == j else 0
            if dot(u, v) != expected:
                raise FrameError("frame must be orthonormal with exact rational Gram")
    return frame


def _pair_var(base: str, i: int) -> str:
    return f"{base}{i}"


def t_chain(names: Sequence[str]) -> ConeInvariant:
    """T^{x0,...,xr}: iterated composition of tensor-lifted T factors."""
    r = len(names) - 1
    if r == 0:
        return identity(Obj(variable(names[0]), None))
    if r == 1:
        return _t_pair(names[0], names[1])
    rank = r
    total = tensor_lift(_t_pair(names[0], names[1]), rank, 0)
    for i in range(1, r):
        factor = tensor_lift(_t_pair(names[i], names[i + 1]), rank, i)
        total = StarConeInv(total, factor)
    return total


def _t_pair(a: str, b: str) -> ConeInvariant:
    return star(scale(_signed_var(a), DUAL_VOLUME), scale(_signed_var(b), CONICAL_VOLUME), check=False)


def s_chain(names: Sequence[str]) -> PolytopeInvariant:
    r = len(names) - 1
    if r < 1:
        raise ValueError("an S family needs at least two indeterminates")
    s_pair = star(
        scale(_signed_var(names[-2]), DUAL_VOLUME), scale(_signed_var(names[-1]), VOLUME), check=False
    )
    if r == 1:
        return s_pair
    rank = r
    total = tensor_lift(_t_pair(names[0], names[1]), rank, 0)
    for i in range(1, r - 1):
        total = StarConeInv(total, tensor_lift(_t_pair(names[i], names[i + 1]), rank, i))
    return StarPolyInv(total, tensor_lift(s_pair, rank, rank - 1))


def _signed_var(name: str):
    if name.startswith("-"):
        return neg(variable(name[1:]))
    return variable(name)


# -- frame invariants, direct route -------------------------------------------


def frame_invariant_direct(frame, poly: Polytope) -> RingValue:
    """Iterated face maximization along an orthonormal frame, then the
    (d - k)-dimensional volume of the final face (d = ambient dimension)."""
    frame = _check_frame(frame)
    cur = poly
    for u in frame:
        vals = [dot(u, v) for v in cur.vertices]
        m = max(vals)
        verts = [v for v, val in zip(cur.vertices, vals) if val == m]
        cur = Polytope.from_points(verts)
    if cur.dim < poly.ambient - len(frame):
        return Rat(Fraction(0))
    exact, approx = cur.volume_value()
    return Rat(exact) if exact is not None else Real(approx)


def frame_star_coefficient(frame, poly: Polytope, mc: McOptions = McOptions()) -> RingValue:
    """Coefficient of x^k in the transported volume; equals the direct route."""
    frame = _check_frame(frame)
    inv = build("frame_star", frame=frame)
    val = eval_convex(inv, poly, poly.ambient, mc)
    k = len(frame)
    if isinstance(val, Poly):
        return val.coefficient((("x", k),)) if k else val.coefficient(())
    return val if k == 0 else Int(0)
