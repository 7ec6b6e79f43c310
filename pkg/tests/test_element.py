"""Constructible elements: indicators, involution, boundary, pushforward."""

from fractions import Fraction

import pytest

from valgebra import (
    AffineMap,
    CoordinateProjection,
    Cone,
    add,
    closure_coefficients,
    delta,
    dilate,
    equals,
    euler_char,
    external_product,
    from_cone,
    from_polytope,
    interior_involution,
    pushforward,
    scale,
    subtract,
    support_dim,
    value_at,
    zero_element,
)
from valgebra.cellcomplex import complex_from_cell, triangulate
from valgebra.element import FiltrationError, indicator, transfer
from valgebra.polytope import Polytope
from valgebra.sampling import (
    random_isometry,
    random_polytopal_element,
    random_polytope,
    stream_rng,
)

SQUARE = Polytope.from_points([(0, 0), (1, 0), (0, 1), (1, 1)])
SEGMENT = Polytope.from_points([(0,), (1,)])


def test_indicator_matches_membership():
    xi = from_polytope(SQUARE)
    assert value_at(xi, (Fraction(1, 2), Fraction(1, 2))) == 1
    assert value_at(xi, (Fraction(1, 2), Fraction(0))) == 1
    assert value_at(xi, (2, 2)) == 0
    seg = from_polytope(SEGMENT)
    weights = {SEGMENT.ambient: None}
    dims = [seg.complex.cells[i].dim for i, w in seg.weights]
    assert sorted(dims) == [0, 0, 1] and all(w == 1 for _, w in seg.weights)


def test_empty_input_gives_zero():
    assert from_polytope(None).is_zero()


def test_triangulation_coefficients_against_link_oracle():
    # oracle: over a triangulated complex the closed-cell coefficient is
    # 1 - chi(link), with chi(link) = alternating sum over proper cofaces
    k = triangulate(complex_from_cell(SQUARE))
    coeffs = closure_coefficients(k)
    dims = k.dims()
    contains = [set(k.face_indices[i]) for i in range(len(k.cells))]
    for j in range(len(k.cells)):
        chi_link = 0
        for i in range(len(k.cells)):
            if i != j and j in contains[i]:
                chi_link += (-1) ** (dims[i] - dims[j] - 1)
        assert coeffs.get(j, 0) == 1 - chi_link
    # and the re-expansion over closed cells returns the indicator
    from valgebra.element import from_closed_weights

    assert equals(from_closed_weights(k, coeffs), indicator(k))


def test_interior_involution_examples():
    seg = from_polytope(SEGMENT)
    i_seg = interior_involution(seg)
    open_weights = {seg.complex.cells[i].dim: w for i, w in i_seg.weights}
    assert open_weights == {1: -1}  # I(closed segment) = -(open segment)
    pt = from_polytope(Polytope.from_points([(0,)]))
    assert equals(interior_involution(pt), pt)
    for i in range(40):
        rng = stream_rng(37, "invol", i)
        xi = random_polytopal_element(rng, rng.randint(1, 3))
        assert equals(interior_involution(interior_involution(xi)), xi)


def test_delta_examples():
    sq = from_polytope(SQUARE)
    bdry = delta(sq, 2)
    assert support_dim(bdry) == 1
    assert euler_char(bdry) == 0
    for x, want in (((Fraction(1, 2), Fraction(0)), 1), ((Fraction(1, 2), Fraction(1, 2)), 0)):
        assert value_at(bdry, x) == want
    assert delta(bdry, 1).is_zero()
    pt = from_polytope(Polytope.from_points([(0,)]))
    assert [w for _, w in delta(pt, 1).weights] == [2]
    with pytest.raises(FiltrationError):
        delta(sq, 1)


def test_euler_characteristic_conventions():
    assert euler_char(from_polytope(SEGMENT)) == 1
    open_seg = scale(interior_involution(from_polytope(SEGMENT)), -1)
    assert euler_char(open_seg) == -1
    for i in range(30):
        rng = stream_rng(41, "chiI", i)
        xi = random_polytopal_element(rng, rng.randint(1, 3))
        assert euler_char(interior_involution(xi)) == euler_char(xi)


def test_valuation_law_random_pairs():
    # ind(A) + ind(B) - ind(A n B) is the union indicator: checked pointwise
    # in all dimensions, and as an exact element identity in the plane
    for i in range(15):
        rng = stream_rng(43, "valuation", i)
        dim = rng.randint(1, 3)
        a = random_polytope(rng, dim)
        b = random_polytope(rng, dim)
        inter = a.intersect(b)
        ia, ib = from_polytope(a), from_polytope(b)
        iab = from_polytope(inter)
        for _ in range(10):
            x = tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 3)) for _ in range(dim))
            want = 1 if (a.contains(x) or b.contains(x)) else 0
            got = value_at(ia, x) + value_at(ib, x) - value_at(iab, x)
            assert got == want
        if dim <= 2:
            union = subtract(add(ia, ib), iab)
            y = a.barycenter()
            assert value_at(union, y) == 1


def test_hyperplane_cut_relation():
    # the indicator valuation satisfies the cut relation: exact element
    # identity in dimensions 1-2, pointwise sampling in dimension 3
    for i in range(12):
        rng = stream_rng(47, "cut", i)
        dim = rng.randint(1, 3)
        p = random_polytope(rng, dim, full=True)
        normal = tuple(rng.randint(-3, 3) for _ in range(dim))
        if not any(normal):
            continue
        vals = [sum(n * x for n, x in zip(normal, v)) for v in p.vertices]
        c = sorted(vals)[len(vals) // 2]
        plus = p.intersect_halfspace(normal, c)
        minus = p.intersect_halfspace(tuple(-x for x in normal), -c)
        slice_ = plus.intersect(minus) if plus and minus else None
        if plus is None or minus is None or slice_ is None:
            continue
        parts = (from_polytope(plus), from_polytope(minus), from_polytope(slice_))
        if dim <= 2:
            rhs = subtract(add(parts[0], parts[1]), parts[2])
            assert equals(from_polytope(p), rhs)
        else:
            for _ in range(10):
                x = tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 3)) for _ in range(dim))
                want = 1 if p.contains(x) else 0
                got = value_at(parts[0], x) + value_at(parts[1], x) - value_at(parts[2], x)
                assert got == want


def test_external_product():
    seg = from_polytope(SEGMENT)
    prod = external_product(seg, seg)
    assert equals(prod, from_polytope(SQUARE))
    pt = from_polytope(Polytope.from_points([(0,)]))
    lifted = external_product(seg, pt)
    assert support_dim(lifted) == 1 and lifted.complex.ambient == 2
    assert equals(
        interior_involution(prod),
        external_product(interior_involution(seg), interior_involution(seg)),
    )


def test_pushforward_isometry_relabels():
    for i in range(10):
        rng = stream_rng(53, "iso", i)
        xi = random_polytopal_element(rng, 2)
        rot, shift = random_isometry(rng, 2)
        f = AffineMap(tuple(rot), tuple(shift))
        moved = pushforward(f, xi)
        assert euler_char(moved) == euler_char(xi)
        assert support_dim(moved) == support_dim(xi)
        back = AffineMap(
            tuple(zip(*rot)), tuple(-sum(r * s for r, s in zip(col, shift)) for col in zip(*rot))
        )
        assert equals(pushforward(back, moved), xi)


def test_pushforward_projection_examples():
    proj = CoordinateProjection((0,))
    sq = from_polytope(SQUARE)
    assert equals(pushforward(proj, sq), from_polytope(SEGMENT))
    circle = delta(sq, 2)
    pc = pushforward(proj, circle)
    expected = {(0,): 1, (1,): 1, (0, 1): 2}
    got = {}
    for i, w in pc.weights:
        cell = pc.complex.cells[i]
        got[tuple(sorted(int(v[0]) for v in cell.vertices))] = w
    assert got == expected


def test_pushforward_rejects_noninjective_affine():
    squash = AffineMap(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0))), (0, 0))
    with pytest.raises(ValueError):
        pushforward(squash, from_polytope(SQUARE))


def test_dilate():
    ray = from_cone(Cone.from_generators([(1,)], 1))
    flipped = dilate(ray, -1)
    assert equals(flipped, from_cone(Cone.from_generators([(-1,)], 1)))
    assert equals(dilate(ray, 2), ray)  # cones only feel the sign
    seg = from_polytope(SEGMENT)
    assert equals(dilate(seg, 2), from_polytope(Polytope.from_points([(0,), (2,)])))
    with pytest.raises(ValueError):
        dilate(seg, 0)


def test_singularity_remark_three_halflines():
    # a cone whose deleted germ is a 1-manifold with chi(M) = 3 points
    rays = [Cone.from_generators([g], 2) for g in ((1, 0), (-1, 2), (-1, -3))]
    origin = from_cone(Cone.origin(2))
    p = subtract(
        add(add(from_cone(rays[0]), from_cone(rays[1])), from_cone(rays[2])),
        scale(origin, 2),
    )
    m = 1
    lhs = subtract(p, scale(interior_involution(p), (-1) ** m))
    chi_sphere0, chi_m = 2, 3
    rhs = scale(origin, chi_sphere0 - chi_m)
    assert equals(lhs, rhs)


def test_equals_distinguishes():
    a = from_polytope(SQUARE)
    b = from_polytope(Polytope.from_points([(0, 0), (1, 0), (0, 1)]))
    assert not equals(a, b)
    assert equals(subtract(a, a), zero_element(2, conical=False))
