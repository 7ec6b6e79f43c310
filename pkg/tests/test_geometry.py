"""Polytopes, complexes, refinement and triangulation."""

from fractions import Fraction

import pytest

from valgebra import (
    build_complex,
    complex_from_cell,
    is_refinement,
    minkowski_sum,
    overlay,
    refine_common,
    triangulate,
    validate_complex,
)
from valgebra.polytope import Polytope, UnboundedError
from valgebra.sampling import random_polytope, stream_rng


def test_square_face_counts_and_euler():
    sq = Polytope.from_points([(0, 0), (1, 0), (0, 1), (1, 1)])
    counts = {}
    for f in sq.faces:
        counts[f.dim] = counts.get(f.dim, 0) + 1
    assert counts == {0: 4, 1: 4, 2: 1}


def test_euler_relation_random_3_polytopes():
    for i in range(15):
        rng = stream_rng(29, "euler", i)
        p = random_polytope(rng, 3, full=True)
        v = sum(1 for f in p.faces if f.dim == 0)
        e = sum(1 for f in p.faces if f.dim == 1)
        f2 = sum(1 for f in p.faces if f.dim == 2)
        assert v - e + f2 == 2


def test_vertex_irredundancy():
    p = Polytope.from_points([(0, 0), (2, 0), (1, 0), (0, 2), (1, 1)])
    assert p.vertices == (
        (Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(2)),
        (Fraction(2), Fraction(0)),
    )


def test_h_representation_roundtrip():
    p = Polytope.from_points([(0, 0), (3, 0), (0, 2)])
    q = Polytope.from_halfspaces(list(p.facets), 2)
    assert q == p
    with pytest.raises(UnboundedError):
        Polytope.from_halfspaces([((1, 0), Fraction(1))], 2)


def test_minkowski_examples():
    seg_x = Polytope.from_points([(0, 0), (1, 0)])
    seg_y = Polytope.from_points([(0, 0), (0, 1)])
    square = Polytope.from_points([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert minkowski_sum(seg_x, seg_y) == square
    pt = Polytope.from_points([(5, -3)])
    tri = Polytope.from_points([(0, 0), (2, 0), (0, 2)])
    assert minkowski_sum(tri, pt) == tri.translate((5, -3))
    # difference body of a triangle is a hexagon: oracle is the brute-force
    # hull of all nine pairwise vertex sums
    neg = tri.scale(-1)
    hexagon = minkowski_sum(tri, neg)
    brute = Polytope.from_points([tuple(a + b for a, b in zip(u, w))
                                  for u in tri.vertices for w in neg.vertices])
    assert hexagon == brute
    assert len(hexagon.vertices) == 6


def test_refine_common_grid():
    left = Polytope.from_points([(0, 0), (Fraction(1, 2), 0), (0, 1), (Fraction(1, 2), 1)])
    right = Polytope.from_points([(Fraction(1, 2), 0), (1, 0), (Fraction(1, 2), 1), (1, 1)])
    bot = Polytope.from_points([(0, 0), (1, 0), (0, Fraction(1, 2)), (1, Fraction(1, 2))])
    top = Polytope.from_points([(0, Fraction(1, 2)), (1, Fraction(1, 2)), (0, 1), (1, 1)])
    k1 = build_complex([left, right], 2, False)
    k2 = build_complex([bot, top], 2, False)
    r = refine_common(k1, k2)
    assert sum(1 for c in r.cells if c.dim == 2) == 4
    assert is_refinement(r, k1) and is_refinement(r, k2)
    assert not is_refinement(k1, r)
    assert validate_complex(r) == []


def test_refine_common_idempotent_and_absorbing():
    seg_whole = build_complex([Polytope.from_points([(0,), (2,)])], 1, False)
    seg_split = build_complex(
        [Polytope.from_points([(0,), (1,)]), Polytope.from_points([(1,), (2,)])], 1, False
    )
    assert refine_common(seg_whole, seg_whole).cells == seg_whole.cells
    assert refine_common(seg_whole, seg_split).cells == seg_split.cells


def test_refine_common_rejects_different_sets():
    a = build_complex([Polytope.from_points([(0,), (1,)])], 1, False)
    b = build_complex([Polytope.from_points([(0,), (2,)])], 1, False)
    with pytest.raises(ValueError):
        refine_common(a, b)


def test_triangulation_refines_and_is_simplicial():
    for i in range(6):
        rng = stream_rng(31, "tri", i)
        p = random_polytope(rng, 3)
        k = complex_from_cell(p)
        t = triangulate(k)
        assert t.is_triangulated()
        assert is_refinement(t, k)
        if len(t.cells) <= 40:
            assert validate_complex(t) == []


def test_overlay_is_a_complex_refining_both():
    t1 = complex_from_cell(Polytope.from_points([(0, 0), (2, 0), (0, 2)]))
    t2 = complex_from_cell(Polytope.from_points([(1, 1), (3, 1), (1, 3)]))
    ov = overlay(t1, t2)
    assert validate_complex(ov) == []
    for c in ov.cells:
        assert any(
            all(big.contains(v) for v in c.vertices) for big in (t1.cells + t2.cells)
        )
