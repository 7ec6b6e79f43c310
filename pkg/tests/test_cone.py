"""Exact cone machinery: duality, face lattices, normal cones."""

import itertools
from fractions import Fraction

import pytest

from valgebra import Cone, dual_cone
from valgebra.cone import _dd
from valgebra.polytope import Polytope
from valgebra.sampling import random_cone, random_cut_pair, stream_rng


def test_dual_examples():
    full = Cone.full_space(2)
    assert full.dual == Cone.origin(2)
    line = Cone.from_generators([(1, 0), (-1, 0)], 2)
    assert line.dual == Cone.from_generators([(0, 1), (0, -1)], 2)
    quad = Cone.from_generators([(1, 0), (0, 1)], 2)
    assert quad.dual == Cone.from_generators([(-1, 0), (0, -1)], 2)


def test_dual_dimension_mismatch():
    with pytest.raises(ValueError):
        dual_cone(Cone.full_space(2), 3)


def test_double_dual_recomputed():
    # recompute the double dual from scratch rather than via the cached pair
    for dim in range(1, 5):
        for i in range(50):
            rng = stream_rng(11, "dd", dim, i)
            c = random_cone(rng, dim)
            rays, lines = _dd(c.dual.generators, dim)
            assert (rays, lines) == (c.rays, c.lines)


def test_dual_cut_laws():
    for dim in range(1, 5):
        for i in range(20):
            rng = stream_rng(13, "cut", dim, i)
            p, q, union = random_cut_pair(rng, dim)
            assert union.dual == p.dual.intersect(q.dual)
            dpq = p.intersect(q).dual
            for g in dpq.generators:
                assert p.dual.contains(g) or q.dual.contains(g)
            for g in p.dual.generators + q.dual.generators:
                assert dpq.contains(g)
            for _ in range(6):
                x = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(dim))
                assert dpq.contains(x) == (p.dual.contains(x) or q.dual.contains(x))


def test_octant_faces_by_subsets():
    # oracle: faces of a conical simplex are indexed by generator subsets
    gens = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    octant = Cone.from_generators(gens, 3)
    expected = set()
    for k in range(4):
        for subset in itertools.combinations(gens, k):
            expected.add(Cone.from_generators(subset, 3))
    assert set(octant.faces) == expected
    assert len(octant.faces) == 8


def test_face_lattice_closed_and_graded():
    for i in range(20):
        rng = stream_rng(17, "faces", i)
        c = random_cone(rng, 3)
        faces = set(c.faces)
        for f in faces:
            for g in f.faces:
                assert g in faces  # every face of a face is a face
        assert c in faces
        # minimal face is the largest contained subspace
        minimal = min(faces, key=lambda f: f.dim)
        assert minimal.rays == ()


def test_minimal_face_of_halfplane_is_line():
    half = Cone.from_halfspaces([(0, -1)], 2)
    dims = sorted(f.dim for f in half.faces)
    assert dims == [1, 2]


def test_normal_cone_examples():
    quad = Cone.from_generators([(1, 0), (0, 1)], 2)
    ray_face = next(f for f in quad.faces if f.rays == ((1, 0),))
    nc = quad.normal_cone(ray_face)
    assert nc == Cone.from_generators([(0, 1)], 2)
    top = next(f for f in quad.faces if f.dim == 2)
    assert quad.normal_cone(top) == Cone.origin(2)
    origin = next(f for f in quad.faces if f.dim == 0)
    assert quad.normal_cone(origin) == quad


def test_normal_cone_composition():
    # germ of a germ: nu(nu(s,t), nu(s,P)) == nu(t,P) on simplicial chains
    for i in range(25):
        rng = stream_rng(19, "nucomp", i)
        dim = rng.randint(2, 3)
        p = None
        while p is None or p.dim != dim or not p.is_simplex():
            pts = [tuple(rng.randint(-4, 4) for _ in range(dim)) for _ in range(dim + 1)]
            try:
                p = Polytope.from_points(pts)
            except ValueError:
                continue
        faces = sorted(p.faces, key=lambda f: f.dim)
        sigma = next(f for f in faces if f.dim == 0)
        tau = next(f for f in faces if f.dim == 1 and sigma.vertices[0] in f.vertices)
        nu_sigma_p = p.normal_cone(sigma)
        nu_sigma_tau = tau.normal_cone(sigma)
        inner_face = next((f for f in nu_sigma_p.faces if f == nu_sigma_tau), None)
        assert inner_face is not None, "nu(sigma,tau) must be a face of nu(sigma,P)"
        assert nu_sigma_p.normal_cone(inner_face) == p.normal_cone(tau)


def test_normal_cone_independent_of_interior_point():
    # the edge germ comes out the same at any relative-interior point
    sq = Polytope.from_points([(0, 0), (2, 0), (0, 2), (2, 2)])
    edge = next(f for f in sq.faces if f.dim == 1 and all(v[1] == 0 for v in f.vertices))
    nc = sq.normal_cone(edge)
    assert nc == Cone.from_generators([(0, 1)], 2)
    for x in (Fraction(1, 3), Fraction(7, 5)):
        tangent = sq.tangent_cone((x, Fraction(0)))
        line_perp = Cone.from_halfspaces([(1, 0), (-1, 0)], 2)
        assert tangent.intersect(line_perp) == nc


def test_pull_triangulation_is_simplicial():
    for i in range(15):
        rng = stream_rng(23, "pull", i)
        c = random_cone(rng, 3)
        if not c.is_pointed():
            continue
        pieces = c.pull_triangulation()
        for rays in pieces:
            sub = Cone.from_generators(rays, 3)
            assert sub.is_simplicial()
            assert c.contains_cone(sub)
