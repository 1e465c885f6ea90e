import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symcurve import lattice as lt
from symcurve import oracle

from conftest import cube, random_unimodular, simplex

UNIT_TRIANGLE = [(0, 0), (1, 0), (0, 1)]
UNIT_SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]
TETRA = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]

coords = st.integers(-3, 3)
points2 = st.lists(st.tuples(coords, coords), min_size=1, max_size=7)
points3 = st.lists(st.tuples(coords, coords, coords), min_size=1, max_size=7)


def test_primitive():
    assert lt.primitive((2, -4, 6)) == (1, -2, 3)
    assert lt.primitive((0, 0, 5)) == (0, 0, 1)
    assert lt.primitive((1, 1, 0)) == (1, 1, 0)
    with pytest.raises(lt.LatticeError, match="zero has no primitive representative"):
        lt.primitive((0, 0, 0))


def test_hull_examples():
    seg = lt.hull([(0, 0), (2, 0), (1, 0)])
    assert seg.dim == 1 and set(seg.vertices) == {(0, 0), (2, 0)}
    assert len(lt.hull(UNIT_SQUARE).vertices) == 4
    tet = lt.hull(TETRA)
    assert tet.dim == 3 and len(tet.facets) == 4


def test_support_face_examples():
    assert lt.support_face(UNIT_TRIANGLE, (1, 0)) == ((1, 0),)
    assert lt.support_face(UNIT_TRIANGLE, (-1, -1)) == ((0, 0),)
    assert lt.support_face([(0, 0, 0), (0, 0, 1), (1, 0, 0)], (-1, -1, 0)) == ((0, 0, 0), (0, 0, 1))


def count_by_dim(fs):
    out = {}
    for f in fs:
        out[f.dim] = out.get(f.dim, 0) + 1
    return out


def test_faces_examples():
    seg = lt.faces([(0,), (1,)])
    assert {f.points for f in seg} == {((0,),), ((1,),), ((0,), (1,))}
    assert count_by_dim(lt.faces(UNIT_TRIANGLE)) == {0: 3, 1: 3, 2: 1}
    assert count_by_dim(lt.faces(simplex(2))) == {0: 4, 1: 6, 2: 4, 3: 1}


def test_face_covectors_expose_their_faces():
    for f in lt.faces(simplex(2)):
        if any(f.covector):
            assert lt.support_face(simplex(2), f.covector) == f.points


def test_lattice_length():
    assert lt.lattice_length([(0,), (3,)]) == 3
    assert lt.lattice_length([(0, 0, 0), (2, 2, 0)]) == 2
    assert lt.lattice_length([(0, 0, 0)]) == 0
    with pytest.raises(lt.LatticeError):
        lt.lattice_length(UNIT_TRIANGLE)


def test_areas_and_volumes():
    assert lt.lattice_area([(0, 0), (2, 0), (0, 2)]) == 4
    assert lt.lattice_area(UNIT_SQUARE) == 2
    assert lt.lattice_area([(0, 0), (3, 0)]) == 0
    assert lt.lattice_volume3(TETRA) == 1
    assert lt.lattice_volume3(simplex(2)) == 8
    assert lt.lattice_volume3(cube()) == 6


def test_minkowski_sum():
    assert set(lt.minkowski_sum([(0,), (1,)], [(0,), (1,)])) == {(0,), (1,), (2,)}
    assert set(lt.minkowski_sum([(0, 0), (1, 0)], [(0, 0), (0, 1)])) == set(UNIT_SQUARE)
    assert set(lt.minkowski_sum(UNIT_TRIANGLE, [(5, -1)])) == set(lt.translate(UNIT_TRIANGLE, (5, -1)))


def test_mixed_area_examples():
    assert lt.mixed_area(UNIT_TRIANGLE, UNIT_TRIANGLE) == 1
    assert lt.mixed_area([(0, 0), (1, 0)], [(0, 0), (0, 1)]) == 1
    assert lt.mixed_area([(0, 0), (1, 0)], [(0, 0), (2, 0)]) == 0


def test_mixed_volume_examples():
    assert lt.mixed_volume3(TETRA, TETRA, TETRA) == 1
    e = [[(0, 0, 0), u] for u in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    assert lt.mixed_volume3(*e) == 1
    assert lt.mixed_volume3(simplex(2), simplex(2), simplex(4)) == 16


def test_mixed_area_in_plane_examples():
    F = [(0, 0, 0), (1, 0, 0), (0, 0, 1)]
    assert lt.mixed_area_in_plane(F, F, (0, 1, 0)) == 1
    assert lt.mixed_area_in_plane([(3, 0, 4)], F, (0, 1, 0)) == 0
    assert lt.mixed_area_in_plane([(0, 0, 0), (1, 1, 0)], [(0, 0, 0), (0, 0, 1)], (1, -1, 0)) == 1
    with pytest.raises(lt.LatticeError):
        lt.mixed_area_in_plane(TETRA, F, (0, 1, 0))


def test_project_along():
    image = lt.project_along(simplex(2), (1, -1, 0))
    assert set(lt.hull2_vertices(image)) == {(0, 0), (2, 0), (0, 2)}
    assert len(lt.project_along([(0, 0, 0), (1, 2, 3), (2, 4, 6)], (1, 2, 3))) == 1
    with pytest.raises(lt.LatticeError):
        lt.project_along(TETRA, (2, 0, 0))
    with pytest.raises(lt.LatticeError):
        lt.project_along(TETRA, (0, 0, 0))


def test_projection_matrix_kills_direction():
    rng = random.Random(3)
    for _ in range(50):
        mu = tuple(rng.randint(-4, 4) for _ in range(3))
        if not any(mu) or not lt.is_primitive(mu):
            continue
        P = lt.projection_matrix(mu)
        assert all(lt.dot(row, mu) == 0 for row in P)
        assert lt.smith_invariants(P) == [1, 1]


def test_interior_lattice_points():
    assert lt.interior_lattice_points(simplex(2, 2)) == 0
    assert lt.interior_lattice_points(simplex(3, 2)) == 1
    assert lt.interior_lattice_points(UNIT_SQUARE) == 0


def test_sublattice_index():
    assert lt.sublattice_index(TETRA) == (3, 1)
    assert lt.sublattice_index([(0, 0), (2, 0), (0, 2)]) == (2, 4)
    assert lt.sublattice_index([(7, 7, 7)]) == (0, 1)


def test_smith_invariants():
    assert lt.smith_invariants([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert lt.smith_invariants([[1, 0], [0, 0]]) == [1]


def test_dual_fan_2d():
    assert lt.dual_fan_2d(UNIT_TRIANGLE) == [((-1, 0), 1), ((0, -1), 1), ((1, 1), 1)]
    assert lt.dual_fan_2d(simplex(2, 2)) == [((-1, 0), 2), ((0, -1), 2), ((1, 1), 2)]
    assert lt.dual_fan_2d([(0, 0), (3, 0)]) == [((0, -1), 3), ((0, 1), 3)]
    with pytest.raises(lt.LatticeError):
        lt.dual_fan_2d([(1, 1)])


@settings(max_examples=150, deadline=None)
@given(points2)
def test_area_matches_pick(P):
    assert lt.lattice_area(P) == oracle.vol2_pick(P)


@settings(max_examples=60, deadline=None)
@given(points3)
def test_volume_matches_ehrhart(P):
    if lt.affine_dim(lt.as_support(P)) == 3:
        assert lt.lattice_volume3(P) == oracle.vol3_ehrhart(P)
    else:
        assert lt.lattice_volume3(P) == 0


@settings(max_examples=60, deadline=None)
@given(points3)
def test_faces_match_enumeration(P):
    assert {f.points for f in lt.faces(P)} == oracle.faces_by_enumeration(P)


@settings(max_examples=80, deadline=None)
@given(points2, points2, points2)
def test_mixed_area_is_symmetric_and_additive(P, Q, R):
    assert lt.mixed_area(P, Q) == lt.mixed_area(Q, P)
    assert lt.mixed_area(lt.minkowski_sum(P, R), Q) == lt.mixed_area(P, Q) + lt.mixed_area(R, Q)
    assert lt.mixed_area(P, P) == lt.lattice_area(P)
    assert lt.mixed_area(P, Q) >= 0


@settings(max_examples=60, deadline=None)
@given(points2, points2, st.integers(0, 2**16))
def test_mixed_area_unimodular_invariance(P, Q, seed):
    W = random_unimodular(random.Random(seed), 2)
    move = lambda X: [tuple(lt.dot(row, p) for row in W) for p in X]
    assert lt.mixed_area(move(P), move(Q)) == lt.mixed_area(P, Q)
    assert lt.mixed_area(lt.translate(P, (4, -7)), Q) == lt.mixed_area(P, Q)


@settings(max_examples=40, deadline=None)
@given(points3, points3)
def test_mixed_volume_reduces_to_volume(P, Q):
    assert lt.mixed_volume3(P, P, P) == lt.lattice_volume3(P)
    # MV(P, P, Q) is monotone: it does not drop when Q grows
    assert lt.mixed_volume3(P, P, lt.minkowski_sum(Q, TETRA)) >= lt.mixed_volume3(P, P, Q)


@settings(max_examples=60, deadline=None)
@given(st.tuples(coords, coords, coords).filter(lambda v: any(v)))
def test_unimodular_to_e1(v):
    v = lt.primitive(v)
    W = lt.unimodular_to_e1(v)
    assert tuple(lt.dot(row, v) for row in W) == (1, 0, 0)
    assert abs(lt.det3(*W)) == 1
    Winv = lt.inverse_unimodular(W)
    prod = [[sum(W[i][k] * Winv[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert prod == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_as_support_rejects_bad_input():
    with pytest.raises(lt.LatticeError):
        lt.as_support([])
    with pytest.raises(lt.LatticeError):
        lt.as_support([(0, 0), (1, 0, 0)])
