"""Exact lattice and polytope primitives in dimension at most three.

Points and covectors are plain tuples of Python integers.  Everything here is
exact: hulls, faces, lattice volumes, mixed volumes and lattice projections
are computed with integer arithmetic only.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

Point = tuple[int, ...]
Covector = tuple[int, ...]


class LatticeError(ValueError):
    """Raised when an input violates a precondition of a lattice operation."""


# ---------------------------------------------------------------------------
# vectors and point sets


def as_point(p: Iterable) -> Point:
    out = []
    for x in p:
        if isinstance(x, bool) or not isinstance(x, int):
            if hasattr(x, "__index__"):
                x = x.__index__()
            else:
                raise LatticeError(f"coordinate {x!r} is not an integer")
        out.append(int(x))
    return tuple(out)


def as_support(points: Iterable[Iterable]) -> tuple[Point, ...]:
    """Validate and deduplicate a point set; the result is sorted."""
    pts = {as_point(p) for p in points}
    if not pts:
        raise LatticeError("support set must be non-empty")
    dims = {len(p) for p in pts}
    if len(dims) != 1:
        raise LatticeError("points of a support set must share one dimension")
    n = dims.pop()
    if not 1 <= n <= 3:
        raise LatticeError(f"ambient dimension {n} is not supported")
    return tuple(sorted(pts))


def ambient_dim(points: Sequence[Point]) -> int:
    return len(points[0])


def add(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> Point:
    return tuple(k * x for x in a)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(map(operator.mul, a, b))


def cross(a: Sequence[int], b: Sequence[int]) -> Point:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def det3(a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> int:
    return dot(a, cross(b, c))


def gcd_all(values: Iterable[int]) -> int:
    return reduce(math.gcd, (abs(v) for v in values), 0)


def primitive(v: Sequence[int]) -> Point:
    """Divide an integer vector by the gcd of its entries."""
    v = as_point(v)
    g = gcd_all(v)
    if g == 0:
        raise LatticeError("zero has no primitive representative")
    return tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    return gcd_all(v) == 1


def translate(points: Iterable[Point], p: Sequence[int]) -> tuple[Point, ...]:
    return tuple(sorted({add(q, p) for q in points}))


def minkowski_sum(A: Iterable[Sequence[int]], B: Iterable[Sequence[int]]) -> tuple[Point, ...]:
    A = as_support(A)
    B = as_support(B)
    if ambient_dim(A) != ambient_dim(B):
        raise LatticeError("Minkowski summands must share the ambient dimension")
    return tuple(sorted({add(a, b) for a in A for b in B}))


def differences(points: Sequence[Point]) -> list[Point]:
    base = points[0]
    return [sub(p, base) for p in points[1:]]


def rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f, g = rows[i][c], rows[r][c]
                rows[i] = [g * x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def affine_dim(points: Sequence[Point]) -> int:
    return rank(differences(list(points)))


def is_collinear(points: Sequence[Point]) -> bool:
    return affine_dim(list(points)) <= 1


def support_face(A: Iterable[Sequence[int]], gamma: Sequence[int]) -> tuple[Point, ...]:
    """Points of A at which the covector gamma attains its maximum."""
    A = as_support(A)
    gamma = as_point(gamma)
    if len(gamma) != ambient_dim(A):
        raise LatticeError("covector and support set dimensions differ")
    values = [dot(gamma, a) for a in A]
    top = max(values)
    return tuple(a for a, v in zip(A, values) if v == top)


def lattice_length(A: Iterable[Sequence[int]]) -> int:
    """Number of lattice points on conv(A) minus one, for collinear A."""
    A = as_support(A)
    if len(A) == 1:
        return 0
    if not is_collinear(A):
        raise LatticeError("lattice length needs a collinear point set")
    lo, hi = A[0], A[-1]  # sorted order puts the extremes of a line at the ends
    return gcd_all(sub(hi, lo))


# ---------------------------------------------------------------------------
# unimodular completions, kernels, projections


def unimodular_to_e1(v: Sequence[int]) -> list[list[int]]:
    """Unimodular integer matrix W with W @ v = e1 for a primitive vector v."""
    v = list(as_point(v))
    n = len(v)
    if gcd_all(v) != 1:
        raise LatticeError("vector must be primitive")
    W = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, k):  # row_i -= k * row_j, on v and W
        v[i] -= k * v[j]
        W[i] = [a - k * b for a, b in zip(W[i], W[j])]

    def swap(i, j):
        v[i], v[j] = v[j], v[i]
        W[i], W[j] = W[j], W[i]

    while any(v[1:]):
        nz = [i for i in range(n) if v[i] != 0]
        piv = min(nz, key=lambda i: (abs(v[i]), i))
        if piv != 0:
            swap(0, piv)
        for i in range(1, n):
            if v[i]:
                row_op(i, 0, v[i] // v[0])
    if v[0] == -1:
        v[0] = 1
        W[0] = [-a for a in W[0]]
    return W


def inverse_unimodular(W: Sequence[Sequence[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular matrix of size at most three."""
    n = len(W)
    if n == 1:
        return [[W[0][0]]]
    if n == 2:
        (a, b), (c, d) = W
        det = a * d - b * c
        return [[d * det, -b * det], [-c * det, a * det]]
    det = det3(W[0], W[1], W[2])
    if abs(det) != 1:
        raise LatticeError("matrix is not unimodular")
    cols = [cross(W[1], W[2]), cross(W[2], W[0]), cross(W[0], W[1])]
    # W^{-1} = adj(W) / det; the columns of adj(W) are the cross products above
    return [[cols[j][i] * det for j in range(3)] for i in range(3)]


def kernel_basis(gamma: Sequence[int]) -> list[Point]:
    """Lattice basis of the kernel of a primitive covector."""
    W = unimodular_to_e1(gamma)
    return [tuple(row) for row in W[1:]]


def _apply(M: Sequence[Sequence[int]], p: Sequence[int]) -> Point:
    return tuple(dot(row, p) for row in M)


ANTIDIAGONAL = (1, -1, 0)


def projection_matrix(mu: Sequence[int]) -> list[list[int]]:
    """Integer matrix of a surjection Z^n -> Z^(n-1) with kernel Z mu."""
    mu = as_point(mu)
    if not any(mu):
        raise LatticeError("zero has no primitive representative")
    if not is_primitive(mu):
        raise LatticeError("projection direction must be primitive")
    n = len(mu)
    if n == 3 and mu in (ANTIDIAGONAL, (-1, 1, 0)):
        return [[1, 1, 0], [0, 0, 1]]
    if sum(1 for x in mu if x) == 1:
        k = next(i for i in range(n) if mu[i])
        return [[int(i == j) for j in range(n)] for i in range(n) if i != k]
    W = unimodular_to_e1(mu)
    return [list(row) for row in W[1:]]


def project_along(A: Iterable[Sequence[int]], mu: Sequence[int]) -> tuple[Point, ...]:
    """Image of A under a lattice surjection whose kernel is spanned by mu."""
    A = as_support(A)
    P = projection_matrix(mu)
    return tuple(sorted({_apply(P, a) for a in A}))


def in_plane_coordinates(gamma: Sequence[int]) -> list[list[int]]:
    """Rows of a map Z^3 -> Z^2 restricting to an isomorphism ker(gamma) -> Z^2."""
    W = unimodular_to_e1(gamma)
    Winv = inverse_unimodular(W)
    # x = W^T y for the kernel basis rows of W, so y = (W^{-1})^T x
    WinvT = [list(col) for col in zip(*Winv)]
    return WinvT[1:]


def smith_invariants(vectors: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero Smith invariant factors of the matrix whose rows are the vectors.

    Computed through determinantal divisors: the k-th invariant factor is
    D_k / D_{k-1}, where D_k is the gcd of all k x k minors.
    """
    rows = [list(v) for v in vectors]
    if not rows:
        return []
    ncols = len(rows[0])
    r = rank(rows)
    divisors = [1]
    for k in range(1, r + 1):
        g = 0
        for ri in combinations(range(len(rows)), k):
            for ci in combinations(range(ncols), k):
                g = math.gcd(g, _minor(rows, ri, ci))
                if g == 1:
                    break
            if g == 1:
                break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, r + 1)]


def _minor(rows, ri, ci) -> int:
    m = [[rows[i][j] for j in ci] for i in ri]
    return _det(m)


def _det(m) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n))


def sublattice_index(A: Iterable[Sequence[int]]) -> tuple[int, int]:
    """(rank, index) of the lattice generated by A - a0 inside its saturation."""
    A = as_support(A)
    diffs = differences(list(A))
    inv = smith_invariants(diffs)
    return len(inv), math.prod(inv)


# ---------------------------------------------------------------------------
# hulls


@dataclass(frozen=True)
class Polytope2:
    """Convex hull of a planar set: ccw vertex cycle, possibly degenerate."""

    vertices: tuple[Point, ...]
    dim: int

    @property
    def edges(self) -> tuple[tuple[Point, Point], ...]:
        v = self.vertices
        if len(v) == 1:
            return ()
        if len(v) == 2:
            return ((v[0], v[1]),)
        return tuple((v[i], v[(i + 1) % len(v)]) for i in range(len(v)))


@dataclass(frozen=True)
class Facet:
    normal: Covector
    level: int
    vertices: tuple[Point, ...]  # ccw when seen from outside


@dataclass(frozen=True)
class Polytope3:
    """Convex hull of a set in Z^3 of any affine dimension."""

    vertices: tuple[Point, ...]
    edges: tuple[tuple[Point, Point], ...]
    facets: tuple[Facet, ...]
    dim: int


def _cross2(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull2_vertices(points: Iterable[Sequence[int]]) -> tuple[Point, ...]:
    """Extreme points of a planar set in ccw order (monotone chain)."""
    pts = sorted({tuple(p) for p in points})
    if len(pts) <= 2:
        return tuple(pts)
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    cycle = lower[:-1] + upper[:-1]
    if len(cycle) == 2 and cycle[0] == cycle[1]:
        return (cycle[0],)
    return tuple(cycle)


def _planar_cycle(points: Sequence[Point], normal: Sequence[int]) -> tuple[Point, ...]:
    """Hull cycle of coplanar points in Z^3, ccw around the given normal."""
    k = next(i for i in range(3) if normal[i] != 0)
    keep = [i for i in range(3) if i != k]
    lookup = {(p[keep[0]], p[keep[1]]): p for p in points}
    cycle = [lookup[q] for q in hull2_vertices(lookup)]
    if len(cycle) >= 3 and dot(cross(sub(cycle[1], cycle[0]), sub(cycle[2], cycle[0])), normal) < 0:
        cycle.reverse()
    return tuple(cycle)


def _plane_normal(points: Sequence[Point]) -> Point:
    base = points[0]
    for b, c in combinations(points[1:], 2):
        n = cross(sub(b, base), sub(c, base))
        if any(n):
            return primitive(n)
    raise LatticeError("points are collinear")


def _hull3_full(pts: Sequence[Point]) -> Polytope3:
    # initial simplex from the lexicographically first independent points
    p0 = pts[0]
    i1 = next(i for i in range(1, len(pts)) if pts[i] != p0)
    i2 = next(i for i in range(i1 + 1, len(pts)) if any(cross(sub(pts[i1], p0), sub(pts[i], p0))))
    n012 = cross(sub(pts[i1], p0), sub(pts[i2], p0))
    i3 = next(i for i in range(i2 + 1, len(pts)) if dot(n012, sub(pts[i], p0)) != 0)
    seed = [0, i1, i2, i3]
    a, b, c, d = seed
    if dot(n012, sub(pts[d], p0)) > 0:
        b, c = c, b
    faces = {}

    def add_face(x, y, z):
        nrm = cross(sub(pts[y], pts[x]), sub(pts[z], pts[x]))
        faces[(x, y, z)] = (nrm, dot(nrm, pts[x]))

    # (a,b,c) oriented so pts[d] lies on its negative side
    add_face(a, b, c)
    add_face(a, d, b)
    add_face(b, d, c)
    add_face(c, d, a)
    seeded = set(seed)
    for i in range(len(pts)):
        if i in seeded:
            continue
        p = pts[i]
        visible = [f for f, (nrm, lvl) in faces.items() if dot(nrm, p) > lvl]
        if not visible:
            continue
        vedges = set()
        for x, y, z in visible:
            vedges.update(((x, y), (y, z), (z, x)))
        horizon = [(u, v) for (u, v) in vedges if (v, u) not in vedges]
        for f in visible:
            del faces[f]
        for u, v in horizon:
            add_face(u, v, i)

    groups: dict[Point, int] = {}
    for nrm, _ in faces.values():
        groups.setdefault(primitive(nrm), 0)
    facets = []
    for nrm in sorted(groups):
        level = max(dot(nrm, p) for p in pts)
        on = [p for p in pts if dot(nrm, p) == level]
        facets.append(Facet(nrm, level, _planar_cycle(on, nrm)))
    verts = sorted({v for f in facets for v in f.vertices})
    edges = set()
    for f in facets:
        cyc = f.vertices
        for j in range(len(cyc)):
            edges.add(tuple(sorted((cyc[j], cyc[(j + 1) % len(cyc)]))))
    return Polytope3(tuple(verts), tuple(sorted(edges)), tuple(facets), 3)


def hull(A: Iterable[Sequence[int]]) -> Polytope2 | Polytope3:
    """Exact convex hull; degenerate hulls carry their affine dimension."""
    pts = as_support(A)
    n = ambient_dim(pts)
    dim = affine_dim(pts)
    if n <= 2:
        if n == 1:
            verts = (pts[0],) if len(pts) == 1 else (pts[0], pts[-1])
        else:
            verts = hull2_vertices(pts)
        return Polytope2(verts, dim)
    if dim == 0:
        return Polytope3((pts[0],), (), (), 0)
    if dim == 1:
        return Polytope3((pts[0], pts[-1]), ((pts[0], pts[-1]),), (), 1)
    if dim == 2:
        cyc = _planar_cycle(pts, _plane_normal(pts))
        edges = tuple(sorted(tuple(sorted((cyc[j], cyc[(j + 1) % len(cyc)]))) for j in range(len(cyc))))
        return Polytope3(cyc, edges, (), 2)
    return _hull3_full(pts)


def vertices(A: Iterable[Sequence[int]]) -> tuple[Point, ...]:
    return tuple(sorted(hull(A).vertices))


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class Face:
    points: tuple[Point, ...]
    covector: Covector
    dim: int


def _face(A, gamma) -> Face:
    pts = support_face(A, gamma)
    return Face(pts, tuple(gamma), affine_dim(pts))


def _sum_primitive(vectors) -> Point:
    return primitive(reduce(add, vectors))


def faces(A: Iterable[Sequence[int]]) -> list[Face]:
    """All faces A^gamma of A with one witnessing covector each.

    The improper face A itself is included with the zero covector.  Lower
    faces carry a primitive covector exposing exactly that face.
    """
    A = as_support(A)
    n = ambient_dim(A)
    P = hull(A)
    zero = (0,) * n
    out: list[Face] = []
    if P.dim == 0:
        return [Face(A, zero, 0)]
    if P.dim == 1:
        p, q = P.vertices[0], P.vertices[-1]
        u = primitive(sub(q, p))
        out = [_face(A, tuple(-x for x in u)), _face(A, u)]
    elif n == 2 or P.dim == 2:
        cyc = P.vertices
        k = len(cyc)
        if n == 2:
            normals = [primitive((b[1] - a[1], a[0] - b[0])) for a, b in zip(cyc, cyc[1:] + cyc[:1])]
        else:
            pn = _plane_normal(list(cyc))
            normals = [primitive(cross(sub(b, a), pn)) for a, b in zip(cyc, cyc[1:] + cyc[:1])]
        edge_faces = [_face(A, nu) for nu in normals]
        vert_faces = [_face(A, _sum_primitive([normals[j - 1], normals[j]])) for j in range(k)]
        out = vert_faces + edge_faces
    else:
        facets = P.facets
        by_vertex: dict[Point, list[Point]] = {}
        by_edge: dict[tuple, list[Point]] = {}
        for f in facets:
            cyc = f.vertices
            for j, v in enumerate(cyc):
                by_vertex.setdefault(v, []).append(f.normal)
                e = tuple(sorted((v, cyc[(j + 1) % len(cyc)])))
                by_edge.setdefault(e, []).append(f.normal)
        out = [_face(A, _sum_primitive(by_vertex[v])) for v in sorted(by_vertex)]
        out += [_face(A, _sum_primitive(by_edge[e])) for e in sorted(by_edge)]
        out += [_face(A, f.normal) for f in facets]
    out.append(Face(A, zero, P.dim))
    return out


def edges(A: Iterable[Sequence[int]]) -> list[Face]:
    return [f for f in faces(A) if f.dim == 1 and f.covector != (0,) * ambient_dim(as_support(A))]


# ---------------------------------------------------------------------------
# lattice volumes


def lattice_area(A: Iterable[Sequence[int]]) -> int:
    """Twice the Euclidean area of conv(A) for A in Z^2."""
    A = as_support(A)
    if ambient_dim(A) != 2:
        raise LatticeError("lattice_area needs points in Z^2")
    cyc = hull2_vertices(A)
    if len(cyc) < 3:
        return 0
    return sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(cyc, cyc[1:] + cyc[:1]))


def boundary_lattice_points(A: Iterable[Sequence[int]]) -> int:
    A = as_support(A)
    cyc = hull2_vertices(A)
    if len(cyc) == 1:
        return 1
    if len(cyc) == 2:
        return gcd_all(sub(cyc[1], cyc[0])) + 1
    return sum(gcd_all(sub(b, a)) for a, b in zip(cyc, cyc[1:] + cyc[:1]))


def interior_lattice_points(A: Iterable[Sequence[int]] | Polytope2) -> int:
    """Lattice points strictly inside conv(A), by Pick's formula."""
    if isinstance(A, Polytope2):
        A = A.vertices
    A = as_support(A)
    area = lattice_area(A)
    if area == 0:
        return 0
    return (area - boundary_lattice_points(A) + 2) // 2


def lattice_volume3(A: Iterable[Sequence[int]]) -> int:
    """Six times the Euclidean volume of conv(A) for A in Z^3."""
    A = as_support(A)
    if ambient_dim(A) != 3:
        raise LatticeError("lattice_volume3 needs points in Z^3")
    P = hull(A)
    if P.dim < 3:
        return 0
    o = P.vertices[0]
    total = 0
    for f in P.facets:
        cyc = f.vertices
        if o in cyc:
            continue
        a = sub(cyc[0], o)
        for j in range(1, len(cyc) - 1):
            total += det3(a, sub(cyc[j], o), sub(cyc[j + 1], o))
    return total


def _vsum(P, Q):
    return tuple(sorted({add(p, q) for p in P for q in Q}))


def mixed_area(P: Iterable[Sequence[int]], Q: Iterable[Sequence[int]]) -> int:
    """Lattice mixed area MV(P, Q) with MV(P, P) = lattice_area(P)."""
    P = hull2_vertices(as_support(P))
    Q = hull2_vertices(as_support(Q))
    if len(P[0]) != 2 or len(Q[0]) != 2:
        raise LatticeError("mixed_area needs points in Z^2")
    twice = lattice_area(_vsum(P, Q)) - lattice_area(P) - lattice_area(Q)
    if twice % 2:
        raise AssertionError("mixed area polarization is not even")
    return twice // 2


def mixed_volume3(P: Iterable[Sequence[int]], Q: Iterable[Sequence[int]], R: Iterable[Sequence[int]]) -> int:
    """Lattice mixed volume MV(P, Q, R) by inclusion-exclusion of volumes."""
    args = [vertices(as_support(X)) for X in (P, Q, R)]
    if any(ambient_dim(X) != 3 for X in args):
        raise LatticeError("mixed_volume3 needs points in Z^3")
    total = 0
    for k in (1, 2, 3):
        for S in combinations(args, k):
            acc = S[0]
            for X in S[1:]:
                acc = vertices(_vsum(acc, X))
            total += (-1) ** (3 - k) * lattice_volume3(acc)
    if total % 6:
        raise AssertionError("mixed volume polarization is not divisible by 6")
    return total // 6


def plane_level(F: Sequence[Point], gamma: Sequence[int]) -> int:
    levels = {dot(gamma, p) for p in F}
    if len(levels) != 1:
        raise LatticeError("set does not lie in a level plane of the covector")
    return levels.pop()


def to_plane(F: Iterable[Sequence[int]], gamma: Sequence[int]) -> tuple[Point, ...]:
    """Coordinates in a lattice basis of ker(gamma) of F shifted into ker(gamma)."""
    F = as_support(F)
    gamma = as_point(gamma)
    if not is_primitive(gamma):
        raise LatticeError("covector must be primitive")
    plane_level(F, gamma)
    C = in_plane_coordinates(gamma)
    base = F[0]
    return tuple(sorted({_apply(C, sub(p, base)) for p in F}))


def mixed_area_in_plane(F1: Iterable[Sequence[int]], F2: Iterable[Sequence[int]], gamma: Sequence[int]) -> int:
    """Mixed area of two sets lying in level planes of a primitive covector."""
    return mixed_area(to_plane(F1, gamma), to_plane(F2, gamma))


def area_in_plane(F: Iterable[Sequence[int]], gamma: Sequence[int]) -> int:
    return lattice_area(to_plane(F, gamma))


# ---------------------------------------------------------------------------
# fans of polygons


def dual_fan_2d(A: Iterable[Sequence[int]]) -> list[tuple[Covector, int]]:
    """Outer primitive edge normals of conv(A) in Z^2 weighted by lattice length."""
    A = as_support(A)
    if ambient_dim(A) != 2:
        raise LatticeError("dual_fan_2d needs points in Z^2")
    cyc = hull2_vertices(A)
    if len(cyc) == 1:
        raise LatticeError("a point has no dual fan")
    if len(cyc) == 2:
        p, q = cyc
        u = sub(q, p)
        nrm = primitive((u[1], -u[0]))
        length = gcd_all(u)
        rays = [(nrm, length), (scale(-1, nrm), length)]
    else:
        rays = []
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            u = sub(b, a)
            rays.append((primitive((u[1], -u[0])), gcd_all(u)))
    return sorted(rays)
