"""Slow brute-force re-implementations used as test oracles.

Nothing here calls the hull code of the lattice module. Volumes come from
lattice-point counting, faces and fans from scanning every covector in a box.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Iterable, Iterator, Sequence

import numpy as np

from .invariants import TropicalFan
from .lattice import LatticeError, Point, as_support

M = (1, -1, 0)
MAX_BOUND = 64


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def _inv(a):
    return (a[1], a[0]) + tuple(a[2:])


# ---------------------------------------------------------------------------
# covector boxes


@dataclass(frozen=True)
class CovectorBox:
    """All primitive integer covectors of max-norm at most bound."""

    bound: int
    dim: int

    def __post_init__(self):
        if self.bound < 1 or self.dim < 1:
            raise LatticeError("box bound and dimension must be positive")

    def array(self) -> np.ndarray:
        r = np.arange(-self.bound, self.bound + 1)
        grid = np.stack(np.meshgrid(*[r] * self.dim, indexing="ij"), axis=-1).reshape(-1, self.dim)
        g = np.gcd.reduce(np.abs(grid), axis=1)
        return grid[g == 1]

    def __iter__(self) -> Iterator[Point]:
        return (tuple(int(x) for x in row) for row in self.array())

    def __len__(self) -> int:
        return len(self.array())

    def doubled(self) -> "CovectorBox":
        return CovectorBox(2 * self.bound, self.dim)


def sufficient_bound(points: Sequence[Sequence[int]]) -> int:
    """Starting bound: coordinate spread plus one."""
    return max(max(c) - min(c) for c in zip(*points)) + 1


def _faces_array(P: np.ndarray, G: np.ndarray) -> np.ndarray:
    """Boolean matrix: row i marks the points of P maximizing covector G[i]."""
    values = G @ P.T
    return values == values.max(axis=1, keepdims=True)


# ---------------------------------------------------------------------------
# 2D area by Pick


def _half_planes(pts: Sequence[Point]):
    """Supporting lines through pairs of points, as (a, b, c) with a x + b y <= c on the set."""
    out = set()
    for p, q in combinations(pts, 2):
        a, b = q[1] - p[1], p[0] - q[0]
        g = gcd(a, b)
        a, b = a // g, b // g
        c = a * p[0] + b * p[1]
        vals = [a * x + b * y for x, y in pts]
        if max(vals) == c:
            out.add((a, b, c))
        if min(vals) == c:
            out.add((-a, -b, -c))
    return out


def _collinear(pts: Sequence[Point]) -> bool:
    o = pts[0]
    return all(_cross2(_sub(p, o), _sub(q, o)) == 0 for p in pts for q in pts)


def _cross2(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def vol2_pick(A: Iterable[Sequence[int]]) -> int:
    """Twice the Euclidean area of conv(A) via 2I + B - 2 with brute-force counting."""
    pts = list(as_support(A))
    if len(pts[0]) != 2:
        raise LatticeError("vol2_pick needs points in Z^2")
    if len(pts) < 3 or _collinear(pts):
        return 0
    H = _half_planes(pts)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    interior = boundary = 0
    for x, y in product(range(min(xs), max(xs) + 1), range(min(ys), max(ys) + 1)):
        slack = [c - a * x - b * y for a, b, c in H]
        if min(slack) < 0:
            continue
        if min(slack) == 0:
            boundary += 1
        else:
            interior += 1
    return 2 * interior + boundary - 2


def mixed_area_pick(P: Iterable[Sequence[int]], Q: Iterable[Sequence[int]]) -> int:
    """Mixed area by polarization of vol2_pick."""
    P, Q = list(as_support(P)), list(as_support(Q))
    PQ = {(p[0] + q[0], p[1] + q[1]) for p in P for q in Q}
    total = vol2_pick(PQ) - vol2_pick(P) - vol2_pick(Q)
    if total % 2:
        raise AssertionError("odd mixed area polarization")
    return total // 2


def hull_points_2d(A: Iterable[Sequence[int]], *, interior: bool = False) -> list[Point]:
    """Lattice points of conv(A) in Z^2 by brute force over the bounding box.

    With interior=True only points off every supporting line are kept.
    """
    pts = list(as_support(A))
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    box = product(range(min(xs), max(xs) + 1), range(min(ys), max(ys) + 1))
    if len(pts) == 1 or _collinear(pts):
        if interior:
            return []
        if len(pts) == 1:
            return pts
        o, q = pts[0], pts[1]
        return [p for p in box if _cross2(_sub(p, o), _sub(q, o)) == 0]
    H = _half_planes(pts)
    if interior:
        return [(x, y) for x, y in box if all(a * x + b * y < c for a, b, c in H)]
    return [(x, y) for x, y in box if all(a * x + b * y <= c for a, b, c in H)]


# ---------------------------------------------------------------------------
# 3D volume by Ehrhart interpolation


def _half_spaces(pts: Sequence[Point]):
    out = set()
    for p, q, r in combinations(pts, 3):
        n = _cross(_sub(q, p), _sub(r, p))
        g = _content(n)
        if g == 0:
            continue
        n = tuple(x // g for x in n)
        c = _dot(n, p)
        vals = [_dot(n, s) for s in pts]
        if max(vals) == c:
            out.add((n, c))
        if min(vals) == c:
            out.add((tuple(-x for x in n), -c))
    return out


def _count_dilate(H, pts, k: int) -> int:
    lo = [k * min(c) for c in zip(*pts)]
    hi = [k * max(c) for c in zip(*pts)]
    grid = np.stack(np.meshgrid(*[np.arange(a, b + 1) for a, b in zip(lo, hi)], indexing="ij"), axis=-1).reshape(-1, 3)
    ok = np.ones(len(grid), dtype=bool)
    for n, c in H:
        ok &= grid @ np.array(n) <= k * c
    return int(ok.sum())


def vol3_ehrhart(A: Iterable[Sequence[int]]) -> int:
    """Six times the volume of conv(A) from the cubic Ehrhart polynomial."""
    pts = list(as_support(A))
    if len(pts[0]) != 3:
        raise LatticeError("vol3_ehrhart needs points in Z^3")
    H = _half_spaces(pts)
    if not H or not any(_dot(n, s) < c for n, c in H for s in pts):
        raise LatticeError("degenerate hull: use vol2_pick after a basis change")
    counts = [1] + [_count_dilate(H, pts, k) for k in (1, 2, 3)]
    # third finite difference of a cubic is 6 times its leading coefficient
    lead = Fraction(counts[3] - 3 * counts[2] + 3 * counts[1] - counts[0], 6)
    if lead.denominator not in (1, 2, 3, 6):
        raise AssertionError("Ehrhart interpolation produced an unexpected coefficient")
    six = 6 * lead
    if six.denominator != 1:
        raise AssertionError("lattice volume is not an integer")
    return int(six)


# ---------------------------------------------------------------------------
# faces and fans by covector scan


def _affine_rank(points: Sequence[Point]) -> int:
    if len(points) < 2:
        return 0
    return int(np.linalg.matrix_rank(np.array([_sub(p, points[0]) for p in points[1:]], dtype=float)))


def _exposed(pts: Sequence[Point], G: Sequence[Point]) -> list[tuple[Point, tuple[Point, ...]]]:
    if not G:
        return []
    mask = _faces_array(np.array(pts), np.array(sorted(G)))
    return [(g, tuple(pts[i] for i in np.flatnonzero(row))) for g, row in zip(sorted(G), mask)]


def face_candidates(A: Iterable[Sequence[int]]) -> set[Point]:
    """A finite covector list that exposes every face of A.

    Facets are exposed by normals built from pairs of differences. Each lower face of
    a full-dimensional hull is exposed by the sum of at most three facet normals of
    facets containing it; a planar or collinear set is handled inside its span.
    """
    pts = list(as_support(A))
    n = len(pts[0])
    diffs = _differences(pts)
    if n == 1:
        return {(1,), (-1,)}
    if n == 2:
        normals = _both_sides((u[1], -u[0]) for u in diffs)
    else:
        normals = _both_sides(_cross(u, v) for u, v in combinations(sorted(diffs), 2))
        if not normals:
            # collinear in Z^3: the two ends are exposed by the direction itself
            return _both_sides(diffs)
        top = _affine_rank(pts)
        if top == 2:
            plane = next(iter(normals))
            normals = _both_sides(_cross(plane, u) for u in diffs)
    facet_rank = _affine_rank(pts) - 1
    facets = [g for g, F in _exposed(pts, normals) if _affine_rank(list(F)) == facet_rank]
    out = set(facets) | _both_sides(diffs if n == 2 or facet_rank == 0 else ())
    for k in (2, 3):
        out |= _both_sides(tuple(sum(c) for c in zip(*combo)) for combo in combinations(facets, k))
    return out


def faces_by_enumeration(A: Iterable[Sequence[int]], box: CovectorBox | None = None, *, fixed_point: bool = True) -> set[tuple[Point, ...]]:
    """All faces A^gamma, including A itself (gamma = 0).

    Without a box the exhaustive face_candidates list is scanned. With a box every
    primitive covector in it is scanned, doubling the box until nothing new appears.
    """
    pts = list(as_support(A))

    def scan(G):
        found = {F for _, F in _exposed(pts, G)}
        found.add(tuple(pts))
        return found

    if box is None:
        return scan(face_candidates(pts))
    found = scan(list(box))
    while fixed_point:
        bigger = scan(list(box.doubled()))
        if bigger == found:
            break
        box, found = box.doubled(), bigger
        if box.bound > MAX_BOUND:
            raise AssertionError("face scan has not reached a fixed point; enlarge the box")
    return found


def _plane_area(F: Sequence[Point], gamma: Sequence[int]) -> int:
    """Lattice area of a polygon lying in a plane orthogonal to the primitive gamma."""
    k = next(i for i, g in enumerate(gamma) if g)
    proj = [tuple(c for i, c in enumerate(p) if i != k) for p in F]
    # dropping coordinate k maps the plane lattice onto a sublattice of index |gamma_k|
    area = vol2_pick(proj)
    if area % abs(gamma[k]):
        raise AssertionError("in-plane area is not divisible by the projection index")
    return area // abs(gamma[k])


def _plane_mixed_area(F1: Sequence[Point], F2: Sequence[Point], gamma: Sequence[int]) -> int:
    """Lattice mixed area by polarization: (Vol(F1 + F2) - Vol(F1) - Vol(F2)) / 2."""
    s = {tuple(a + b for a, b in zip(p, q)) for p in F1 for q in F2}
    twice = _plane_area(sorted(s), gamma) - _plane_area(F1, gamma) - _plane_area(F2, gamma)
    if twice % 2:
        raise AssertionError("polarized mixed area is odd")
    return twice // 2


def _quotient(u: Sequence[int], e: Sequence[int]) -> Point:
    # u -> u x e identifies Z^3 / Z e with the plane lattice orthogonal to e
    return _cross(u, e)


@dataclass(frozen=True)
class _Blinder:
    edge: tuple[Point, ...]
    direction: Point
    vol: int
    l: int
    preimage: tuple[Point, ...]


def _length(points: Sequence[Point]) -> int:
    return max((_content(_sub(p, q)) for p in points for q in points), default=0)


def _primitive(v) -> Point:
    g = _content(v)
    return tuple(x // g for x in v)


def _face(points: Sequence[Point], g) -> tuple[Point, ...]:
    vals = [_dot(g, p) for p in points]
    top = max(vals)
    return tuple(p for p, v in zip(points, vals) if v == top)


def _blinder_at(A: list[Point], g) -> _Blinder | None:
    """The blinder exposed by a covector vanishing on the antidiagonal, if any."""
    E = _face(A, g)
    if len(E) < 2:
        return None
    e = _primitive(_sub(E[-1], E[0]))
    if any(_content(_cross(_sub(p, E[0]), e)) for p in E) or e[0] != e[1]:
        return None
    shifted = [_sub(a, E[0]) for a in A]
    pre = sorted({p for p in shifted + [_inv(p) for p in shifted] if p[0] != p[1]})
    images = sorted({_quotient(p, e) for p in pre})
    # rays bounding the cone spanned by the coblinder
    lengths = set()
    for p in images:
        signs = {np.sign(_dot(_cross(p, q), e)) for q in images}
        if signs <= {0, 1} or signs <= {0, -1}:
            on_ray = [q for q in images if _content(_cross(p, q)) == 0 and _dot(p, q) > 0]
            lengths.add(min(_content(q) for q in on_ray))
    if len(lengths) != 1:
        raise AssertionError(f"boundary rays of the coblinder have lengths {lengths}")
    return _Blinder(E, e, _length(E), lengths.pop(), tuple(pre))


def _differences(points: Sequence[Point]) -> set[Point]:
    return {_primitive(_sub(p, q)) for p, q in combinations(points, 2)}


def _blinders_from(A: list[Point], covectors: Iterable[Point]) -> list[_Blinder]:
    out = {}
    for g in covectors:
        if g[0] == g[1]:
            b = _blinder_at(A, g)
            if b is not None:
                out[b.edge] = b
    return list(out.values())


def _both_sides(vectors: Iterable[Point]) -> set[Point]:
    out = set()
    for v in vectors:
        if any(v):
            v = _primitive(v)
            out.add(v)
            out.add(tuple(-x for x in v))
    return out


def relevant_covectors(A: Iterable[Sequence[int]]) -> set[Point]:
    """Every primitive covector whose faces on A and I(A) both have two or more points
    and span a plane, plus every covector orthogonal to a blinder and to a coblinder chord.

    Covectors outside this set expose a single point of A or of I(A), or two parallel
    segments that are not a blinder pair, and so carry multiplicity 0.
    """
    A = list(as_support(A))
    IA = sorted(_inv(a) for a in A)
    du, dv = _differences(A), _differences(IA)
    cands = _both_sides(_cross(u, v) for u in du for v in dv | du)
    sym = _both_sides(_cross(M, u) for u in du if u[0] == u[1])
    cands |= sym
    for b in _blinders_from(A, sym):
        cands |= _both_sides(_cross(b.direction, w) for w in _differences(b.preimage))
    return cands


def fan_by_enumeration(A: Iterable[Sequence[int]], box: CovectorBox | None = None, *, fixed_point: bool = True) -> TropicalFan:
    """Fan of the symmetric curve by applying the multiplicity rules covector by covector.

    With a box, every primitive covector in it is examined and the box is doubled once
    to confirm a fixed point. Without a box, the exhaustive finite list of
    relevant_covectors is used instead.
    """
    A = list(as_support(A))
    if len(A[0]) != 3:
        raise LatticeError("fan_by_enumeration needs points in Z^3")
    if len({a[0] - a[1] for a in A}) == 1:
        raise LatticeError("support set of type D (t is constant)")
    IA = sorted(_inv(a) for a in A)

    def evaluate(G: np.ndarray) -> TropicalFan:
        bl = _blinders_from(A, (tuple(int(x) for x in g) for g in G[G[:, 0] == G[:, 1]]))
        ma = _faces_array(np.array(A), G)
        mb = _faces_array(np.array(IA), G)
        keep = (ma.sum(axis=1) >= 2) & (mb.sum(axis=1) >= 2)
        pairs = []
        for g, ra, rb in zip(G[keep], ma[keep], mb[keep]):
            g = tuple(int(x) for x in g)
            fa = tuple(A[i] for i in np.flatnonzero(ra))
            fb = tuple(IA[i] for i in np.flatnonzero(rb))
            pairs.append((g, _multiplicity(g, fa, fb, bl)))
        return TropicalFan.from_pairs(pairs)

    if box is None:
        fan = evaluate(np.array(sorted(relevant_covectors(A)), dtype=np.int64).reshape(-1, 3))
    else:
        fan = evaluate(box.array())
        if fixed_point and evaluate(box.doubled().array()) != fan:
            raise AssertionError("fan scan has not reached a fixed point; enlarge the box")
    if not fan.is_balanced():
        raise AssertionError("enumerated fan is not balanced")
    return fan


def _multiplicity(g, fa, fb, bl: list[_Blinder]) -> int:
    sa, sb = set(fa), set(fb)
    correction = 0
    for b in bl:
        IE = {_inv(p) for p in b.edge}
        if sa == set(b.edge) and sb == IE:
            values = [_dot(g, p) for p in b.preimage]
            top = max(values)
            face = [_quotient(p, b.direction) for p, v in zip(b.preimage, values) if v == top]
            return b.vol * _length(face)
        if set(b.edge) <= sa and IE <= sb:
            correction += b.vol * b.l
    return _plane_mixed_area(fa, fb, g) - correction


# ---------------------------------------------------------------------------
# small-set corpora


def seed_from_env(default: int = 0) -> int:
    return int(os.environ.get("SYMCURVE_SEED", default))


def small_set_enumerator(
    box: Sequence[tuple[int, int]],
    sizes: Sequence[int] | range,
    *,
    sample: int | None = None,
    seed: int | None = None,
) -> Iterator[tuple[Point, ...]]:
    """All subsets of the lattice box with the given sizes, or a seeded sample of them.

    box lists an inclusive (lo, hi) range per coordinate.
    """
    cells = list(product(*[range(lo, hi + 1) for lo, hi in box]))
    if sample is None:
        for k in sizes:
            yield from combinations(cells, k)
        return
    rng = random.Random(seed_from_env() if seed is None else seed)
    sizes = list(sizes)
    for _ in range(sample):
        k = rng.choice(sizes)
        yield tuple(sorted(rng.sample(cells, k)))


def random_supports(
    count: int,
    *,
    dim: int = 3,
    coords: tuple[int, int] = (-3, 3),
    sizes: Sequence[int] | range = range(3, 9),
    seed: int | None = None,
    accept=None,
) -> list[tuple[Point, ...]]:
    """Seeded random support sets, optionally filtered by a predicate."""
    rng = random.Random(seed_from_env() if seed is None else seed)
    sizes = list(sizes)
    out = []
    while len(out) < count:
        k = rng.choice(sizes)
        pts = {tuple(rng.randint(*coords) for _ in range(dim)) for _ in range(k)}
        if len(pts) < min(sizes):
            continue
        A = tuple(sorted(pts))
        if accept is None or accept(A):
            out.append(A)
    return out
