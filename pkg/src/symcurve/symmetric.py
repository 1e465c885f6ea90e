"""Support sets under the coordinate swap (a1, a2, a3) -> (a2, a1, a3).

Conventions: ``m = (1, -1, 0)`` spans the antidiagonal line, ``t(a) = a1 - a2``
is the functional with ``t(m) = 2`` and the diagonal plane is ``{a1 = a2}``.
This module classifies support sets into the exceptional types, computes
the denominator, the blinder edges with their derived data, the count of
intersection points of the proper and diagonal parts, slice counts and the
minimal non-exceptional witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

from . import lattice as lt
from .lattice import LatticeError, Point

M = (1, -1, 0)
TYPES = ("D", "E", "C1", "C2", "I10", "I1", "I2")


def t(a: Sequence[int]) -> int:
    return a[0] - a[1]


def inv(a: Sequence[int]) -> Point:
    return (a[1], a[0], a[2])


def involute(A: Iterable[Sequence[int]]) -> tuple[Point, ...]:
    A = support3(A)
    return tuple(sorted(inv(a) for a in A))


def support3(A: Iterable[Sequence[int]]) -> tuple[Point, ...]:
    A = lt.as_support(A)
    if lt.ambient_dim(A) != 3:
        raise LatticeError("symmetric support sets live in Z^3")
    return A


def diagonal_projection(A: Iterable[Sequence[int]]) -> tuple[Point, ...]:
    """A/m in the coordinates (a1 + a2, a3)."""
    return lt.project_along(A, M)


def pullback_from_quotient(c: Sequence[int]) -> Point:
    """Covector on Z^3 induced by a covector on Z^3/m in coordinates (a1+a2, a3)."""
    return (c[0], c[0], c[1])


def _is_antidiagonal(v: Sequence[int]) -> bool:
    return v[2] == 0 and v[0] == -v[1]


def denominator(A: Iterable[Sequence[int]]) -> int | None:
    """gcd of the differences of t over A; None when t is constant."""
    A = support3(A)
    if len(A) < 2:
        raise LatticeError("denominator needs at least two points")
    t0 = t(A[0])
    d = reduce(math.gcd, (abs(t(a) - t0) for a in A), 0)
    return d or None


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassificationReport:
    canonical_type: str
    flags: dict
    denominator: int | None
    witnesses: dict = field(default_factory=dict)
    c2_segment_length: int | None = None
    i2_length: int | None = None

    @property
    def exceptional(self) -> bool:
        return self.canonical_type != "NonExceptional"


def _levels(A: Sequence[Point]) -> dict[int, list[Point]]:
    out: dict[int, list[Point]] = {}
    for a in A:
        out.setdefault(t(a), []).append(a)
    return out


def _along_m(points: Sequence[Point]) -> bool:
    return all(_is_antidiagonal(lt.sub(p, points[0])) for p in points[1:])


def _c1_normal(A: Sequence[Point]) -> Point | None:
    diffs = lt.differences(list(A))
    if lt.rank(diffs + [M]) > 2:
        return None
    for v in diffs:
        if not _is_antidiagonal(v):
            return lt.primitive(lt.cross(M, v))
    return (0, 0, 1)


def _c2_data(A: Sequence[Point], levels) -> tuple[int, int] | None:
    for c in sorted(levels):
        rest = [a for a in A if t(a) != c]
        if not rest or _along_m(rest):
            q = max((abs(t(a) - c) for a in rest), default=0)
            return c, q
    return None


def _common_direction(groups: Iterable[Sequence[Point]]) -> Point | None | bool:
    """Common primitive direction (up to sign) of collinear groups, False if none."""
    direction = None
    for g in groups:
        if len(g) < 2:
            continue
        if not lt.is_collinear(g):
            return False
        u = lt.primitive(lt.sub(g[-1], g[0]))
        if u < (0, 0, 0):
            u = lt.scale(-1, u)
        if direction is None:
            direction = u
        elif u != direction:
            return False
    return direction


def _i2_options(levels) -> list[tuple[int, int]]:
    T = sorted(levels)
    if len(T) == 1:
        return [(T[0], 0)]
    if len(T) == 2:
        x, y = T
        opts = []
        if (x + y) % 2 == 0:
            opts.append(((x + y) // 2, (y - x) // 2))
        opts += [(x, y - x), (y, y - x)]
        return opts
    if len(T) == 3 and T[1] - T[0] == T[2] - T[1]:
        return [(T[1], T[1] - T[0])]
    return []


def _i2_data(levels) -> dict | None:
    """Shift class data for sets in the diagonal plane plus a line L and I(L).

    After a shift by mu with t(mu) = tau the middle level sits in the diagonal
    plane, and the condition becomes collinearity of
    A_+ together with I(A_-) + tau * m.
    """
    for tau, c in _i2_options(levels):
        plus = levels.get(tau + c, []) if c else []
        minus = levels.get(tau - c, []) if c else []
        folded = sorted(set(plus) | {lt.add(inv(a), lt.scale(tau, M)) for a in minus})
        if not folded or lt.is_collinear(folded):
            length = lt.lattice_length(folded) if folded else 0
            return {"tau": tau, "c": c, "folded": folded, "length": length}
    return None


def classify(A: Iterable[Sequence[int]]) -> ClassificationReport:
    """Evaluate every type predicate and report the first match in order."""
    A = support3(A)
    if len(A) < 2:
        raise LatticeError("classification needs at least two points")
    levels = _levels(A)
    flags = {}
    wit: dict = {}

    flags["D"] = len(levels) == 1
    if flags["D"]:
        wit["D"] = {"level": t(A[0])}

    flags["E"] = _along_m(A)
    if flags["E"]:
        wit["E"] = {"base": A[0], "direction": M}

    s = _c1_normal(A)
    flags["C1"] = s is not None
    if s is not None:
        wit["C1"] = {"normal": s, "level": lt.dot(s, A[0])}

    c2 = _c2_data(A, levels)
    flags["C2"] = c2 is not None
    if c2 is not None:
        wit["C2"] = {"plane_level": c2[0], "q": c2[1]}

    flags["I1"] = len(levels) <= 2
    if flags["I1"]:
        wit["I1"] = {"levels": sorted(levels)}
    direction = _common_direction(levels.values()) if flags["I1"] else False
    flags["I10"] = direction is not False
    if flags["I10"]:
        wit["I10"] = {"direction": direction}

    i2 = _i2_data(levels)
    flags["I2"] = i2 is not None
    if i2 is not None:
        wit["I2"] = {"tau": i2["tau"], "c": i2["c"], "line": i2["folded"]}

    canonical = next((name for name in TYPES if flags[name]), "NonExceptional")
    d = denominator(A)
    return ClassificationReport(
        canonical_type=canonical,
        flags=flags,
        denominator=d,
        witnesses=wit,
        c2_segment_length=c2[1] if (c2 is not None and canonical == "C2") else None,
        i2_length=i2["length"] if (i2 is not None and canonical == "I2") else None,
    )


def is_exceptional(A: Iterable[Sequence[int]]) -> bool:
    return classify(A).exceptional


# ---------------------------------------------------------------------------
# blinders


@dataclass(frozen=True)
class BlinderRecord:
    edge: tuple[Point, ...]
    gamma: Point
    h: int
    length: int  # lattice length of E in Z^3
    quotient_length: int  # lattice length of the image of E in A/m
    direction: Point
    coblinder: tuple[Point, ...]
    covol: int
    l: int
    critical: tuple[Point, ...]
    adjacent: tuple[Point, ...]
    preimage: tuple[Point, ...] = ()  # shifted points of A and I(A) off the level of E


def _coblinder(A, E, e, base):
    shifted = [lt.sub(a, base) for a in A]
    pre = sorted({p for p in shifted + [inv(p) for p in shifted] if t(p) != 0})
    return tuple(pre), lt.project_along(pre, e)


def _edges_through(cycle, v):
    k = len(cycle)
    j = cycle.index(v)
    return [(v, cycle[(j - 1) % k]), (v, cycle[(j + 1) % k])]


def _require_not_d(A):
    if len({t(a) for a in A}) == 1:
        raise LatticeError("support set of type D (t is constant)")


def blinders(A: Iterable[Sequence[int]]) -> list[BlinderRecord]:
    """Blinder edges of A with their multiplicity and coblinder data."""
    A = support3(A)
    _require_not_d(A)
    IA = tuple(sorted(inv(a) for a in A))
    facet_normals = _facet_normals(A) + _facet_normals(IA)
    out = []
    for face in lt.edges(A):
        E = face.points
        e = lt.primitive(lt.sub(E[-1], E[0]))
        if t(e) != 0:
            continue
        g0 = lt.primitive(lt.cross(M, e))
        gamma = None
        for g in (g0, lt.scale(-1, g0)):
            if lt.support_face(A, g) == E:
                gamma = g
        if gamma is None:
            continue
        top = lt.dot(gamma, E[0])
        level = t(E[0])
        h = top - max(lt.dot(gamma, a) for a in A if t(a) != level)
        if h < 1:
            raise AssertionError("blinder multiplicity must be positive")
        pre, cob = _coblinder(A, E, e, E[0])
        if _coblinder(A, E, e, E[-1])[1] != cob:
            raise AssertionError("coblinder depends on the base point")
        origin = (0, 0)
        with_origin = sorted(set(cob) | {origin})
        covol = lt.lattice_area(with_origin) - lt.lattice_area(cob)
        if covol < 1:
            raise AssertionError("coblinder covolume must be positive")
        cyc = lt.hull2_vertices(with_origin)
        # edges of conv(A_E + 0) \ conv(A_E) at the origin end at the nearest coblinder point
        lengths = set()
        for _, v in _edges_through(list(cyc), origin):
            on_ray = [lt.gcd_all(p) for p in cob if lt._cross2(origin, v, p) == 0 and lt.dot(p, v) > 0]
            lengths.add(min(on_ray))
        if len(lengths) != 1:
            raise AssertionError("edges through the origin have different lengths")
        P = lt.projection_matrix(e)
        IE = tuple(sorted(inv(a) for a in E))
        critical = set()
        for nrm, _ in lt.dual_fan_2d(cob):
            g = lt.primitive(tuple(sum(nrm[i] * P[i][j] for i in range(2)) for j in range(3)))
            if lt.support_face(A, g) == E and lt.support_face(IA, g) == IE:
                critical.add(g)
        if not critical:
            raise AssertionError("blinder without critical covectors")
        adjacent = set()
        for g in facet_normals:
            fa, fb = lt.support_face(A, g), lt.support_face(IA, g)
            if set(E) <= set(fa) and set(IE) <= set(fb) and (fa != E or fb != IE):
                adjacent.add(g)
        out.append(
            BlinderRecord(
                edge=E,
                gamma=gamma,
                h=h,
                length=lt.lattice_length(E),
                quotient_length=lt.lattice_length(diagonal_projection(E)),
                direction=e,
                coblinder=cob,
                covol=covol,
                l=lengths.pop(),
                critical=tuple(sorted(critical)),
                adjacent=tuple(sorted(adjacent)),
                preimage=pre,
            )
        )
    return out


def _facet_normals(A: Sequence[Point]) -> list[Point]:
    """Facet normals of conv(A); both plane normals for a planar hull."""
    P = lt.hull(A)
    if P.dim == 3:
        return [f.normal for f in P.facets]
    if P.dim == 2:
        nrm = lt._plane_normal(list(P.vertices))
        return [nrm, lt.scale(-1, nrm)]
    return []


def sharp_A(A: Iterable[Sequence[int]], blinder_list: Sequence[BlinderRecord] | None = None) -> int:
    """Intersection count of the proper part with one diagonal component."""
    A = support3(A)
    _require_not_d(A)
    if blinder_list is None:
        blinder_list = blinders(A)
    # h_E Vol(E) is the area of a triangle in A/m, so the base is measured there
    value = lt.lattice_area(diagonal_projection(A)) - sum(b.h * b.quotient_length for b in blinder_list)
    if value < 0:
        raise AssertionError("negative intersection count")
    return value


# ---------------------------------------------------------------------------
# slices


def slice_counts(A: Iterable[Sequence[int]], mu: Sequence[int]) -> tuple[int, int]:
    """(#1, #2): all and diagonal roots of f = f o I = 0 on a generic level of mu."""
    A = support3(A)
    mu = lt.as_point(mu)
    if len(mu) != 3 or mu[0] != mu[1]:
        raise LatticeError("slice direction must be fixed by the involution")
    if not lt.is_primitive(mu):
        raise LatticeError("slice direction must be primitive")
    d = denominator(A)
    if d is None:
        raise LatticeError("support set of type D (t is constant)")
    IA = involute(A)
    s1 = lt.mixed_area(lt.project_along(A, mu), lt.project_along(IA, mu))
    c = lt.primitive(lt.cross(M, mu))
    values = [lt.dot(c, a) for a in A]
    return s1, d * (max(values) - min(values))


def slice_polygon(A: Iterable[Sequence[int]], mu: Sequence[int]) -> tuple[Point, ...]:
    """Image of A under a -> (c(a), (t(a) - t0) / d) with c killing m and mu."""
    A = support3(A)
    d = denominator(A)
    if d is None:
        raise LatticeError("support set of type D (t is constant)")
    c = lt.primitive(lt.cross(M, lt.as_point(mu)))
    t0 = t(A[0])
    return tuple(sorted({(lt.dot(c, a), (t(a) - t0) // d) for a in A}))


# ---------------------------------------------------------------------------
# minimal non-exceptional witnesses


def _e(a: Sequence[int]) -> Point:
    return (a[0] + a[1], a[2])


def _adim(points) -> int:
    pts = sorted(set(points))
    return lt.affine_dim(pts)


def _triangle(B):
    b1, b2, b3 = sorted(B, key=t)
    c1, c2, c3 = t(b1), t(b2), t(b3)
    if not c1 < c2 < c3 or 2 * c2 == c1 + c3:
        return False
    return _adim([_e(b1), _e(b2), _e(b3)]) == 2


def _high(B):
    p = sorted(B, key=t)
    if len({t(b) for b in p}) != 4:
        return False
    return _e(p[0]) == _e(p[3]) and _adim([_e(p[0]), _e(p[1]), _e(p[2])]) == 2


def _skew(B):
    p = sorted(B, key=t)
    c = [t(b) for b in p]
    if len(set(c)) != 4:
        return False
    if 2 * c[2] == c[0] + c[3]:
        b1, b2, b3, b4 = p
    elif 2 * c[1] == c[0] + c[3]:
        b1, b2, b3, b4 = p[3], p[2], p[1], p[0]
    else:
        return False
    e1, e2, e3, e4 = map(_e, (b1, b2, b3, b4))
    return _adim([e1, e2, e3, e4]) == 2 and _adim([e1, e2, e4]) == 1 and e1 != e4


def _low(B):
    levels = _levels(B)
    T = sorted(levels)
    if len(T) != 3 or 2 * T[1] != T[0] + T[2] or len(levels[T[1]]) != 1:
        return False
    if len(levels[T[0]]) == 2:
        (b1, b2), b4 = levels[T[0]], levels[T[2]][0]
    elif len(levels[T[2]]) == 2:
        (b1, b2), b4 = levels[T[2]], levels[T[0]][0]
    else:
        return False
    b3 = levels[T[1]][0]
    e1, e2, e3, e4 = map(_e, (b1, b2, b3, b4))
    return _adim([e1, e2, e3, e4]) == 2 and _adim([e1, e2, e4]) == 2 and e3 != e4


SHAPES = (("Triangle", _triangle), ("SkewTetra", _skew), ("HighTetra", _high), ("LowTetra", _low))


def witness_shape(B: Sequence[Point]) -> str | None:
    for name, test in SHAPES:
        if (len(B) == 3) == (name == "Triangle") and test(B):
            return name
    return None


def minimal_witness(A: Iterable[Sequence[int]]) -> tuple[tuple[Point, ...], str] | None:
    """Smallest subset of one of the four witness shapes spanning the t-range of A."""
    A = support3(A)
    if len(A) < 2:
        raise LatticeError("witness search needs at least two points")
    lo = min(t(a) for a in A)
    hi = max(t(a) for a in A)
    for k in (3, 4):
        for B in combinations(A, k):
            tb = [t(b) for b in B]
            if min(tb) != lo or max(tb) != hi:
                continue
            shape = witness_shape(B)
            if shape is not None:
                return B, shape
    return None
