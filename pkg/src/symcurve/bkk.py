"""Generic complete intersections: root counts, Euler characteristics, fans, genus.

Also holds the comparison of MV(P, J(P)) with twice the horizontal length of
P, where J is the reflection (x, y) -> (x, -y).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from . import lattice as lt
from .invariants import TropicalFan, dual_fan_2d
from .lattice import LatticeError, Point


def _supports(sets: Sequence[Iterable[Sequence[int]]]) -> tuple[list[tuple[Point, ...]], int]:
    supports = [lt.as_support(S) for S in sets]
    if not supports:
        raise LatticeError("at least one support set is needed")
    dims = {lt.ambient_dim(S) for S in supports}
    if len(dims) != 1:
        raise LatticeError("support sets must share the ambient dimension")
    return supports, dims.pop()


def mixed_volume(*sets: Iterable[Sequence[int]]) -> int:
    """Lattice mixed volume of n support sets in Z^n, n <= 3."""
    supports, n = _supports(sets)
    if len(supports) != n:
        raise LatticeError(f"{len(supports)} support sets given in dimension {n}")
    if n == 1:
        return lt.lattice_length(supports[0])
    if n == 2:
        return lt.mixed_area(*supports)
    return lt.mixed_volume3(*supports)


def bkk_count(*sets: Iterable[Sequence[int]]) -> int:
    """Number of roots in the torus of a generic square system with these supports."""
    return mixed_volume(*sets)


def _compositions(n: int, k: int):
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def ci_euler(*sets: Iterable[Sequence[int]]) -> int:
    """Euler characteristic of a generic complete intersection in the torus."""
    supports, n = _supports(sets)
    k = len(supports)
    if not 1 <= k <= n:
        raise LatticeError("need between 1 and n support sets")
    total = 0
    for comp in _compositions(n, k):
        args = [S for S, mult in zip(supports, comp) for _ in range(mult)]
        total += mixed_volume(*args)
    return (-1) ** (n - k) * total


def ci_tropical_fan(*sets: Iterable[Sequence[int]]) -> TropicalFan:
    """Tropical fan of a generic complete-intersection curve in the torus."""
    supports, n = _supports(sets)
    if len(supports) != n - 1:
        raise LatticeError("a curve in dimension n needs n - 1 support sets")
    if n == 2:
        return dual_fan_2d(supports[0])
    if n != 3:
        raise LatticeError("curves are supported in dimension 2 or 3")
    A1, A2 = supports
    sum_vertices = lt.vertices(lt.minkowski_sum(lt.vertices(A1), lt.vertices(A2)))
    P = lt.hull(sum_vertices)
    if P.dim == 3:
        normals = [f.normal for f in P.facets]
    elif P.dim == 2:
        nrm = lt._plane_normal(list(P.vertices))
        normals = [nrm, lt.scale(-1, nrm)]
    else:
        normals = []
    pairs = [(g, lt.mixed_area_in_plane(lt.support_face(A1, g), lt.support_face(A2, g), g)) for g in normals]
    fan = TropicalFan.from_pairs(pairs)
    if not fan.is_balanced():
        raise AssertionError("complete-intersection fan is not balanced")
    return fan


@dataclass(frozen=True)
class IrreducibilityVerdict:
    status: str  # "empty", "reducible" or "irreducible"
    count: int | None = None
    reason: str = ""

    @property
    def connected(self) -> bool:
        return self.status == "irreducible"


def _span_rank(group: Sequence[Sequence[Point]]) -> int:
    vectors = [lt.sub(p, S[0]) for S in group for p in S[1:]]
    return lt.rank(vectors) if vectors else 0


def _subspace_mixed_volume(group: Sequence[Sequence[Point]], n: int) -> int:
    """Mixed volume of q sets shifted into a common q-dimensional sublattice."""
    q = len(group)
    shifted = [[lt.sub(p, S[0]) for p in S] for S in group]
    if q == 1:
        return lt.lattice_length(shifted[0])
    # q == 2 inside Z^3: the common plane has a primitive normal
    vectors = [v for S in shifted for v in S if any(v)]
    nrm = None
    for a, b in combinations(vectors, 2):
        c = lt.cross(a, b)
        if any(c):
            nrm = lt.primitive(c)
            break
    return lt.mixed_area_in_plane(shifted[0], shifted[1], nrm)


def irreducibility_check(sets: Sequence[Iterable[Sequence[int]]]) -> IrreducibilityVerdict:
    """Emptiness and irreducibility of a generic complete intersection."""
    supports, n = _supports(sets)
    k = len(supports)
    for q in range(1, k + 1):
        for group in combinations(supports, q):
            if _span_rank(group) <= q - 1:
                return IrreducibilityVerdict("empty", 0, f"{q} of the sets fit in a common {q - 1}-dimensional subspace")
    if k >= n:
        count = mixed_volume(*supports)
        status = "irreducible" if count == 1 else "reducible"
        return IrreducibilityVerdict(status, count, "zero-dimensional: one component per root")
    for q in range(1, min(k, n - 1) + 1):
        for group in combinations(supports, q):
            if _span_rank(group) == q:
                mv = _subspace_mixed_volume(group, n)
                if mv > 1:
                    return IrreducibilityVerdict(
                        "reducible", mv, f"{q} of the sets fit in a common {q}-dimensional subspace with mixed volume {mv}"
                    )
    return IrreducibilityVerdict("irreducible", 1, "no subset of the supports is degenerate")


def ci_genus(*sets: Iterable[Sequence[int]]) -> int:
    """Genus of a generic connected complete-intersection curve."""
    supports, n = _supports(sets)
    verdict = irreducibility_check(supports)
    if not verdict.connected:
        raise LatticeError(f"curve is not connected: {verdict.reason}")
    total = supports[0]
    for S in supports[1:]:
        total = lt.minkowski_sum(lt.vertices(total), lt.vertices(S))
    mv = mixed_volume(*supports, total)
    S = ci_tropical_fan(*supports).total
    twice = 2 + mv - S
    if twice % 2 or twice < 0:
        raise AssertionError("genus bookkeeping failed")
    return twice // 2


# ---------------------------------------------------------------------------
# MV(P, J(P)) against 2 L(P)


@dataclass(frozen=True)
class LengthComparison:
    mixed_area: int
    twice_length: int
    strict: bool
    shape: str | None  # None, "vertical line", "stripe" or "cross"


def _hull_lattice_points(P: Sequence[Point]) -> list[Point]:
    cyc = lt.hull2_vertices(P)
    xs = [p[0] for p in P]
    ys = [p[1] for p in P]
    out = []
    for x, y in product(range(min(xs), max(xs) + 1), range(min(ys), max(ys) + 1)):
        if _inside(cyc, (x, y)):
            out.append((x, y))
    return out


def _inside(cyc, p) -> bool:
    if len(cyc) == 1:
        return p == cyc[0]
    if len(cyc) == 2:
        a, b = cyc
        if lt._cross2(a, b, p) != 0:
            return False
        return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    return all(lt._cross2(a, b, p) >= 0 for a, b in zip(cyc, cyc[1:] + cyc[:1]))


def exceptional_shape(P: Iterable[Sequence[int]]) -> str | None:
    P = lt.as_support(P)
    xs = {p[0] for p in P}
    ys = [p[1] for p in P]
    if len(xs) == 1:
        return "vertical line"
    if max(ys) - min(ys) <= 1:
        return "stripe"
    if max(ys) - min(ys) == 2:
        mid = min(ys) + 1
        off = [p for p in _hull_lattice_points(P) if p[1] != mid]
        if len(off) == 2 and off[0][0] == off[1][0]:
            return "cross"
    return None


def mv_vs_length(P: Iterable[Sequence[int]]) -> LengthComparison:
    """Compare MV(P, J(P)) with twice the length of the horizontal projection."""
    P = lt.as_support(P)
    if lt.ambient_dim(P) != 2:
        raise LatticeError("mv_vs_length needs points in Z^2")
    JP = [(x, -y) for x, y in P]
    mv = lt.mixed_area(P, JP)
    xs = [p[0] for p in P]
    twice = 2 * (max(xs) - min(xs))
    shape = exceptional_shape(P)
    strict = mv > twice
    if strict != (shape is None):
        raise AssertionError(f"mixed area comparison fails for {P}: MV={mv}, 2L={twice}, shape={shape}")
    return LengthComparison(mv, twice, strict, shape)
