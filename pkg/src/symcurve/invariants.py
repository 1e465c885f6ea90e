"""Euler characteristics, tropical fans, genus and the aggregated curve report."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import lattice as lt
from . import symmetric as sy
from .lattice import LatticeError, Point


class ExceptionalInputError(LatticeError):
    """A formula was requested outside its hypotheses."""


@dataclass(frozen=True)
class TropicalFan:
    """Weighted primitive rays, sorted by generator."""

    rays: tuple[tuple[Point, int], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Sequence[int], int]]) -> "TropicalFan":
        acc: Counter = Counter()
        for g, w in pairs:
            if not lt.is_primitive(g):
                raise LatticeError(f"ray generator {tuple(g)} is not primitive")
            acc[tuple(g)] += w
        if any(w < 0 for w in acc.values()):
            raise AssertionError("negative ray multiplicity")
        return cls(tuple(sorted((g, w) for g, w in acc.items() if w)))

    @property
    def total(self) -> int:
        return sum(w for _, w in self.rays)

    def weighted_sum(self) -> Point:
        if not self.rays:
            return ()
        n = len(self.rays[0][0])
        return tuple(sum(w * g[i] for g, w in self.rays) for i in range(n))

    def is_balanced(self) -> bool:
        return not any(self.weighted_sum())

    def as_dict(self) -> dict[Point, int]:
        return dict(self.rays)

    def __sub__(self, other: "TropicalFan") -> "TropicalFan":
        acc = Counter(self.as_dict())
        acc.subtract(other.as_dict())
        return TropicalFan.from_pairs(acc.items())

    def __add__(self, other: "TropicalFan") -> "TropicalFan":
        return TropicalFan.from_pairs(list(self.rays) + list(other.rays))

    def scaled(self, k: int) -> "TropicalFan":
        return TropicalFan.from_pairs((g, k * w) for g, w in self.rays)


def _balanced(fan: TropicalFan) -> TropicalFan:
    if not fan.is_balanced():
        raise AssertionError(f"tropical fan is not balanced: {fan.weighted_sum()}")
    return fan


def dual_fan_2d(B: Iterable[Sequence[int]]) -> TropicalFan:
    """Outer edge normals of a polygon weighted by edge lattice lengths."""
    return _balanced(TropicalFan.from_pairs(lt.dual_fan_2d(B)))


def pullback_diagonal_fan(A: Iterable[Sequence[int]]) -> TropicalFan:
    """Dual fan of conv(A/m) pulled back to covectors on Z^3."""
    fan = dual_fan_2d(sy.diagonal_projection(A))
    return TropicalFan.from_pairs((sy.pullback_from_quotient(g), w) for g, w in fan.rays)


# ---------------------------------------------------------------------------
# shared data


@dataclass(frozen=True)
class _Data:
    A: tuple[Point, ...]
    IA: tuple[Point, ...]
    classification: sy.ClassificationReport
    blinders: tuple[sy.BlinderRecord, ...]
    d: int | None
    sharp: int | None
    cache: dict = field(default_factory=dict, compare=False, repr=False)


def _data(A) -> _Data:
    A = sy.support3(A)
    cls = sy.classify(A)
    if cls.canonical_type == "D":
        raise ExceptionalInputError("support set of type D (t is constant)")
    bl = tuple(sy.blinders(A))
    return _Data(A, sy.involute(A), cls, bl, cls.denominator, sy.sharp_A(A, bl))


def _require_nonexceptional(data: _Data):
    if data.classification.exceptional:
        raise ExceptionalInputError(f"support set of exceptional type {data.classification.canonical_type}")


# ---------------------------------------------------------------------------
# Euler characteristics


def euler_symmetric(A: Iterable[Sequence[int]], data: _Data | None = None) -> int:
    """Euler characteristic of the generic curve f = f o I = 0."""
    data = data or _data(A)
    if "euler" not in data.cache:
        A, IA = data.A, data.IA
        mv = lt.mixed_volume3(A, IA, lt.minkowski_sum(lt.vertices(A), lt.vertices(IA)))
        data.cache["euler"] = -mv + data.d * data.sharp + sum(b.covol * b.length for b in data.blinders)
    return data.cache["euler"]


def euler_diagonal_component(A: Iterable[Sequence[int]]) -> int:
    """Euler characteristic of one diagonal component: a plane curve on A/m."""
    return -lt.lattice_area(sy.diagonal_projection(A))


def euler_proper(A: Iterable[Sequence[int]], data: _Data | None = None) -> int:
    """Euler characteristic of the proper part (non-exceptional A only)."""
    data = data or _data(A)
    _require_nonexceptional(data)
    e = euler_symmetric(A, data)
    blinder_sum = sum(b.h * b.quotient_length for b in data.blinders)
    return e + 2 * data.d * data.sharp + data.d * blinder_sum


def _euler_proper_unscaled(data: _Data) -> int:
    # variant with coefficient 1 on the blinder sum, kept for debug output
    e = euler_symmetric(data.A, data)
    return e + 2 * data.d * data.sharp + sum(b.h * b.quotient_length for b in data.blinders)


# ---------------------------------------------------------------------------
# tropical fans


def _plane_normals(points) -> list[Point]:
    P = lt.hull(points)
    if P.dim == 3:
        return [f.normal for f in P.facets]
    if P.dim == 2:
        n = lt._plane_normal(list(P.vertices))
        return [n, lt.scale(-1, n)]
    return []


def _fan_candidates(data: _Data) -> set[Point]:
    A, IA = data.A, data.IA
    vs = lt.vertices(lt.minkowski_sum(lt.vertices(A), lt.vertices(IA)))
    cands = set(_plane_normals(vs)) | set(_plane_normals(A)) | set(_plane_normals(IA))
    for b in data.blinders:
        P = lt.projection_matrix(b.direction)
        for nrm, _ in lt.dual_fan_2d(b.coblinder):
            cands.add(lt.primitive(tuple(sum(nrm[i] * P[i][j] for i in range(2)) for j in range(3))))
    return cands


def ray_multiplicity(data: _Data, gamma: Sequence[int]) -> int:
    """Multiplicity of a primitive covector in the fan of the symmetric curve.

    Critical covectors for a blinder E weigh Vol(E) times the length of the
    coblinder face; covectors adjacent to blinders weigh the mixed area of the
    faces minus Vol(E) * l_E for every such blinder; all others weigh the
    mixed area of A^gamma and I(A)^gamma.
    """
    gamma = tuple(gamma)
    fa = lt.support_face(data.A, gamma)
    fb = lt.support_face(data.IA, gamma)
    sa, sb = set(fa), set(fb)
    correction = 0
    for b in data.blinders:
        IE = tuple(sorted(sy.inv(p) for p in b.edge))
        if fa == b.edge and fb == IE:
            values = [lt.dot(gamma, p) for p in b.preimage]
            top = max(values)
            face = [p for p, v in zip(b.preimage, values) if v == top]
            return b.length * lt.lattice_length(lt.project_along(face, b.direction))
        if set(b.edge) <= sa and set(IE) <= sb:
            correction += b.length * b.l
    return lt.mixed_area_in_plane(fa, fb, gamma) - correction


def tropical_fan_symmetric(A: Iterable[Sequence[int]], data: _Data | None = None) -> TropicalFan:
    """Tropical fan of the whole symmetric curve."""
    data = data or _data(A)
    pairs = []
    for g in sorted(_fan_candidates(data)):
        w = ray_multiplicity(data, g)
        if w < 0:
            raise AssertionError(f"negative multiplicity at {g}")
        pairs.append((g, w))
    return _balanced(TropicalFan.from_pairs(pairs))


def tropical_fan_proper(A: Iterable[Sequence[int]], data: _Data | None = None) -> TropicalFan:
    """Tropical fan of the proper part (non-exceptional A only)."""
    data = data or _data(A)
    _require_nonexceptional(data)
    total = tropical_fan_symmetric(A, data)
    diag = pullback_diagonal_fan(data.A).scaled(data.d)
    acc = Counter(total.as_dict())
    acc.subtract(diag.as_dict())
    if any(w < 0 for w in acc.values()):
        raise AssertionError("subtracting the diagonal fan left a negative multiplicity")
    return _balanced(TropicalFan.from_pairs(acc.items()))


def tropical_fan_diagonal(A: Iterable[Sequence[int]], data: _Data | None = None) -> TropicalFan:
    """Fan of the d diagonal components together."""
    data = data or _data(A)
    return _balanced(pullback_diagonal_fan(data.A).scaled(data.d))


def genus_proper(A: Iterable[Sequence[int]], data: _Data | None = None) -> int:
    """Genus of the proper part: (2 - e_prop - S) / 2 with S the fan weight."""
    data = data or _data(A)
    e = euler_proper(A, data)
    S = tropical_fan_proper(A, data).total
    twice = 2 - e - S
    if twice % 2 or twice < 0:
        raise AssertionError(f"genus bookkeeping failed: 2 - e - S = {twice}")
    return twice // 2


# ---------------------------------------------------------------------------
# curve report


@dataclass
class CurveReport:
    classification: sy.ClassificationReport
    status: str
    d: int | None = None
    sharp: int | None = None
    euler_total: int | None = None
    euler_proper: int | None = None
    genus_proper: int | None = None
    fan_total: TropicalFan | None = None
    fan_proper: TropicalFan | None = None
    ray_count_sum: int | None = None
    blinders: tuple = ()
    diagonal: dict | None = None
    connected: bool | None = None
    connectivity_reason: str = ""
    component_counts: dict = field(default_factory=dict)
    singular_points: int | None = None
    debug: dict = field(default_factory=dict)


def _level_sets(A):
    levels = {}
    for a in A:
        levels.setdefault(sy.t(a), []).append(a)
    return [levels[k] for k in sorted(levels)]


def curve_report(A: Iterable[Sequence[int]]) -> CurveReport:
    """Everything known about the generic symmetric curve supported at A."""
    from . import bkk

    A = sy.support3(A)
    cls = sy.classify(A)
    kind = cls.canonical_type
    if kind == "D":
        return CurveReport(
            cls,
            status="surface",
            connectivity_reason="t is constant on A: f and f o I coincide up to a monomial, the zero set is a surface",
            component_counts={"dimension": 2},
        )
    data = _data(A)
    rep = CurveReport(cls, status="curve", d=data.d, sharp=data.sharp, blinders=data.blinders)
    rep.euler_total = euler_symmetric(A, data)
    rep.fan_total = tropical_fan_symmetric(A, data)
    quotient = sy.diagonal_projection(A)
    if kind == "E":
        rep.status = "empty"
        rep.connected = False
        rep.connectivity_reason = "A lies on a line in the antidiagonal direction: the curve is empty"
        rep.component_counts = {"total": 0}
        return rep
    if kind == "C1":
        s = cls.witnesses["C1"]["normal"]
        count = lt.mixed_area_in_plane(A, data.IA, s)
        rep.component_counts = {"total": count}
        rep.connected = count == 1
        rep.connectivity_reason = f"A lies in a plane containing the antidiagonal direction: {count} shifted one-dimensional tori"
        return rep
    if kind == "C2":
        q = cls.c2_segment_length
        sheet = bkk.irreducibility_check([quotient])
        per_sheet = sheet.count if sheet.status == "reducible" else (0 if sheet.status == "empty" else 1)
        rep.component_counts = {"sheets": q, "per_sheet": per_sheet, "total": q * per_sheet}
        rep.connected = q == 1 and per_sheet == 1
        rep.connectivity_reason = f"plane part plus antidiagonal line: {q} disjoint sheets, each a plane curve on A/m"
        return rep
    diag_each = {
        "count": data.d,
        "support": quotient,
        "euler_each": euler_diagonal_component(A),
        "genus_each": lt.interior_lattice_points(quotient),
        "intersections_each": data.sharp,
    }
    rep.diagonal = diag_each
    if kind in ("I10", "I1"):
        lo, hi = _level_sets(A)
        proper = lt.mixed_area_in_plane(lo, hi, sy.M)
        rep.component_counts = {"diagonal": data.d, "proper": proper}
        if proper == 0:
            rep.connected = data.d == 1
            rep.connectivity_reason = f"two parallel lines: empty proper part and {data.d} disjoint diagonal components"
        else:
            rep.connected = True
            rep.connectivity_reason = "every proper component meets every diagonal component"
        rep.singular_points = data.d * data.sharp
        return rep
    if kind == "I2":
        rep.component_counts = {"diagonal": data.d, "proper": cls.i2_length}
        rep.connected = True
        rep.connectivity_reason = "every proper component meets every diagonal component"
        rep.singular_points = data.d * data.sharp
        return rep
    rep.euler_proper = euler_proper(A, data)
    rep.fan_proper = tropical_fan_proper(A, data)
    rep.ray_count_sum = rep.fan_proper.total
    rep.genus_proper = genus_proper(A, data)
    rep.component_counts = {"diagonal": data.d, "proper": 1}
    rep.connected = True
    rep.connectivity_reason = "every proper component meets every diagonal component"
    rep.singular_points = data.d * data.sharp
    rep.debug = {"euler_proper_unscaled_blinder_sum": _euler_proper_unscaled(data)}
    return rep
