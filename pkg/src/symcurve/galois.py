"""Galois groups of generic one-parameter polynomial families.

A family sum_j c_j(t) x^j is described by its support A in Z^2: the point
(j, k) is present when t^k occurs in c_j. The covering of the t-line by the
nonzero roots has N - n sheets, where n and N are the extreme x-exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from . import lattice as lt
from .lattice import LatticeError, Point


@dataclass(frozen=True)
class FamilySupport:
    """Support of a family as points (x-exponent, t-exponent)."""

    points: tuple[Point, ...]

    def __post_init__(self):
        pts = lt.as_support(self.points)
        if lt.ambient_dim(pts) != 2:
            raise LatticeError("family support points must be pairs (x-exponent, t-exponent)")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]]) -> "FamilySupport":
        return cls(tuple(tuple(p) for p in points))

    @classmethod
    def from_coefficients(cls, supports: Mapping[int, Iterable[int]]) -> "FamilySupport":
        """Build from a map j -> t-exponents of the coefficient c_j."""
        pts = [(int(j), int(k)) for j, ks in supports.items() for k in ks]
        if not pts:
            raise LatticeError("all coefficients are zero")
        return cls(tuple(pts))

    def coefficients(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for j, k in self.points:
            out.setdefault(j, []).append(k)
        return {j: tuple(sorted(ks)) for j, ks in sorted(out.items())}

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(sorted({j for j, _ in self.points}))


def _family(F) -> FamilySupport:
    if isinstance(F, FamilySupport):
        return F
    if isinstance(F, Mapping):
        return FamilySupport.from_coefficients(F)
    return FamilySupport.from_points(F)


def family_d(F) -> int | None:
    """gcd of pairwise differences of the x-exponents; None when only one is present."""
    B = _family(F).exponents
    if len(B) < 2:
        return None
    g = 0
    for b in B[1:]:
        g = gcd(g, b - B[0])
    return g


def _gaps(B: Sequence[int]) -> tuple[int, int]:
    return B[1] - B[0], B[-1] - B[-2]


def branch_counts(F) -> tuple[int, int, int]:
    """Ramification counts over roots of c_n, roots of c_N, and simple tangencies."""
    F = _family(F)
    B = F.exponents
    if len(B) < 2:
        raise LatticeError("branch counts need at least two distinct x-exponents")
    n, N = B[0], B[-1]
    q, Q = _gaps(B)
    An = [p for p in F.points if p[0] == n]
    AN = [p for p in F.points if p[0] == N]
    s1 = lt.lattice_length(An)
    s2 = lt.lattice_length(AN)
    s3 = lt.lattice_area(F.points) - Q * s2 - q * s1
    if s3 < 0:
        raise AssertionError(f"negative tangency count {s3}")
    return s1, s2, s3


def riemann_hurwitz_ok(F) -> bool:
    """Ramification total against the Euler characteristic of the closed curve."""
    F = _family(F)
    B = F.exponents
    q, Q = _gaps(B)
    s1, s2, s3 = branch_counts(F)
    lhs = -(q - 1) * s1 - (Q - 1) * s2 - s3
    rhs = -lt.lattice_area(F.points) + lt.lattice_length([p for p in F.points if p[0] == B[-1]]) + lt.lattice_length(
        [p for p in F.points if p[0] == B[0]]
    )
    return lhs == rhs


@dataclass(frozen=True)
class GaloisVerdict:
    d: int | None
    n: int
    N: int
    q: int | None
    Q: int | None
    full_symmetric: bool
    reason: str
    sharp1: int | None
    sharp2: int | None
    sharp3: int | None
    rh_identity_ok: bool | None


def _barycenter_integral(points: Sequence[Point]) -> bool:
    return all(Fraction(sum(c), len(points)).denominator == 1 for c in zip(*points))


def galois_verdict(F) -> GaloisVerdict:
    """Decide whether the monodromy of the nonzero roots is the full symmetric group."""
    F = _family(F)
    B = F.exponents
    n, N = B[0], B[-1]
    if len(B) < 2:
        return GaloisVerdict(None, n, N, None, None, False, "degenerate: no nonzero roots to permute", None, None, None, None)
    d = family_d(F)
    q, Q = _gaps(B)
    s1, s2, s3 = branch_counts(F)
    rh = riemann_hurwitz_ok(F)
    if not rh:
        raise AssertionError("Riemann-Hurwitz identity fails")
    sheets = N - n
    collinear = lt.is_collinear(list(F.points))
    if sheets == 1:
        full, reason = True, "one sheet: the symmetric group S_1 is trivial"
    elif d == 1:
        if collinear:
            full, reason = False, "affine line: the covering is trivial, and so is the monodromy"
        else:
            full, reason = True, "d = 1 and the support is not contained in an affine line"
    elif sheets > d:
        full, reason = False, f"necklace obstruction: roots split into {sheets // d} blocks of size {d}"
    elif sheets > 2:
        full, reason = False, f"cyclic obstruction: d = N - n = {d} > 2"
    elif len(F.points) == 2 and not _barycenter_integral(F.points):
        full, reason = True, "d = N - n = 2 and two points with non-integral barycenter"
    elif len(F.points) == 2:
        full, reason = False, "d = N - n = 2 and two points with integral barycenter: the covering is trivial"
    else:
        full, reason = True, "d = N - n = 2 with extra support: the two roots are swapped by monodromy"
    if full and sheets > 1 and d == 1 and s3 < 1:
        raise AssertionError("full group without simple tangencies")
    return GaloisVerdict(d, n, N, q, Q, full, reason, s1, s2, s3, rh)
