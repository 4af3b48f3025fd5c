"""Classification of absolute normalized norms and Daugavet admissibility.

For a polygonal positive sphere with n edges the hat values

    hat1 = max{y : (1, y) on S_F^+},   hat2 = max{x : (x, 1) on S_F^+}

measure the vertical edge at a1 = 1 and the horizontal edge at a2 = 1.  The
class F_{m,n} has m = n-1, n or n+1 according to how many hats vanish, and the
dual norm lands in F_{n,m}.  An F-sum can be a Daugavet domain exactly for
F in M2 = {l1, linf} + F_{2,2} + F_{2,3}, and a Daugavet range exactly for F in
N2 = {l1, linf} + F_{2,2} + F_{3,2}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .norm_core import (
    LINF,
    ONE,
    Vec2,
    AbsNorm2,
    BlackBoxNorm,
    PolygonalNorm,
    dual_norm,
    fmt_scalar,
    require_polygonal,
)

L1_KIND = "L1"
LINF_KIND = "LInf"
F_KIND = "F"
OTHER_KIND = "NonPolygonalOrLarge"


@dataclass(frozen=True)
class ClassTag:
    kind: str
    edges: int
    hat1: Fraction
    hat2: Fraction
    m: int | None = None
    n: int | None = None
    approximate: bool = False

    @property
    def name(self) -> str:
        if self.kind == F_KIND:
            return f"F_{{{self.m},{self.n}}}"
        return self.kind

    def to_dict(self) -> dict:
        return {
            "class": self.name,
            "edges": self.edges,
            "hat1": fmt_scalar(self.hat1),
            "hat2": fmt_scalar(self.hat2),
            "approximate": self.approximate,
        }


@dataclass(frozen=True)
class Membership:
    in_N2: bool | None
    in_N3: bool | None
    in_M2: bool | None


@dataclass(frozen=True)
class Admissibility:
    domain_possible: bool | None
    range_possible: bool | None
    reason: str


def hat_values(F: AbsNorm2) -> tuple:
    """Heights of the vertical edge at a1 = 1 and the horizontal edge at a2 = 1."""
    F = require_polygonal(F, "hat_values")
    vs = F.vertices
    hat1 = vs[1][1] if len(vs) > 1 and vs[1][0] == 1 else Fraction(0)
    hat2 = vs[-2][0] if len(vs) > 1 and vs[-2][1] == 1 else Fraction(0)
    return hat1, hat2


def edge_count(F: AbsNorm2) -> int:
    """Number of maximal segments of S_F^+ (F in canonical form)."""
    return require_polygonal(F, "edge_count").n_edges


def _f_index(n: int, hat1, hat2) -> int:
    zeros = (hat1 == 0) + (hat2 == 0)
    return n - 1 + zeros


def classify_norm(F: AbsNorm2) -> ClassTag:
    if isinstance(F, BlackBoxNorm):
        P = F.polygon
        h1, h2 = hat_values(P)
        return ClassTag(OTHER_KIND, P.edge_lower_bound, h1, h2, approximate=True)
    n = edge_count(F)
    h1, h2 = hat_values(F)
    if n == 1:
        return ClassTag(L1_KIND, 1, h1, h2)
    if F.vertices == LINF.vertices:
        return ClassTag(LINF_KIND, 2, h1, h2)
    return ClassTag(F_KIND, n, h1, h2, m=_f_index(n, h1, h2), n=n)


def membership(F: AbsNorm2) -> Membership:
    tag = classify_norm(F)
    if tag.kind == OTHER_KIND:
        # only the certified lower bound on edges is trustworthy here
        lb = tag.edges
        return Membership(
            in_N2=False if lb > 2 else None,
            in_N3=False if lb > 3 else None,
            in_M2=False if lb > 3 else None,
        )
    in_m2 = tag.kind in (L1_KIND, LINF_KIND) or (tag.m, tag.n) in ((2, 2), (2, 3))
    return Membership(in_N2=tag.edges <= 2, in_N3=tag.edges <= 3, in_M2=in_m2)


def admissibility(F: AbsNorm2) -> Admissibility:
    """Can some X1 (+)_F X2 be a Daugavet domain / range?"""
    tag = classify_norm(F)
    mem = membership(F)
    name = tag.name
    if tag.kind in (L1_KIND, LINF_KIND):
        reason = f"{name}: classical sum; explicit centers exist from and into the sum"
    elif tag.kind == OTHER_KIND:
        if mem.in_N3 is False:
            reason = (f"{name}: at least {tag.edges} edges certified, so the positive sphere is not "
                      "a polygon with at most three edges; excluded as domain and as range")
        else:
            reason = f"{name}: only {tag.edges} edges certified; verdict undetermined from approximate data"
    else:
        parts = []
        if mem.in_M2:
            parts.append("domain: the functional supporting the face [c1, c2] gives a center from the sum")
        else:
            parts.append("domain excluded: dual sphere has more than two edges (not in M2)")
        if mem.in_N2:
            parts.append("range: x -> (f1 x, f2 x) with (f1, f2) from the dual face is a center into the sum")
        else:
            parts.append("range excluded: more than two edges (not in N2)")
        reason = f"{name}: " + "; ".join(parts)
    return Admissibility(mem.in_M2, mem.in_N2, reason)


def duality_swap_check(F: AbsNorm2) -> bool:
    """classify(F*) is F_{n,m} when F is F_{m,n}; l1 and linf swap."""
    F = require_polygonal(F, "duality_swap_check")
    tag = classify_norm(F)
    dtag = classify_norm(dual_norm(F))
    if tag.kind == L1_KIND:
        return dtag.kind == LINF_KIND
    if tag.kind == LINF_KIND:
        return dtag.kind == L1_KIND
    return dtag.kind == F_KIND and (dtag.m, dtag.n) == (tag.n, tag.m)


def verdict(F: AbsNorm2) -> dict:
    """Report dict for the ``decide`` command."""
    tag = classify_norm(F)
    mem = membership(F)
    adm = admissibility(F)
    out = {
        "class": tag.name,
        "edges": tag.edges,
        "hat1": fmt_scalar(tag.hat1),
        "hat2": fmt_scalar(tag.hat2),
        "in_N2": mem.in_N2,
        "in_N3": mem.in_N3,
        "in_M2": mem.in_M2,
        "domain_possible": adm.domain_possible,
        "range_possible": adm.range_possible,
        "reason": adm.reason,
    }
    if tag.approximate:
        out["certified_edges"] = ">3" if tag.edges > 3 else f">={tag.edges}"
    return out


def face_points(F: PolygonalNorm) -> tuple:
    """c1 = (1, hat1) and c2 = (hat2, 1); [c1, c2] lies on S_F^+ for F_{2,2} and F_{2,3}."""
    h1, h2 = hat_values(F)
    return Vec2(ONE, h1), Vec2(h2, ONE)
