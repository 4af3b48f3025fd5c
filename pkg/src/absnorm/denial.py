"""Rank-one perturbations of the identity on F and denial certificates.

Everything here revolves around the operator norm

    ||Id + f (x) a|| = max_{x in B_F} ||x + <f, x> a||,

for f in S_{F*}^+ and a in S_F^+.  F denies the positive Daugavet property
with a set A of sphere points when every a in A admits some f keeping that
norm below 2 - eps with one common eps > 0; star-denial swaps the roles.

Searches over f or a run in floating point on sampled spheres; the reported
witness values are recomputed exactly whenever the polygon is small.  A
Lipschitz bound in the sample spacing turns a finite table into a statement
about the whole region.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ContractError
from .norm_core import (
    E1,
    AbsNorm2,
    BlackBoxNorm,
    Functional2,
    PolygonalNorm,
    Scalar,
    Vec2,
    as_polygonal,
    clip_polyline,
    extreme_points,
    fmt_scalar,
    lerp,
    normalize_functional,
    normalize_vector,
    norm_eval,
    require_polygonal,
    slice_positive,
    to_fraction,
)
from .classify import edge_count

DEFAULT_GRID = 256
TIE_TOL = 1e-12


# --------------------------------------------------------------------------
# the rank-one norm
# --------------------------------------------------------------------------

def _exact_rank1(F: PolygonalNorm, f, a) -> Fraction:
    if min(f) >= 0 and min(a) >= 0:
        # |v + <f,v> a| <= |v| + <f,|v|> a componentwise, so positive corners suffice
        corners = F.vertices
    else:
        corners = extreme_points(F)
    best = None
    for v in corners:
        t = f[0] * v[0] + f[1] * v[1]
        val = norm_eval(F, (v[0] + t * a[0], v[1] + t * a[1]))
        if best is None or val > best:
            best = val
    return best


def _blackbox_dual_norm(F: BlackBoxNorm, f, samples: int) -> float:
    th = np.linspace(0.0, math.pi, samples, endpoint=False)
    return max(abs(f[0] * math.cos(t) + f[1] * math.sin(t)) / F((math.cos(t), math.sin(t))) for t in th)


def _blackbox_rank1(F: BlackBoxNorm, f, a) -> float:
    samples = max(1024, 16 * F.resolution)
    f = (float(f[0]), float(f[1]))
    a = (float(a[0]), float(a[1]))

    def ratio(t):
        x = (math.cos(t), math.sin(t))
        s = f[0] * x[0] + f[1] * x[1]
        return F((x[0] + s * a[0], x[1] + s * a[1])) / F(x)

    th = np.linspace(0.0, math.pi, samples, endpoint=False)
    vals = [ratio(t) for t in th]
    k = int(np.argmax(vals))
    h = math.pi / samples
    res = minimize_scalar(lambda t: -ratio(t), bounds=(th[k] - h, th[k] + h), method="bounded",
                          options={"xatol": 1e-12})
    return max(vals[k], -res.fun)


def rank1_norm(F: AbsNorm2, f, a) -> Scalar:
    """Operator norm of x -> x + <f, x> a on F (exact for polygons)."""
    if isinstance(F, BlackBoxNorm):
        if abs(F(a) - 1) > 1e-9:
            raise ContractError(f"vector {a} is not on the unit sphere")
        if abs(_blackbox_dual_norm(F, f, 4 * max(1024, F.resolution)) - 1) > 1e-6:
            raise ContractError(f"functional {f} is not a unit functional")
        return _blackbox_rank1(F, f, a)
    f = normalize_functional(F, f)
    a = normalize_vector(F, a)
    return _exact_rank1(F, f, a)


def adjoint_symmetry_check(F: AbsNorm2, f, a) -> bool:
    """||Id + f (x) a|| on F equals ||Id + a (x) f|| on F*."""
    P = as_polygonal(F)
    f = normalize_functional(F, f)
    a = normalize_vector(F, a)
    lhs = _exact_rank1(P, f, a)
    rhs = _exact_rank1(P.dual, Functional2(a[0], a[1]), Vec2(f[0], f[1]))
    return lhs == rhs


class _Kernel:
    """Vectorized positive-data rank-one norms for one polygonal norm."""

    def __init__(self, F: PolygonalNorm):
        self.V = F.float_vertices
        self.W = F.dual.float_vertices
        self.P = self.V @ self.W.T

    def over_vectors(self, f, A: np.ndarray) -> np.ndarray:
        """Norm for one functional and many vectors."""
        fv = self.V @ np.asarray(f, dtype=float)
        WA = A @ self.W.T
        vals = self.P[None, :, :] + fv[None, :, None] * WA[:, None, :]
        return vals.max(axis=(1, 2))

    def over_functionals(self, Fs: np.ndarray, a) -> np.ndarray:
        """Norm for many functionals and one vector."""
        FV = Fs @ self.V.T
        Wa = self.W @ np.asarray(a, dtype=float)
        vals = self.P[None, :, :] + FV[:, :, None] * Wa[None, None, :]
        return vals.max(axis=(1, 2))

    def norms(self, X: np.ndarray) -> np.ndarray:
        return (np.abs(X) @ self.W.T).max(axis=-1)


# --------------------------------------------------------------------------
# sampling spheres
# --------------------------------------------------------------------------

def sample_polyline(points, grid: int) -> list:
    """Vertices plus evenly spaced points; ``grid`` is the budget for the whole polyline."""
    points = list(points)
    if len(points) == 1:
        return points
    per_edge = max(1, grid // (len(points) - 1))
    out = []
    for p, q in zip(points[:-1], points[1:]):
        for j in range(per_edge):
            out.append(lerp(p, q, Fraction(j, per_edge)))
    out.append(Vec2(*points[-1]))
    return out


def sample_gap(space: PolygonalNorm, samples) -> Scalar:
    """Largest norm distance between consecutive samples."""
    gap = Fraction(0)
    for p, q in zip(samples[:-1], samples[1:]):
        gap = max(gap, norm_eval(space, (q[0] - p[0], q[1] - p[1])))
    return gap


def _as_array(points) -> np.ndarray:
    return np.array([[float(p[0]), float(p[1])] for p in points], dtype=float).reshape(-1, 2)


def _pick(values: np.ndarray) -> int:
    """First index within TIE_TOL of the minimum (deterministic tie-break)."""
    m = values.min()
    return int(np.flatnonzero(values <= m + TIE_TOL)[0])


@dataclass(frozen=True)
class Margin:
    """Best margin 2 - ||Id + f (x) a|| over sampled witnesses.

    ``margin`` is attained by ``witness``; the optimum over the whole sphere
    is at most ``upper_bound``.  Unpacks as ``(margin, witness)``.
    """

    margin: Scalar
    witness: tuple
    value: Scalar
    upper_bound: Scalar
    exact: bool

    def __iter__(self):
        yield self.margin
        yield self.witness


def _margin_search(F: PolygonalNorm, *, point, point_is_functional: bool, grid: int) -> Margin:
    kernel = _Kernel(F)
    if point_is_functional:
        cands = sample_polyline(F.vertices, grid)
        vals = kernel.over_vectors(point, _as_array(cands))
        gap = sample_gap(F, cands)  # Lipschitz constant ||f||_{F*} = 1
    else:
        cands = sample_polyline(F.dual.vertices, grid)
        vals = kernel.over_functionals(_as_array(cands), point)
        gap = sample_gap(F.dual, cands)
    k = _pick(vals)
    wit = cands[k]
    exact = F.is_exactly_small()
    if exact:
        f, a = (point, wit) if point_is_functional else (wit, point)
        value = _exact_rank1(F, f, a)
    else:
        value = float(vals[k])
        gap = float(gap)
    witness = Vec2(*wit) if point_is_functional else Functional2(*wit)
    margin = 2 - value
    return Margin(margin, witness, value, margin + gap / 2, exact)


def deny_margin(F: AbsNorm2, a, grid: int = DEFAULT_GRID) -> Margin:
    """Best f in S_{F*}^+ for a fixed a in S_F^+."""
    P = as_polygonal(F)
    a = _positive_unit_vector(F, a)
    return _margin_search(P, point=a, point_is_functional=False, grid=grid)


def star_deny_margin(F: AbsNorm2, f, grid: int = DEFAULT_GRID) -> Margin:
    """Best a in S_F^+ for a fixed f in S_{F*}^+."""
    P = as_polygonal(F)
    f = _positive_unit_functional(F, f)
    return _margin_search(P, point=f, point_is_functional=True, grid=grid)


def _positive_unit_vector(F, a) -> Vec2:
    a = normalize_vector(F, a)
    if min(a) < 0:
        raise ContractError(f"{a} is not in the positive quadrant")
    return a


def _positive_unit_functional(F, f) -> Functional2:
    f = normalize_functional(F, f)
    if min(f) < 0:
        raise ContractError(f"{f} is not a positive functional")
    return f


# --------------------------------------------------------------------------
# u(f): the largest eps for which one a beats the whole slice
# --------------------------------------------------------------------------

def u_function(F: AbsNorm2, f, tol: float = 1e-9, grid: int = DEFAULT_GRID) -> float:
    """sup{eps : some a in S_F^+ has ||a + b|| < 2 - eps on all of S(B_F, f, eps) in B_F^+}.

    Bisection on eps; the inner maximum over the slice is taken at the
    region's corners (b -> ||a + b|| is convex), the outer search over
    sampled a.  Returns 0 when the property fails already at eps = tol.
    """
    P = as_polygonal(F)
    f = _positive_unit_functional(F, f)
    kernel = _Kernel(P)
    A = _as_array(sample_polyline(P.vertices, grid))

    def holds(eps: float) -> bool:
        region = slice_positive(P, f, Fraction(eps))
        if region.empty:
            return True
        B = _as_array(region.vertices)
        sums = A[:, None, :] + B[None, :, :]
        worst = kernel.norms(sums).max(axis=1)
        return bool(worst.min() < 2 - eps)

    if not holds(tol):
        return 0.0
    lo, hi = tol, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if holds(mid):
            lo = mid
        else:
            hi = mid
    return lo


# --------------------------------------------------------------------------
# exact face geometry
# --------------------------------------------------------------------------

def _arc_param(F: PolygonalNorm, x) -> Fraction:
    """Position of a sphere point along the polyline: edge index + fraction."""
    for i, (p, q) in enumerate(F.edges):
        d = (q[0] - p[0], q[1] - p[1])
        r = (x[0] - p[0], x[1] - p[1])
        if d[0] * r[1] - d[1] * r[0] != 0:
            continue
        den = d[0] * d[0] + d[1] * d[1]
        t = (d[0] * r[0] + d[1] * r[1]) / den
        if 0 <= t <= 1:
            return i + t
    raise ContractError(f"{x} is not on the positive unit sphere")


def _arc_point(F: PolygonalNorm, s: Fraction) -> Vec2:
    i = min(int(s), F.n_edges - 1)
    p, q = F.edges[i]
    return lerp(p, q, s - i)


def face(F: PolygonalNorm, f) -> tuple:
    """Delta = {b in S_F^+ : <f, b> = 1} as its two endpoints (equal for a point)."""
    hits = [v for v in F.vertices if f[0] * v[0] + f[1] * v[1] == 1]
    if not hits:
        raise ContractError(f"{f} does not attain 1 on S_F^+")
    return hits[0], hits[-1]


def segment_witness(F: AbsNorm2, a, f) -> Vec2 | None:
    """A point b0 of the face of f with [a, b0] inside S_F^+, or None.

    Among admissible b0 the one farthest from a is returned.
    """
    F = require_polygonal(F, "segment_witness")
    a = _positive_unit_vector(F, a)
    f = _positive_unit_functional(F, f)
    d0, d1 = face(F, f)
    s_d0, s_d1 = _arc_param(F, d0), _arc_param(F, d1)
    s_a = _arc_param(F, a)
    best = None
    for i, _ in enumerate(F.edges):
        if not i <= s_a <= i + 1:
            continue
        lo, hi = max(i, s_d0), min(i + 1, s_d1)
        if lo > hi:
            continue
        for s in (lo, hi):
            b = _arc_point(F, s)
            dist = (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2
            if best is None or dist > best[0]:
                best = (dist, b)
    return None if best is None else best[1]


def three_edge_exceptional(F: AbsNorm2) -> tuple:
    """(w, h1, h2) for a three-edge sphere: w supports the middle edge [h1, h2]."""
    F = require_polygonal(F, "three_edge_exceptional")
    if edge_count(F) != 3:
        raise ContractError(f"needs exactly three edges, got {edge_count(F)}")
    _, h1, h2, _ = F.vertices
    w = F.edge_functionals[1]
    if not (w[0] < 1 and w[1] < 1):
        raise ContractError(f"middle functional {w} touches an axis vertex")
    return w, h1, h2


def certificate_delta(F: AbsNorm2) -> Fraction:
    """Width of the slice about e1 used for star-denial when F is not in N2.

    Three edges: delta0 = (1 - w1)/2 and delta = (1 - w1)/4 keep the slice
    away from the exceptional functional w.  Four or more edges: any width
    works; 1/2 is used.
    """
    n = edge_count(as_polygonal(F)) if not isinstance(F, BlackBoxNorm) else None
    if isinstance(F, BlackBoxNorm):
        if (F.polygon.edge_lower_bound or 0) > 3:
            return Fraction(1, 2)
        raise ContractError("black-box norm without a certified edge bound above 3")
    if n <= 2:
        raise ContractError("norms with at most two edges admit no star-denial slice")
    if n == 3:
        w, _, _ = three_edge_exceptional(F)
        return (1 - w[0]) / 4
    return Fraction(1, 2)


# --------------------------------------------------------------------------
# certificates
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """Part of a positive sphere: everything, a slice, or an explicit arc."""

    kind: str = "whole"
    direction: tuple | None = None
    delta: Scalar | None = None
    points: tuple = ()

    @classmethod
    def whole(cls) -> "Region":
        return cls("whole")

    @classmethod
    def slice(cls, direction, delta) -> "Region":
        return cls("slice", tuple(to_fraction(x) for x in direction), to_fraction(delta))

    @classmethod
    def arc(cls, points) -> "Region":
        return cls("arc", points=tuple(Vec2.of(*p) for p in points))

    def pieces(self, sphere: PolygonalNorm) -> list:
        if self.kind == "whole":
            return [sphere.vertices]
        if self.kind == "slice":
            if not 0 < self.delta <= 1:
                raise ContractError(f"slice width must lie in (0, 1], got {self.delta}")
            return clip_polyline(sphere.vertices, self.direction, 1 - self.delta)
        if self.kind == "arc":
            for p in self.points:
                if min(p) < 0 or norm_eval(sphere, p) != 1:
                    raise ContractError(f"arc point {p} is not on the positive sphere")
            return [self.points]
        raise ContractError(f"unknown region kind {self.kind!r}")

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "slice":
            out["direction"] = [fmt_scalar(x) for x in self.direction]
            out["delta"] = fmt_scalar(self.delta)
        if self.kind == "arc":
            out["points"] = [[fmt_scalar(x) for x in p] for p in self.points]
        return out


class WitnessRow(tuple):
    """(point, witness, value) with value = ||Id + f (x) a||."""

    __slots__ = ()

    def __new__(cls, point, witness, value):
        return super().__new__(cls, (point, witness, value))

    point = property(lambda self: self[0])
    witness = property(lambda self: self[1])
    value = property(lambda self: self[2])


@dataclass(frozen=True)
class DenialCertificate:
    mode: str
    region: Region
    epsilon: Scalar
    certified: bool
    rows: list = field(repr=False)
    sampled_epsilon: Scalar = 0
    gap: Scalar = 0
    exact: bool = True

    def recheck(self, F: AbsNorm2) -> bool:
        """Recompute every row exactly and confirm value <= 2 - epsilon."""
        P = as_polygonal(F)
        for point, witness, _ in self.rows:
            f, a = (point, witness) if self.mode == "star_deny" else (witness, point)
            if _exact_rank1(P, f, a) > 2 - self.epsilon:
                return False
        return True

    def to_dict(self, max_rows: int | None = None) -> dict:
        rows = self.rows if max_rows is None else self.rows[:max_rows]
        return {
            "mode": self.mode,
            "region": self.region.to_dict(),
            "epsilon": fmt_scalar(self.epsilon),
            "sampled_epsilon": fmt_scalar(self.sampled_epsilon),
            "gap": fmt_scalar(self.gap),
            "certified": self.certified,
            "exact": self.exact,
            "witness_rows": [
                {"point": [fmt_scalar(x) for x in p], "witness": [fmt_scalar(x) for x in w], "value": fmt_scalar(v)}
                for p, w, v in rows
            ],
        }


def set_denial_certificate(F: AbsNorm2, mode: str, region: Region | None = None,
                           grid: int = DEFAULT_GRID) -> DenialCertificate:
    """Uniform margin over a sphere region, certified by a Lipschitz bound.

    The sampled margin h(x) = 2 - min over the sampled witnesses is
    1-Lipschitz along the region, so between consecutive samples p, q it is at
    least (h(p) + h(q) - ||p - q||) / 2.  Intervals where that bound is not
    positive are bisected (within a budget of 4 * grid extra samples).

    deny: points a of the region in S_F^+, witnesses f in S_{F*}^+.
    star_deny: points f of the region in S_{F*}^+, witnesses a in S_F^+.
    ``region=None`` in star_deny mode means the slice about e1 of width
    :func:`certificate_delta`.
    """
    if mode not in ("deny", "star_deny"):
        raise ContractError(f"unknown mode {mode!r}")
    P = as_polygonal(F)
    if region is None:
        if mode != "star_deny":
            raise ContractError("deny mode needs an explicit region")
        region = Region.slice(E1, certificate_delta(F))
    star = mode == "star_deny"
    point_sphere = P.dual if star else P
    witness_sphere = P if star else P.dual
    kernel = _Kernel(P)
    exact = P.is_exactly_small()

    wits = sample_polyline(witness_sphere.vertices, grid)
    W = _as_array(wits)

    def evaluate(p) -> WitnessRow:
        vals = kernel.over_vectors(p, W) if star else kernel.over_functionals(W, p)
        k = _pick(vals)
        if exact:
            f, a = (p, wits[k]) if star else (wits[k], p)
            return WitnessRow(p, wits[k], _exact_rank1(P, f, a))
        return WitnessRow(p, wits[k], float(vals[k]))

    def dist(r0, r1):
        d = norm_eval(point_sphere, (r1.point[0] - r0.point[0], r1.point[1] - r0.point[1]))
        return d if exact else float(d)

    def lower(r0, r1, L):
        # h = 2 - min over the sampled witnesses is 1-Lipschitz along the arc
        return (4 - r0.value - r1.value - L) / 2

    rows, gap, bounds = [], Fraction(0), []
    budget = 4 * grid
    for piece in region.pieces(point_sphere):
        prow = [evaluate(p) for p in sample_polyline(piece, grid)]
        for _ in range(16):
            out, refined = [prow[0]], False
            for r0, r1 in zip(prow[:-1], prow[1:]):
                L = dist(r0, r1)
                if budget > 0 and lower(r0, r1, L) <= 0 and min(r0.value, r1.value) < 2 and L > 0:
                    out.append(evaluate(lerp(r0.point, r1.point, Fraction(1, 2))))
                    budget -= 1
                    refined = True
                out.append(r1)
            prow = out
            if not refined:
                break
        for r0, r1 in zip(prow[:-1], prow[1:]):
            L = dist(r0, r1)
            gap = max(gap, L)
            bounds.append(lower(r0, r1, L))
        rows.extend(prow)
    if not rows:
        raise ContractError("region does not meet the positive sphere")
    sampled = min(2 - r.value for r in rows)
    eps = min([sampled] + bounds)
    if exact:
        eps = max(Fraction(0), eps)
    else:
        gap = float(gap)
        eps = max(0.0, float(eps) - 1e-12)
    return DenialCertificate(mode, region, eps, eps > 0, rows, sampled, gap, exact)


# --------------------------------------------------------------------------
# the three equivalent formulations, side by side
# --------------------------------------------------------------------------

def _slice_max(space: PolygonalNorm, f, eps, shift) -> Scalar:
    region = slice_positive(space, f, eps)
    if region.empty:
        return Fraction(0)
    return max(norm_eval(space, (b[0] + shift[0], b[1] + shift[1])) for b in region.vertices)


def char_equiv_check(F: AbsNorm2, mode: str, point, eps, witness=None, grid: int = DEFAULT_GRID) -> dict:
    """Compare the operator, slice and dual-slice forms of (star-)denial at one point.

    (i)   ||Id + f (x) a|| < 2 - eps
    (ii)  ||a + b|| < 2 - eps for b in S(B_F, f, eps) in B_F^+
    (iii) ||f + g|| < 2 - eps for g in S(B_F*, a, eps) in B_F*^+
    Each form at eps implies the others at eps/2 (non-strictly for (i)).
    """
    P = as_polygonal(F)
    eps = to_fraction(eps)
    if mode == "deny":
        a = _positive_unit_vector(F, point)
        f = _positive_unit_functional(F, witness) if witness is not None else deny_margin(P, a, grid).witness
    elif mode == "star_deny":
        f = _positive_unit_functional(F, point)
        a = _positive_unit_vector(F, witness) if witness is not None else star_deny_margin(P, f, grid).witness
    else:
        raise ContractError(f"unknown mode {mode!r}")
    half = eps / 2
    q1 = _exact_rank1(P, f, a)
    q2, q2h = _slice_max(P, f, eps, a), _slice_max(P, f, half, a)
    q3, q3h = _slice_max(P.dual, a, eps, f), _slice_max(P.dual, a, half, f)
    holds = {
        "operator": q1 < 2 - eps,
        "slice": q2 < 2 - eps,
        "dual_slice": q3 < 2 - eps,
    }
    implications = {
        "operator=>slice(eps/2)": (not holds["operator"]) or q2h < 2 - half,
        "operator=>dual_slice(eps/2)": (not holds["operator"]) or q3h < 2 - half,
        "slice=>operator(eps/2)": (not holds["slice"]) or q1 <= 2 - half,
        "dual_slice=>operator(eps/2)": (not holds["dual_slice"]) or q1 <= 2 - half,
    }
    num = (lambda x: x) if P.is_exactly_small() else float
    q1, q2, q2h, q3, q3h = map(num, (q1, q2, q2h, q3, q3h))
    return {
        "mode": mode,
        "point": [fmt_scalar(x) for x in (a if mode == "deny" else f)],
        "witness": [fmt_scalar(x) for x in (f if mode == "deny" else a)],
        "eps": fmt_scalar(num(eps)),
        "operator_norm": q1,
        "slice_max": q2,
        "slice_max_half": q2h,
        "dual_slice_max": q3,
        "dual_slice_max_half": q3h,
        "holds": holds,
        "implications": implications,
        "consistent": all(implications.values()),
    }
