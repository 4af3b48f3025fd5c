"""Two-dimensional absolute normalized norms.

A norm F on R^2 with ||e1|| = ||e2|| = 1 and ||(a1, a2)|| = ||(|a1|, |a2|)|| is
determined by its positive unit sphere S_F^+, the arc from e1 = (1, 0) to
e2 = (0, 1) in the closed positive quadrant.  Polygonal norms store the corner
points of that arc as exact rationals; black-box norms wrap a float evaluator
and are turned into inscribed polygons when exact machinery is needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational, Real
from typing import Callable, Iterable, NamedTuple, Sequence, Union

import numpy as np

from .errors import (
    ContractError,
    MalformedInputError,
    UnsupportedRepresentationError,
    ValidationError,
)

Scalar = Union[Fraction, float]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value) -> Fraction:
    """Convert ints, floats (exactly), ``"p/q"`` strings and Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise MalformedInputError(f"boolean is not a coordinate: {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise MalformedInputError(f"non-finite coordinate: {value!r}")
        return Fraction(float(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"not a rational number: {value!r}") from exc
    raise MalformedInputError(f"non-numeric coordinate: {value!r}")


def fmt_scalar(value) -> str:
    """Render a rational as ``"p/q"`` (``"p"`` for integers); floats via repr."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return repr(float(value))


class Vec2(NamedTuple):
    """A point of F.  Do not use ``+``/``*`` on it: it is still a tuple."""

    a1: Scalar
    a2: Scalar

    @classmethod
    def of(cls, a1, a2) -> "Vec2":
        return cls(to_fraction(a1), to_fraction(a2))

    def abs(self) -> "Vec2":
        return Vec2(abs(self.a1), abs(self.a2))

    def dominated_by(self, other) -> bool:
        """Componentwise order: self <= other."""
        return self.a1 <= other[0] and self.a2 <= other[1]

    def as_functional(self) -> "Functional2":
        return Functional2(self.a1, self.a2)

    def __str__(self):
        return f"({fmt_scalar(self.a1)}, {fmt_scalar(self.a2)})"


class Functional2(NamedTuple):
    """A point of the dual space F*, acting by f1*a1 + f2*a2."""

    f1: Scalar
    f2: Scalar

    @classmethod
    def of(cls, f1, f2) -> "Functional2":
        return cls(to_fraction(f1), to_fraction(f2))

    def pair(self, a) -> Scalar:
        return self.f1 * a[0] + self.f2 * a[1]

    def as_vector(self) -> Vec2:
        return Vec2(self.f1, self.f2)

    def __str__(self):
        return f"<{fmt_scalar(self.f1)}, {fmt_scalar(self.f2)}>"


E1 = Vec2(ONE, ZERO)
E2 = Vec2(ZERO, ONE)


# small vector helpers; Vec2 is a tuple so arithmetic has to be spelled out

def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def lerp(p, q, t) -> Vec2:
    return Vec2(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def supporting_functional(p, q) -> Functional2:
    """The functional w with <w, p> = <w, q> = 1 (line through p and q)."""
    det = p[0] * q[1] - p[1] * q[0]
    if det == 0:
        raise ContractError(f"line through {p} and {q} passes through the origin")
    return Functional2((q[1] - p[1]) / det, (p[0] - q[0]) / det)


# --------------------------------------------------------------------------
# norm representations
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PolygonalNorm:
    """Exact polygonal norm given by the corners of S_F^+ from e1 to e2.

    Build instances with :func:`polygon`, which canonicalizes and validates;
    the raw constructor accepts anything so that :func:`validate_norm` can
    report on bad candidates.
    """

    vertices: tuple
    hausdorff: float | None = field(default=None, compare=False, repr=False)
    edge_lower_bound: int | None = field(default=None, compare=False, repr=False)
    source: str | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.vertices, tuple):
            object.__setattr__(self, "vertices", tuple(self.vertices))

    @classmethod
    def from_vertices(cls, vertices: Iterable) -> "PolygonalNorm":
        pts = []
        for v in vertices:
            try:
                a1, a2 = v
            except (TypeError, ValueError) as exc:
                raise MalformedInputError(f"vertex is not a pair: {v!r}") from exc
            pts.append(Vec2.of(a1, a2))
        if not pts:
            raise MalformedInputError("empty vertex list")
        return cls(tuple(pts))

    @property
    def n_edges(self) -> int:
        return len(self.vertices) - 1

    @cached_property
    def edges(self) -> tuple:
        return tuple(zip(self.vertices[:-1], self.vertices[1:]))

    @cached_property
    def edge_functionals(self) -> tuple:
        """Supporting functional of each edge, in edge order."""
        return tuple(supporting_functional(p, q) for p, q in self.edges)

    @cached_property
    def dual(self) -> "PolygonalNorm":
        return dual_norm(self)

    @cached_property
    def float_vertices(self) -> np.ndarray:
        return np.array([[float(v[0]), float(v[1])] for v in self.vertices])

    @cached_property
    def float_functionals(self) -> np.ndarray:
        return np.array([[float(w[0]), float(w[1])] for w in self.edge_functionals])

    def __call__(self, a) -> Fraction:
        return norm_eval(self, a)

    def is_exactly_small(self, limit: int = 16) -> bool:
        return len(self.vertices) <= limit


@dataclass(frozen=True)
class BlackBoxNorm:
    """A numeric absolute norm given by an evaluator on the positive quadrant."""

    evaluate: Callable[[float, float], float]
    resolution: int = 256
    name: str = "blackbox"

    def __call__(self, a) -> float:
        return float(self.evaluate(abs(float(a[0])), abs(float(a[1]))))

    @cached_property
    def polygon(self) -> PolygonalNorm:
        """Inscribed polygon at the declared resolution (cached)."""
        return approximate_polygon(self, self.resolution)


AbsNorm2 = Union[PolygonalNorm, BlackBoxNorm]


def lp_norm(p, resolution: int = 256) -> BlackBoxNorm:
    """The l_p norm on R^2 as a black box (``p`` may be ``math.inf``)."""
    p = float(p)
    if p < 1:
        raise ContractError(f"l_p is a norm only for p >= 1, got {p}")
    if math.isinf(p):
        return BlackBoxNorm(lambda x, y: max(x, y), resolution, "linf")
    if p == 1:
        return BlackBoxNorm(lambda x, y: x + y, resolution, "l1")
    if p == 2:
        return BlackBoxNorm(math.hypot, resolution, "l2")

    def evaluate(x, y):
        m = max(x, y)
        if m == 0:
            return 0.0
        return m * ((x / m) ** p + (y / m) ** p) ** (1.0 / p)

    return BlackBoxNorm(evaluate, resolution, f"l{p:g}")


def as_polygonal(F: AbsNorm2) -> PolygonalNorm:
    if isinstance(F, PolygonalNorm):
        return F
    if isinstance(F, BlackBoxNorm):
        return F.polygon
    raise UnsupportedRepresentationError(f"not a norm: {F!r}")


def require_polygonal(F: AbsNorm2, what: str) -> PolygonalNorm:
    if isinstance(F, BlackBoxNorm):
        raise UnsupportedRepresentationError(
            f"{what} needs an exact polygonal norm; approximate the black box first"
        )
    return F


# --------------------------------------------------------------------------
# canonical form and validation
# --------------------------------------------------------------------------

def canonicalize(vertices: Sequence) -> tuple:
    """Drop repeated vertices and merge collinear consecutive edges."""
    out = []
    for v in vertices:
        v = Vec2.of(*v) if not isinstance(v, Vec2) else v
        if out and out[-1] == v:
            continue
        out.append(v)
        while len(out) >= 3:
            p, q, r = out[-3:]
            d1, d2 = _sub(q, p), _sub(r, q)
            if _cross(d1, d2) == 0 and _dot(d1, d2) > 0:
                del out[-2]
            else:
                break
    return tuple(out)


def polygon(vertices: Iterable, **meta) -> PolygonalNorm:
    """Canonical, validated polygonal norm from a vertex list."""
    raw = PolygonalNorm.from_vertices(vertices)
    F = PolygonalNorm(canonicalize(raw.vertices), **meta)
    report = validate_norm(F)
    if not report.ok:
        raise ValidationError(report.summary(), report.violations)
    return F


class Violation(NamedTuple):
    invariant: str
    witness: object
    message: str


@dataclass
class ValidationReport:
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(v.message for v in self.violations)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"invariant": v.invariant, "witness": _json_point(v.witness), "message": v.message}
                for v in self.violations
            ],
        }


def _json_point(p):
    if p is None:
        return None
    if isinstance(p, (tuple, list)) and len(p) == 2:
        return [fmt_scalar(p[0]), fmt_scalar(p[1])]
    return str(p)


def validate_norm(candidate, *, samples: int = 200, tol: float = 1e-9) -> ValidationReport:
    """Check every absolute-normalized-norm invariant; collect violations."""
    if isinstance(candidate, BlackBoxNorm):
        return _validate_blackbox(candidate, samples, tol)
    if not isinstance(candidate, PolygonalNorm):
        candidate = PolygonalNorm.from_vertices(candidate)
    vs = candidate.vertices
    if not vs:
        raise MalformedInputError("empty vertex list")
    for v in vs:
        if not (isinstance(v[0], Fraction) and isinstance(v[1], Fraction)):
            raise MalformedInputError(f"non-rational vertex {v!r}")
    bad = []
    if len(vs) < 2:
        bad.append(Violation("endpoints", vs[0], "need at least the vertices (1,0) and (0,1)"))
    if vs[0] != E1:
        bad.append(Violation("endpoints", vs[0], f"first vertex must be (1, 0), got {vs[0]}"))
    if vs[-1] != E2:
        bad.append(Violation("endpoints", vs[-1], f"last vertex must be (0, 1), got {vs[-1]}"))
    for v in vs:
        if v[0] < 0 or v[1] < 0:
            bad.append(Violation("positive quadrant", v, f"vertex {v} leaves the positive quadrant"))
        if max(v) > 1:
            bad.append(Violation("max(v1,v2) <= 1", v, f"max(v1,v2) <= 1 fails at {v}"))
        if v[0] + v[1] < 1:
            bad.append(Violation("v1+v2 >= 1", v, f"v1+v2 >= 1 fails at {v}"))
    for p, q in zip(vs[:-1], vs[1:]):
        if p == q:
            bad.append(Violation("monotone", q, f"repeated vertex {q}"))
        elif q[0] > p[0] or q[1] < p[1]:
            bad.append(Violation("monotone", q, f"coordinates not monotone from {p} to {q}"))
    for p, q, r in zip(vs[:-2], vs[1:-1], vs[2:]):
        turn = _cross(_sub(q, p), _sub(r, q))
        if turn == 0:
            bad.append(Violation("canonical form", q, f"collinear vertices around {q}"))
        elif turn < 0:
            bad.append(Violation("convexity", q, f"polyline bends toward the origin at {q}"))
    return ValidationReport(bad)


def _validate_blackbox(F: BlackBoxNorm, samples: int, tol: float) -> ValidationReport:
    bad = []
    rng = np.random.default_rng(20240917)
    try:
        n1, n2 = F.evaluate(1.0, 0.0), F.evaluate(0.0, 1.0)
    except Exception as exc:  # evaluator is user code
        raise MalformedInputError(f"evaluator failed: {exc}") from exc
    if abs(n1 - 1) > tol:
        bad.append(Violation("normalized", (1.0, 0.0), f"||e1|| = {n1} != 1"))
    if abs(n2 - 1) > tol:
        bad.append(Violation("normalized", (0.0, 1.0), f"||e2|| = {n2} != 1"))
    pts = rng.uniform(-1.0, 1.0, size=(samples, 3, 2))
    for a, b, c in pts:
        na, nb = F(a), F(b)
        if F((-a[0], a[1])) != na or F((a[0], -a[1])) != na:
            bad.append(Violation("absolute", tuple(a), f"norm depends on signs at {tuple(a)}"))
        if F(a + b) > na + nb + tol * (1 + na + nb):
            bad.append(Violation("triangle inequality", tuple(a), f"triangle inequality fails at {tuple(a)}, {tuple(b)}"))
        lo, hi = np.minimum(np.abs(a), np.abs(c)), np.maximum(np.abs(a), np.abs(c))
        if F(lo) > F(hi) + tol:
            bad.append(Violation("monotone", tuple(lo), f"monotonicity fails at {tuple(lo)} <= {tuple(hi)}"))
        if not (max(abs(a)) - tol <= na <= abs(a[0]) + abs(a[1]) + tol):
            bad.append(Violation("sandwich", tuple(a), f"max|a_i| <= ||a|| <= |a1|+|a2| fails at {tuple(a)}"))
        if len(bad) >= 10:
            break
    return ValidationReport(bad)


# --------------------------------------------------------------------------
# evaluation, duality, extreme points
# --------------------------------------------------------------------------

def norm_eval(F: AbsNorm2, a) -> Scalar:
    """||a||_F; exact for polygonal norms."""
    if isinstance(F, BlackBoxNorm):
        return F(a)
    x, y = abs(a[0]), abs(a[1])
    if x == 0 and y == 0:
        return x * 0
    return max(w[0] * x + w[1] * y for w in F.edge_functionals)


def dual_norm(F: AbsNorm2) -> PolygonalNorm:
    """Polar polygon: the positive dual sphere, built edge by edge.

    Every edge of S_F^+ contributes its supporting functional; (1, 0) and
    (0, 1) are added when they are corners of the dual sphere, i.e. when the
    first (last) edge of F is not vertical (horizontal).
    """
    if isinstance(F, BlackBoxNorm):
        F = F.polygon
    report = validate_norm(F)
    if not report.ok:
        raise ValidationError(report.summary(), report.violations)
    ws = [Vec2(w.f1, w.f2) for w in F.edge_functionals]
    if ws[0] != E1:
        ws.insert(0, E1)
    if ws[-1] != E2:
        ws.append(E2)
    return PolygonalNorm(canonicalize(ws), source=f"dual of {F.source}" if F.source else None)


def swap_coordinates(F: PolygonalNorm) -> PolygonalNorm:
    """The norm (a1, a2) -> ||(a2, a1)||_F."""
    return PolygonalNorm(tuple(Vec2(v[1], v[0]) for v in reversed(F.vertices)))


def extreme_points(F: AbsNorm2) -> list:
    """All extreme points of the full unit ball, counterclockwise from e1."""
    F = require_polygonal(F, "extreme_points")
    q1 = list(F.vertices)
    ring = []
    ring += q1
    ring += [Vec2(-v[0], v[1]) for v in reversed(q1)]
    ring += [Vec2(-v[0], -v[1]) for v in q1]
    ring += [Vec2(v[0], -v[1]) for v in reversed(q1)]
    pts = []
    for v in ring:
        if not pts or pts[-1] != v:
            pts.append(v)
    if pts[0] == pts[-1]:
        pts.pop()
    n = len(pts)
    keep = []
    for i, q in enumerate(pts):
        p, r = pts[i - 1], pts[(i + 1) % n]
        if _cross(_sub(q, p), _sub(r, q)) != 0:
            keep.append(q)
    return keep


def positive_ball_polygon(F: PolygonalNorm) -> list:
    """Corners of B_F^+ counterclockwise, starting at the origin."""
    return [Vec2(ZERO, ZERO), *F.vertices]


# --------------------------------------------------------------------------
# slices
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SliceRegion:
    """S(B_F, f, eps) intersected with B_F^+.

    ``vertices`` are the corners of the closure (counterclockwise).  The
    side <f, b> = 1 - eps is open; ``contains`` respects that unless asked
    for the closure.
    """

    functional: Functional2
    epsilon: Scalar
    vertices: tuple
    arcs: tuple
    open_side: bool = True

    @property
    def level(self):
        return 1 - self.epsilon

    @property
    def empty(self) -> bool:
        return not self.vertices

    def contains(self, b, F: AbsNorm2 | None = None, closed: bool = False) -> bool:
        val = self.functional.pair(b)
        if closed and val < self.level:
            return False
        if not closed and val <= self.level:
            return False
        if b[0] < 0 or b[1] < 0:
            return False
        return F is None or norm_eval(F, b) <= 1


def clip_polygon(points: Sequence, f, level) -> list:
    """Sutherland-Hodgman clip of a convex polygon to {x : <f, x> >= level}."""
    out = []
    n = len(points)
    for i in range(n):
        p, q = points[i], points[(i + 1) % n]
        fp, fq = f[0] * p[0] + f[1] * p[1] - level, f[0] * q[0] + f[1] * q[1] - level
        if fp >= 0:
            out.append(Vec2(p[0], p[1]))
        if (fp > 0 > fq) or (fp < 0 < fq):
            t = fp / (fp - fq)
            out.append(lerp(p, q, t))
    dedup = []
    for v in out:
        if not dedup or dedup[-1] != v:
            dedup.append(v)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def clip_polyline(points: Sequence, f, level) -> list:
    """Pieces of an open polyline inside the closed halfplane <f, x> >= level."""
    pieces, cur = [], []
    vals = [f[0] * p[0] + f[1] * p[1] - level for p in points]
    for i, p in enumerate(points):
        if vals[i] >= 0:
            if not cur and i > 0 and vals[i - 1] < 0:
                t = vals[i - 1] / (vals[i - 1] - vals[i])
                cur.append(lerp(points[i - 1], p, t))
            if not cur or cur[-1] != p:
                cur.append(Vec2(p[0], p[1]))
        elif cur:
            t = vals[i - 1] / (vals[i - 1] - vals[i])
            end = lerp(points[i - 1], p, t)
            if cur[-1] != end:
                cur.append(end)
            pieces.append(tuple(cur))
            cur = []
    if cur:
        pieces.append(tuple(cur))
    return pieces


def _unit_functional(F: PolygonalNorm, f, approximate: bool) -> Functional2:
    f = Functional2.of(*f)
    size = norm_eval(F.dual, f)
    if size == 1:
        return f
    if approximate and abs(float(size) - 1) <= _approx_tol(F):
        return Functional2(f[0] / size, f[1] / size)
    raise ContractError(f"functional {f} has dual norm {fmt_scalar(size)}, expected 1")


def _unit_vector(F: PolygonalNorm, a, approximate: bool) -> Vec2:
    a = Vec2.of(*a)
    size = norm_eval(F, a)
    if size == 1:
        return a
    if approximate and abs(float(size) - 1) <= _approx_tol(F):
        return Vec2(a[0] / size, a[1] / size)
    raise ContractError(f"vector {a} has norm {fmt_scalar(size)}, expected 1")


def _approx_tol(F: PolygonalNorm) -> float:
    return max(1e-6, 4.0 * (F.hausdorff or 0.0))


def normalize_functional(F: AbsNorm2, f) -> Functional2:
    """Contract check for a unit dual vector (rescaled within tolerance for black boxes)."""
    return _unit_functional(as_polygonal(F), f, isinstance(F, BlackBoxNorm))


def normalize_vector(F: AbsNorm2, a) -> Vec2:
    return _unit_vector(as_polygonal(F), a, isinstance(F, BlackBoxNorm))


def slice_positive(F: AbsNorm2, f, eps) -> SliceRegion:
    """Exact polygonal geometry of S(B_F, f, eps) intersected with B_F^+."""
    P = as_polygonal(F)
    f = _unit_functional(P, f, isinstance(F, BlackBoxNorm))
    eps = eps if isinstance(eps, float) and isinstance(F, BlackBoxNorm) else to_fraction(eps)
    if not 0 < eps < 1:
        raise ContractError(f"slice width must lie in (0, 1), got {eps}")
    level = 1 - to_fraction(eps)
    region = clip_polygon(positive_ball_polygon(P), f, level)
    arcs = clip_polyline(P.vertices, f, level)
    return SliceRegion(f, eps, tuple(region), tuple(arcs))


# --------------------------------------------------------------------------
# black-box approximation
# --------------------------------------------------------------------------

def _snap(x: float) -> Fraction:
    r = Fraction(x).limit_denominator(10**6)
    if abs(float(r) - x) <= 1e-13:
        return r
    return Fraction(x)


def upper_chain(points: Iterable, tol: float = 0.0) -> list:
    """Outer boundary arc from e1 to e2 of conv({0, e1, e2} U points).

    Points are assumed to lie in the unit square.  With ``tol > 0`` nearly
    collinear corners are dropped as well (relative cross-product test).
    """
    pts = {Vec2.of(*p) for p in points} | {E1, E2}
    pts = [p for p in pts if p[0] >= 0 and p[1] >= 0 and (p[0] or p[1])]
    # order by polar angle, farthest point first on a ray
    def key(p):
        return (math.atan2(float(p[1]), float(p[0])), -(float(p[0]) ** 2 + float(p[1]) ** 2))

    pts.sort(key=key)
    ordered = []
    for p in pts:
        if ordered and _cross(ordered[-1], p) == 0:
            continue
        ordered.append(p)
    stack = [Vec2(ZERO, ZERO)]
    for p in ordered:
        while len(stack) >= 2:
            d1, d2 = _sub(stack[-1], stack[-2]), _sub(p, stack[-1])
            c = _cross(d1, d2)
            if c <= 0:
                stack.pop()
                continue
            if tol and len(stack) >= 3:
                scale = math.hypot(float(d1[0]), float(d1[1])) * math.hypot(float(d2[0]), float(d2[1]))
                if float(c) <= tol * scale:
                    stack.pop()
                    continue
            break
        stack.append(p)
    return stack[1:]


def polygon_from_points(points: Iterable, tol: float = 0.0, **meta) -> PolygonalNorm:
    """Smallest polygonal norm whose unit ball contains the given points."""
    return polygon(upper_chain(points, tol), **meta)


def approximate_polygon(F: BlackBoxNorm, n: int) -> PolygonalNorm:
    """Inscribed polygon through boundary points at angles k*pi/(2n).

    The result carries the measured Hausdorff distance to the true positive
    sphere (``hausdorff``) and a certified lower bound on the number of edges
    of the true sphere (``edge_lower_bound``).
    """
    if not isinstance(F, BlackBoxNorm):
        raise UnsupportedRepresentationError("approximate_polygon expects a black-box norm")
    if n < 2:
        raise ContractError(f"need n >= 2 probe intervals, got {n}")
    report = validate_norm(F)
    if not report.ok:
        raise ValidationError(report.summary(), report.violations)
    pts = [E1]
    for k in range(1, n):
        th = k * math.pi / (2 * n)
        c, s = math.cos(th), math.sin(th)
        r = F((c, s))
        pts.append(Vec2(_snap(c / r), _snap(s / r)))
    pts.append(E2)
    chain = upper_chain(pts, tol=1e-12)
    turns = len(chain) - 2
    bound = (turns + 1) // 2 + 1 if turns > 0 else 1
    P = PolygonalNorm(canonicalize(chain))
    dist = _hausdorff(F, P)
    return PolygonalNorm(P.vertices, hausdorff=dist, edge_lower_bound=bound,
                         source=f"{F.name} inscribed n={n}")


def _hausdorff(F: BlackBoxNorm, P: PolygonalNorm, per_edge: int = 16) -> float:
    """Measured Hausdorff distance (Euclidean) between S_F^+ and the polyline."""
    V = P.float_vertices
    worst = 0.0
    ts = np.linspace(0.0, 1.0, per_edge + 1)
    for p, q in zip(V[:-1], V[1:]):
        d = q - p
        seg2 = float(d @ d)
        for t in ts:
            x = p + t * d
            r = F(x)
            if r > 0:
                worst = max(worst, float(np.hypot(*(x / r - x))))
        a0, a1 = math.atan2(p[1], p[0]), math.atan2(q[1], q[0])
        for th in np.linspace(a0, a1, per_edge + 1):
            u = np.array([math.cos(th), math.sin(th)])
            y = u / F(u)
            s = 0.0 if seg2 == 0 else min(1.0, max(0.0, float((y - p) @ d) / seg2))
            worst = max(worst, float(np.hypot(*(y - (p + s * d)))))
    return worst


def samples_interpolator(radii: Sequence[float]) -> Callable[[float, float], float]:
    """Gauge of the polygon through radii[k] * (cos, sin)(k*pi/(2n))."""
    r = [float(x) for x in radii]
    if len(r) < 2 or min(r) <= 0:
        raise MalformedInputError("theta_values needs at least two positive radii")
    n = len(r) - 1
    pts = [(r[k] * math.cos(k * math.pi / (2 * n)), r[k] * math.sin(k * math.pi / (2 * n))) for k in range(n + 1)]
    funcs = []
    for p, q in zip(pts[:-1], pts[1:]):
        det = p[0] * q[1] - p[1] * q[0]
        funcs.append(((q[1] - p[1]) / det, (p[0] - q[0]) / det))

    def evaluate(x, y):
        if x == 0 and y == 0:
            return 0.0
        th = math.atan2(y, x)
        k = min(n - 1, int(th / (math.pi / (2 * n))))
        w = funcs[k]
        return w[0] * x + w[1] * y

    return evaluate


L1 = polygon([(1, 0), (0, 1)])
LINF = polygon([(1, 0), (1, 1), (0, 1)])
