"""Explicit Daugavet centers on discretized L1 spaces and their defects.

``DiscreteL1(n)`` is R^n with ||x|| = sum w_i |x_i| (uniform w_i = 1/n), i.e.
step functions on [0, 1] at resolution n.  Functionals act through the
weighted pairing <x*, x> = sum w_i x*_i x_i, so their norm is max |x*_i|.
Refining n -> 2n repeats every coordinate and is an isometry on both sides.

Operators are stored as blocks between the components of their domain and
codomain; a block is either a scalar multiple of the identity or a dense
matrix of Fractions.  Operator norms are computed exactly by evaluating the
codomain norm at the extreme points of the domain ball, using integer
arithmetic on a common denominator.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

from .classify import F_KIND, classify_norm, face_points
from .errors import ContractError
from .norm_core import (
    L1,
    LINF,
    AbsNorm2,
    PolygonalNorm,
    dual_norm,
    fmt_scalar,
    require_polygonal,
    supporting_functional,
    to_fraction,
)

L1_KIND = "DiscreteL1"
LINF_KIND = "DiscreteLInf"


def _frac_array(values) -> np.ndarray:
    return np.array([to_fraction(v) for v in values], dtype=object)


def _as_vector(x) -> np.ndarray:
    x = np.asarray(x)
    if x.dtype == object:
        return x
    if np.issubdtype(x.dtype, np.integer):
        return np.array([Fraction(int(v)) for v in x], dtype=object)
    return x.astype(float)


# --------------------------------------------------------------------------
# spaces
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelSpace:
    kind: str
    n: int
    weights: tuple

    @property
    def dim(self) -> int:
        return self.n

    @property
    def components(self) -> tuple:
        return (self,)

    def _w(self, exact: bool):
        return np.array(self.weights, dtype=object) if exact else np.array([float(w) for w in self.weights])

    def norm(self, x):
        x = _as_vector(x)
        exact = x.dtype == object
        if self.kind == L1_KIND:
            return (self._w(exact) * np.abs(x)).sum()
        return np.abs(x).max()

    def dual_norm(self, xs):
        return self.dual().norm(xs)

    def pairing(self, xs, x):
        xs, x = _as_vector(xs), _as_vector(x)
        exact = xs.dtype == object and x.dtype == object
        return (self._w(exact) * xs * x).sum()

    def dual(self) -> "ModelSpace":
        return ModelSpace(LINF_KIND if self.kind == L1_KIND else L1_KIND, self.n, self.weights)

    def refine(self, factor: int) -> "ModelSpace":
        if self.weights != tuple([Fraction(1, self.n)] * self.n):
            raise ContractError("only uniform discretizations can be refined")
        return ModelSpace(self.kind, self.n * factor, tuple([Fraction(1, self.n * factor)] * (self.n * factor)))


def make_discrete_l1(n: int) -> ModelSpace:
    """Uniform discretization of L1[0, 1] with n atoms."""
    if int(n) != n or n < 1:
        raise ContractError(f"grid size must be a positive integer, got {n}")
    n = int(n)
    return ModelSpace(L1_KIND, n, tuple([Fraction(1, n)] * n))


@dataclass(frozen=True)
class SumSpace:
    """X1 (+)_F X2 with ||(x1, x2)|| = F(||x1||, ||x2||)."""

    F: PolygonalNorm
    X1: ModelSpace
    X2: ModelSpace

    @property
    def dim(self) -> int:
        return self.X1.dim + self.X2.dim

    @property
    def components(self) -> tuple:
        return (self.X1, self.X2)

    def split(self, x):
        x = _as_vector(x)
        return x[: self.X1.dim], x[self.X1.dim:]

    def norm(self, x):
        x1, x2 = self.split(x)
        a = (self.X1.norm(x1), self.X2.norm(x2))
        if x1.dtype == object:
            return self.F(a)
        W = self.F.float_functionals
        return float((W @ np.array(a, dtype=float)).max())

    def dual(self) -> "SumSpace":
        return SumSpace(dual_norm(self.F), self.X1.dual(), self.X2.dual())

    def dual_norm(self, xs):
        return self.dual().norm(xs)

    def pairing(self, xs, x):
        xs1, xs2 = self.split(xs)
        x1, x2 = self.split(x)
        return self.X1.pairing(xs1, x1) + self.X2.pairing(xs2, x2)


Space = Union[ModelSpace, SumSpace]


def _split(space: Space, x) -> list:
    x = _as_vector(x)
    out, k = [], 0
    for c in space.components:
        out.append(x[k:k + c.dim])
        k += c.dim
    return out


# --------------------------------------------------------------------------
# operators
# --------------------------------------------------------------------------

def _is_scalar(block) -> bool:
    return not isinstance(block, np.ndarray)


def _dense_block(block, rows: int, cols: int) -> np.ndarray:
    if not _is_scalar(block):
        return block
    out = np.full((rows, cols), Fraction(0), dtype=object)
    if block != 0:
        for i in range(min(rows, cols)):
            out[i, i] = block
    return out


@dataclass(frozen=True)
class LinearMap:
    """Block operator; ``blocks[r][d]`` maps domain component d to codomain component r."""

    domain: Space
    codomain: Space
    blocks: tuple
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if len(self.blocks) != len(self.codomain.components):
            raise ContractError("block rows do not match the codomain")
        for r, row in enumerate(self.blocks):
            if len(row) != len(self.domain.components):
                raise ContractError("block columns do not match the domain")
            for d, b in enumerate(row):
                rc, dc = self.codomain.components[r], self.domain.components[d]
                if _is_scalar(b):
                    if b != 0 and rc.dim != dc.dim:
                        raise ContractError("scalar block between components of different sizes")
                elif b.shape != (rc.dim, dc.dim):
                    raise ContractError(f"block shape {b.shape} does not match ({rc.dim}, {dc.dim})")

    def apply(self, x) -> np.ndarray:
        parts = _split(self.domain, x)
        out = []
        for r, row in enumerate(self.blocks):
            acc = None
            for d, b in enumerate(row):
                if _is_scalar(b):
                    if b == 0:
                        continue
                    term = (b if parts[d].dtype == object else float(b)) * parts[d]
                else:
                    M = b if parts[d].dtype == object else b.astype(float)
                    term = M.dot(parts[d])
                acc = term if acc is None else acc + term
            if acc is None:
                acc = np.zeros(self.codomain.components[r].dim, dtype=parts[0].dtype)
                if parts[0].dtype == object:
                    acc = np.array([Fraction(0)] * len(acc), dtype=object)
            out.append(acc)
        return np.concatenate(out)

    def dense(self) -> np.ndarray:
        rows = []
        for r, row in enumerate(self.blocks):
            rc = self.codomain.components[r]
            rows.append(np.hstack([_dense_block(b, rc.dim, self.domain.components[d].dim)
                                   for d, b in enumerate(row)]))
        return np.vstack(rows)

    def transpose(self) -> "LinearMap":
        """Plain matrix transpose, read as a map between the dual spaces."""
        blocks = tuple(
            tuple(b if _is_scalar(b) else b.T.copy() for b in (row[r] for row in self.blocks))
            for r in range(len(self.domain.components))
        )
        return LinearMap(self.codomain.dual(), self.domain.dual(), blocks)

    def adjoint(self) -> "LinearMap":
        """Adjoint for the weighted pairings: diag(1/w_dom) M^T diag(w_cod)."""
        T = self.transpose()
        blocks = []
        for d, dc in enumerate(self.domain.components):
            row = []
            for r, rc in enumerate(self.codomain.components):
                b = T.blocks[d][r]
                if _is_scalar(b):
                    if b != 0 and dc.weights != rc.weights:
                        b = _dense_block(b, dc.dim, rc.dim)
                    else:
                        row.append(b)
                        continue
                wd = np.array(dc.weights, dtype=object)
                wc = np.array(rc.weights, dtype=object)
                row.append((b / wd[:, None]) * wc[None, :])
            blocks.append(tuple(row))
        return LinearMap(T.domain, T.codomain, tuple(blocks))

    def __add__(self, other) -> "LinearMap":
        if isinstance(other, RankOneOp):
            other = other.as_map()
        if other.domain != self.domain or other.codomain != self.codomain:
            raise ContractError("operators act between different spaces")
        blocks = []
        for r, (row1, row2) in enumerate(zip(self.blocks, other.blocks)):
            rc = self.codomain.components[r]
            row = []
            for d, (b1, b2) in enumerate(zip(row1, row2)):
                if _is_scalar(b1) and _is_scalar(b2):
                    row.append(b1 + b2)
                else:
                    dc = self.domain.components[d]
                    row.append(_dense_block(b1, rc.dim, dc.dim) + _dense_block(b2, rc.dim, dc.dim))
            blocks.append(tuple(row))
        return LinearMap(self.domain, self.codomain, tuple(blocks))

    def scaled(self, c) -> "LinearMap":
        c = to_fraction(c)
        blocks = tuple(tuple(b * c for b in row) for row in self.blocks)
        return LinearMap(self.domain, self.codomain, blocks, dict(self.meta))


def identity(X: ModelSpace) -> LinearMap:
    return LinearMap(X, X, ((Fraction(1),),), {"center": "identity"})


@dataclass(frozen=True)
class RankOneOp:
    """x -> <functional, x> vector, with the weighted pairing of the domain."""

    domain: Space
    codomain: Space
    functional: np.ndarray = field(compare=False)
    vector: np.ndarray = field(compare=False)

    @property
    def norm(self):
        return self.domain.dual_norm(self.functional) * self.codomain.norm(self.vector)

    def as_map(self) -> LinearMap:
        phis = _split(self.domain, self.functional)
        ys = _split(self.codomain, self.vector)
        blocks = []
        for y in ys:
            row = []
            for dc, phi in zip(self.domain.components, phis):
                w = np.array(dc.weights, dtype=object)
                row.append(np.outer(y, phi * w))
            blocks.append(tuple(row))
        return LinearMap(self.domain, self.codomain, tuple(blocks))

    def apply(self, x):
        return self.domain.pairing(self.functional, x) * _as_vector(self.vector)


def rank_one(space_in: Space, space_out: Space, functional, vector) -> RankOneOp:
    phi = _frac_array(functional)
    y = _frac_array(vector)
    if len(phi) != space_in.dim:
        raise ContractError(f"functional has {len(phi)} entries, domain has dimension {space_in.dim}")
    if len(y) != space_out.dim:
        raise ContractError(f"vector has {len(y)} entries, codomain has dimension {space_out.dim}")
    return RankOneOp(space_in, space_out, phi, y)


# --------------------------------------------------------------------------
# exact operator norms
# --------------------------------------------------------------------------

_INT64_SAFE = 2**62


def _lcm_of_denominators(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


def _integerize(M: np.ndarray) -> tuple:
    """(integer matrix, D) with M = integer matrix / D."""
    D = _lcm_of_denominators(M.flat)
    Mi = np.empty(M.shape, dtype=object)
    for idx, v in np.ndenumerate(M):
        v = Fraction(v)
        Mi[idx] = v.numerator * (D // v.denominator)
    return Mi, D


def _max_abs(A: np.ndarray) -> int:
    return max((abs(int(v)) for v in A.flat), default=0)


def _extreme_images(X: ModelSpace, M: np.ndarray) -> tuple:
    """Images of the extreme points of B_X (up to a global sign) as integer rows over a denominator."""
    if X.kind == L1_KIND:
        # extreme points are +-e_i / w_i
        d = _lcm_of_denominators(w.numerator for w in X.weights)
        scale = np.array([int(d / w) for w in X.weights], dtype=object)
        return (M * scale[None, :]).T.copy(), d
    if X.n > 16:
        raise ContractError("sign-vector enumeration of a sup-norm ball is limited to 16 atoms")
    signs = np.array([(1,) + s for s in itertools.product((1, -1), repeat=X.n - 1)], dtype=object)
    if X.n * _max_abs(M) < _INT64_SAFE:
        return signs.astype(np.int64) @ M.astype(np.int64).T, 1
    return signs.dot(M.T), 1


def _norm_scale(space: Space):
    """(integer weights per component, multiplier) describing exact codomain norms."""
    if isinstance(space, ModelSpace):
        if space.kind == L1_KIND:
            Lw = _lcm_of_denominators(space.weights)
            return [int(w * Lw) for w in space.weights], Lw
        return None, 1
    raise TypeError


def _norm_of_images(space: Space, Y: np.ndarray) -> tuple:
    """(vals, q): the codomain norms of rows of Y are vals / q (Y integer)."""
    if isinstance(space, ModelSpace):
        W, q = _norm_scale(space)
        if W is None:
            return np.abs(Y).max(axis=-1), q
        Wa = np.array(W, dtype=Y.dtype)
        return (np.abs(Y) * Wa).sum(axis=-1), q
    m1 = space.X1.dim
    N1, e1 = _norm_of_images(space.X1, Y[..., :m1])
    N2, e2 = _norm_of_images(space.X2, Y[..., m1:])
    gs = space.F.edge_functionals
    Q = _lcm_of_denominators([g[0] / e1 for g in gs] + [g[1] / e2 for g in gs])
    vals = None
    for g in gs:
        c1, c2 = int(g[0] * Q / e1), int(g[1] * Q / e2)
        v = c1 * N1 + c2 * N2
        vals = v if vals is None else np.maximum(vals, v)
    return vals, Q


def _norm_bound(space: Space) -> int:
    """Upper bound of vals / max|Y| in :func:`_norm_of_images`."""
    if isinstance(space, ModelSpace):
        W, _ = _norm_scale(space)
        return 1 if W is None else sum(W)
    b1, b2 = _norm_bound(space.X1), _norm_bound(space.X2)
    e1, e2 = _norm_scale(space.X1)[1], _norm_scale(space.X2)[1]
    gs = space.F.edge_functionals
    Q = _lcm_of_denominators([g[0] / e1 for g in gs] + [g[1] / e2 for g in gs])
    return max(int(g[0] * Q / e1) * b1 + int(g[1] * Q / e2) * b2 for g in gs)


def _maybe_int64(bound: int, *arrays):
    if bound < _INT64_SAFE:
        return tuple(a.astype(np.int64) for a in arrays)
    return arrays


def op_norm(A) -> Fraction:
    """Exact operator norm by enumerating extreme points of the domain ball."""
    if isinstance(A, RankOneOp):
        A = A.as_map()
    M, D = _integerize(A.dense())
    dom, cod = A.domain, A.codomain
    if isinstance(dom, ModelSpace):
        images, d = _extreme_images(dom, M)
        (images,) = _maybe_int64(_max_abs(images) * _norm_bound(cod), images)
        vals, q = _norm_of_images(cod, images)
        return Fraction(int(vals.max()), q * d * D)
    if not isinstance(dom, SumSpace):
        raise ContractError(f"unsupported domain {type(dom).__name__}")
    n1 = dom.X1.dim
    I1, d1 = _extreme_images(dom.X1, M[:, :n1])
    I2, d2 = _extreme_images(dom.X2, M[:, n1:])
    # by absoluteness only the positive vertices (a1, a2) of B_F matter, with a relative sign t
    verts = dom.F.vertices
    Q = _lcm_of_denominators([a[0] / d1 for a in verts] + [a[1] / d2 for a in verts])
    coeffs = [(int(a[0] * Q / d1), int(a[1] * Q / d2)) for a in verts]
    pmax = max(p1 for p1, _ in coeffs) * _max_abs(I1) + max(p2 for _, p2 in coeffs) * _max_abs(I2)
    I1, I2 = _maybe_int64(pmax * _norm_bound(cod), I1, I2)
    best, q = 0, 1
    chunk = max(1, 2_000_000 // max(1, I2.shape[0] * I2.shape[1]))
    for p1, p2 in coeffs:
        if p2 == 0 or p1 == 0:
            Y = p1 * I1 if p2 == 0 else p2 * I2
            vals, q = _norm_of_images(cod, Y)
            best = max(best, int(vals.max()))
            continue
        for t in (1, -1):
            for s in range(0, I1.shape[0], chunk):
                Y = p1 * I1[s:s + chunk, None, :] + (t * p2) * I2[None, :, :]
                vals, q = _norm_of_images(cod, Y)
                best = max(best, int(vals.max()))
    return Fraction(best, q * Q * D)


# --------------------------------------------------------------------------
# centers
# --------------------------------------------------------------------------

def _class_pair(F: PolygonalNorm):
    tag = classify_norm(F)
    return (tag.m, tag.n) if tag.kind == F_KIND else None, tag.name


def face_functional(F: AbsNorm2) -> tuple:
    """(f1, f2) with f1 a1 + f2 a2 = 1 on the segment [c1, c2] = [(1, hat1), (hat2, 1)]."""
    F = require_polygonal(F, "face_functional")
    c1, c2 = face_points(F)
    f = supporting_functional(c1, c2)
    return f[0], f[1]


def center_from_sum(F: AbsNorm2, X: ModelSpace) -> LinearMap:
    """G(x1, x2) = f1 x1 + f2 x2 from X (+)_F X to X."""
    F = require_polygonal(F, "center_from_sum")
    pair, name = _class_pair(F)
    if pair not in ((2, 2), (2, 3)):
        raise ContractError(
            f"{name}: no Daugavet center from an F-sum exists unless F is l1, linf, F_{{2,2}} or F_{{2,3}}"
            + ("; use center_from_sum_classical" if pair is None and name in ("L1", "LInf") else "")
        )
    f1, f2 = face_functional(F)
    return LinearMap(SumSpace(F, X, X), X, ((f1, f2),), {"center": "from_sum", "coefficients": (f1, f2)})


def center_from_sum_classical(kind: str, f1, f2, X: ModelSpace) -> LinearMap:
    """x1 + x2 on the l1-sum, or f1 x1 + f2 x2 (f1, f2 > 0) on the linf-sum."""
    f1, f2 = to_fraction(f1), to_fraction(f2)
    if kind == "l1_sum":
        if (f1, f2) != (1, 1):
            raise ContractError("the l1-sum center uses f1 = f2 = 1")
        F = L1
    elif kind == "linf_sum":
        if f1 <= 0 or f2 <= 0:
            raise ContractError("the linf-sum center needs positive coefficients")
        F = LINF
    else:
        raise ContractError(f"unknown classical sum {kind!r}")
    meta = {"center": "from_sum_classical", "coefficients": (f1, f2), "norm": f1 + f2 if kind == "linf_sum" else 1}
    return LinearMap(SumSpace(F, X, X), X, ((f1, f2),), meta)


def center_into_sum(F: AbsNorm2, X: ModelSpace) -> LinearMap:
    """Gx = (f1 x, f2 x) from X to X (+)_F X; (f1, f2) is the face functional of F*."""
    F = require_polygonal(F, "center_into_sum")
    pair, name = _class_pair(F)
    if pair not in ((2, 2), (3, 2)):
        raise ContractError(
            f"{name}: no Daugavet center into an F-sum exists unless F is l1, linf, F_{{2,2}} or F_{{3,2}}"
        )
    f1, f2 = face_functional(dual_norm(F))
    return LinearMap(X, SumSpace(F, X, X), ((f1,), (f2,)), {"center": "into_sum", "coefficients": (f1, f2)})


def center_into_sum_classical(kind: str, f1, f2, X: ModelSpace) -> LinearMap:
    """x -> (x, x) into the linf-sum, or x -> (f1 x, f2 x) (f1, f2 > 0) into the l1-sum."""
    f1, f2 = to_fraction(f1), to_fraction(f2)
    if kind == "linf_sum":
        if (f1, f2) != (1, 1):
            raise ContractError("the linf-sum center uses f1 = f2 = 1")
        F = LINF
    elif kind == "l1_sum":
        if f1 <= 0 or f2 <= 0:
            raise ContractError("the l1-sum center needs positive coefficients")
        F = L1
    else:
        raise ContractError(f"unknown classical sum {kind!r}")
    meta = {"center": "into_sum_classical", "coefficients": (f1, f2), "norm": F((f1, f2))}
    return LinearMap(X, SumSpace(F, X, X), ((f1,), (f2,)), meta)


# --------------------------------------------------------------------------
# defects
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DefectReport:
    normG: Fraction
    normT: Fraction
    normSum: Fraction
    defect: Fraction
    n: int
    metadata: dict = field(default_factory=dict, compare=False)

    def row(self) -> dict:
        return {"n": self.n, "normG": fmt_scalar(self.normG), "normT": fmt_scalar(self.normT),
                "normSum": fmt_scalar(self.normSum), "defect": fmt_scalar(self.defect)}


def daugavet_defect(G: LinearMap, T: RankOneOp, normG=None) -> DefectReport:
    """||G|| + ||T|| - ||G + T||, every norm exact."""
    if T.domain != G.domain or T.codomain != G.codomain:
        raise ContractError("G and T act between different spaces")
    nG = op_norm(G) if normG is None else normG
    nT = T.norm
    nS = op_norm(G + T)
    return DefectReport(nG, nT, nS, nG + nT - nS, G.domain.components[0].n, dict(G.meta))


# --------------------------------------------------------------------------
# slice-criterion witnesses
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SliceWitness:
    x: np.ndarray | None
    value: float
    pairing: float
    found: bool


def _spike_candidates(X: ModelSpace, xs: np.ndarray, y_parts: list, coefs: list, eps: float, k: int) -> list:
    """Atoms i with |x*_i| >= (1 - eps/4) ||x*||, best aligned with y0 first."""
    mag = np.abs(xs)
    top = mag.max()
    if top == 0:
        return [(0, 1.0)]
    idx = np.flatnonzero(mag >= (1 - eps / 4) * top)
    sgn = np.sign(xs[idx])
    loss = np.zeros(len(idx))
    for y, c in zip(y_parts, coefs):
        if c is None:
            continue
        yi = y[idx] * sgn * np.sign(c)
        loss += np.where(yi < 0, -yi, 0.0)
    order = np.lexsort((idx, loss))[:k]
    return [(int(idx[o]), float(sgn[o])) for o in order]


def slice_criterion_witness(G: LinearMap, y0, xstar, eps, k: int = 4) -> SliceWitness:
    """Search x in S(B_X, x*, eps) with ||Gx + y0|| > 2 - eps among spike vectors.

    Each domain component gets a unit spike +-e_i / w_i at an atom where |x*|
    is (nearly) maximal, signed to match x*; on a sum domain the spikes are
    weighted by (a1, a2) from the vertices of B_F^+.  Returns the best value
    found even when it misses the threshold.
    """
    eps = float(eps)
    dom, cod = G.domain, G.codomain
    y0 = np.asarray([float(v) for v in y0])
    xs_parts = [np.asarray([float(v) for v in p]) for p in _split(dom, xstar)]
    y_parts = [np.asarray([float(v) for v in p]) for p in _split(cod, y0)]
    comps = dom.components
    cands = []
    for d, (X, xs) in enumerate(zip(comps, xs_parts)):
        coefs = [row[d] if _is_scalar(row[d]) and row[d] != 0 else None for row in G.blocks]
        cands.append(_spike_candidates(X, xs, y_parts, coefs, eps, k))
    if isinstance(dom, SumSpace):
        weights = [(float(a[0]), float(a[1])) for a in dom.F.vertices]
    else:
        weights = [(1.0,)]
    best = SliceWitness(None, -math.inf, 0.0, False)
    for combo in itertools.product(*cands):
        spikes = []
        for X, (i, s) in zip(comps, combo):
            v = np.zeros(X.dim)
            v[i] = s / float(X.weights[i])
            spikes.append(v)
        for a in weights:
            x = np.concatenate([ai * v for ai, v in zip(a, spikes)])
            pairing = float(dom.pairing(np.asarray(xstar, dtype=float), x))
            if pairing <= 1 - eps:
                continue
            value = float(cod.norm(G.apply(x) + y0))
            if value > best.value:
                best = SliceWitness(x, value, pairing, value > 2 - eps)
    return best


# --------------------------------------------------------------------------
# refinement studies
# --------------------------------------------------------------------------

def repeat_steps(values: Sequence, n: int) -> list:
    """Step data at resolution m embedded at resolution n (m | n)."""
    m = len(values)
    if n % m:
        raise ContractError(f"resolution {n} is not a multiple of {m}")
    return [to_fraction(v) for v in values for _ in range(n // m)]


@dataclass(frozen=True)
class CenterSpec:
    """How to build a center at resolution n: identity, from_sum or into_sum."""

    kind: str
    F: PolygonalNorm | None = None

    def build(self, n: int) -> LinearMap:
        X = make_discrete_l1(n)
        if self.kind == "identity":
            return identity(X)
        if self.kind == "from_sum":
            return center_from_sum(self.F, X)
        if self.kind == "into_sum":
            return center_into_sum(self.F, X)
        raise ContractError(f"unknown center kind {self.kind!r}")


@dataclass(frozen=True)
class StepRankOne:
    """Rank-one operator given by step functions at a coarse resolution m.

    ``functional`` and ``vector`` hold one list of m step values per
    component of the domain and codomain respectively.  With ``normalize``
    both factors are scaled to norm one, so ||T|| = 1.
    """

    functional: tuple
    vector: tuple
    normalize: bool = False

    @property
    def m(self) -> int:
        return len(self.functional[0])

    def build(self, G: LinearMap) -> RankOneOp:
        n = G.domain.components[0].n
        if len(self.functional) != len(G.domain.components) or len(self.vector) != len(G.codomain.components):
            raise ContractError("step data does not match the components of the center")
        phi = [v for part in self.functional for v in repeat_steps(part, n)]
        y = [v for part in self.vector for v in repeat_steps(part, n)]
        T = rank_one(G.domain, G.codomain, phi, y)
        if self.normalize:
            a, b = G.domain.dual_norm(T.functional), G.codomain.norm(T.vector)
            if a == 0 or b == 0:
                raise ContractError("cannot normalize a zero step function")
            T = RankOneOp(T.domain, T.codomain, T.functional / a, T.vector / b)
        return T


@dataclass(frozen=True)
class ConvergenceStudy:
    reports: list
    ratios: list
    slope_estimate: float
    C_estimate: float
    passed: bool
    rho: float

    def csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "normG", "normT", "normSum", "defect"])
        for r in self.reports:
            w.writerow([r.n, fmt_scalar(r.normG), fmt_scalar(r.normT), fmt_scalar(r.normSum), fmt_scalar(r.defect)])
        return buf.getvalue()

    def summary(self) -> dict:
        return {"slope_estimate": self.slope_estimate, "C_estimate": self.C_estimate, "pass": self.passed}


def convergence_study(builder: CenterSpec | Callable, T_spec: StepRankOne, n_list: Sequence[int],
                      rho: float = 0.75, tol: float = 1e-12, settle: int = 32) -> ConvergenceStudy:
    """Defects of G + T for a fixed coarse T over refinements of the grid.

    Passes when every defect is nonnegative and, from n >= ``settle`` on,
    each doubling shrinks the defect to at most rho times its value (plus tol).
    C_estimate is max n * defect(n) over those n.
    """
    build = builder.build if isinstance(builder, CenterSpec) else builder
    n_list = sorted(int(n) for n in n_list)
    for n in n_list:
        if n % T_spec.m:
            raise ContractError(f"grid size {n} is not a multiple of the step resolution {T_spec.m}")
    reports = []
    for n in n_list:
        G = build(n)
        reports.append(daugavet_defect(G, T_spec.build(G)))
    ratios, ok = [], all(r.defect >= 0 for r in reports)
    for prev, cur in zip(reports[:-1], reports[1:]):
        if cur.n != 2 * prev.n:
            continue
        d0, d1 = float(prev.defect), float(cur.defect)
        ratios.append(d1 / d0 if d0 > 0 else 0.0)
        if prev.n >= settle and d1 > rho * d0 + tol:
            ok = False
    late = [r for r in reports if r.n >= settle] or reports
    C = max(float(r.n * r.defect) for r in late)
    pts = [(math.log(r.n), math.log(float(r.defect))) for r in reports if r.defect > 0]
    if len(pts) >= 2:
        xs, ys = np.array(pts).T
        slope = float(np.polyfit(xs, ys, 1)[0])
    else:
        slope = float("nan")
    return ConvergenceStudy(reports, ratios, slope, C, ok, rho)
