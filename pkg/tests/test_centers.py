import itertools
import math
import random
from fractions import Fraction as Fr

import numpy as np
import pytest

from absnorm import (
    L1,
    LINF,
    CenterSpec,
    ContractError,
    LinearMap,
    StepRankOne,
    SumSpace,
    center_from_sum,
    center_from_sum_classical,
    center_into_sum,
    center_into_sum_classical,
    convergence_study,
    daugavet_defect,
    dual_norm,
    make_discrete_l1,
    op_norm,
    rank_one,
    slice_criterion_witness,
)
from absnorm.centers import identity

from conftest import F22, F23, F23_SKEW, F32
from oracles import ray_gauge


# ---------------------------------------------------------------- independent float oracle

def _space_norm(space, x):
    x = np.asarray(x, dtype=float)
    if isinstance(space, SumSpace):
        a = (_space_norm(space.X1, x[: space.X1.dim]), _space_norm(space.X2, x[space.X1.dim:]))
        return float(ray_gauge(space.F.vertices, (Fr(a[0]), Fr(a[1]))))
    w = np.array([float(v) for v in space.weights])
    return float((w * np.abs(x)).sum()) if space.kind.endswith("L1") else float(np.abs(x).max())


def _unit_ball_corners(X):
    n, w = X.n, [float(v) for v in X.weights]
    if X.kind.endswith("L1"):
        for i in range(n):
            for s in (1, -1):
                e = np.zeros(n)
                e[i] = s / w[i]
                yield e
    else:
        for s in itertools.product((1, -1), repeat=n):
            yield np.array(s, dtype=float)


def _domain_corners(space):
    if not isinstance(space, SumSpace):
        yield from _unit_ball_corners(space)
        return
    weights = set()
    for v in space.F.vertices:
        weights.add((float(v[0]), float(v[1])))
    for a1, a2 in weights:
        for u in _unit_ball_corners(space.X1):
            for v in _unit_ball_corners(space.X2):
                yield np.concatenate([a1 * u, a2 * v])


def oracle_op_norm(A):
    M = np.array([[float(v) for v in row] for row in A.dense()])
    return max(_space_norm(A.codomain, M @ x) for x in _domain_corners(A.domain))


def _rand_block(rng, rows, cols):
    return np.array([[Fr(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(cols)] for _ in range(rows)],
                    dtype=object)


def _rand_map(rng, dom, cod):
    blocks = tuple(tuple(_rand_block(rng, rc.dim, dc.dim) for dc in dom.components) for rc in cod.components)
    return LinearMap(dom, cod, blocks)


# ---------------------------------------------------------------- spaces

def test_discrete_l1_basics():
    X = make_discrete_l1(4)
    assert X.dim == 4 and X.kind.endswith("L1")
    x = np.array([Fr(1), Fr(-2), Fr(0), Fr(1)], dtype=object)
    assert X.norm(x) == 1
    assert X.dual().kind.endswith("LInf") and X.dual().norm(x) == 2
    assert X.pairing(x, x) == Fr(6, 4)
    assert X.refine(2).n == 8
    with pytest.raises(ContractError):
        make_discrete_l1(0)


def test_sum_space_norm():
    X = make_discrete_l1(2)
    S = SumSpace(F22, X, X)
    x = np.array([Fr(2), Fr(0), Fr(0), Fr(2)], dtype=object)
    assert S.norm(x) == Fr(3, 2)
    assert S.dual().F == dual_norm(F22)


# ---------------------------------------------------------------- exact operator norm

@pytest.mark.parametrize("kinds", [("L1", "L1"), ("L1", "LInf"), ("LInf", "L1"), ("LInf", "LInf")])
def test_op_norm_matches_oracle_model_spaces(kinds):
    rng = random.Random(len(kinds[0]) * 10 + len(kinds[1]))
    for n in (1, 3, 5):
        X = make_discrete_l1(n)
        dom = X if kinds[0] == "L1" else X.dual()
        cod = X if kinds[1] == "L1" else X.dual()
        for _ in range(4):
            A = _rand_map(rng, dom, cod)
            assert float(op_norm(A)) == pytest.approx(oracle_op_norm(A), rel=1e-12)


@pytest.mark.parametrize("F", [F22, F23, F32, L1, LINF])
def test_op_norm_matches_oracle_sum_spaces(F):
    rng = random.Random(17)
    X = make_discrete_l1(3)
    S = SumSpace(F, X, X)
    for A in (_rand_map(rng, S, X), _rand_map(rng, X, S), _rand_map(rng, S, S)):
        assert float(op_norm(A)) == pytest.approx(oracle_op_norm(A), rel=1e-12)


def test_op_norm_dominates_random_vectors():
    rng = np.random.default_rng(3)
    X = make_discrete_l1(4)
    S = SumSpace(F23, X, X)
    A = _rand_map(random.Random(2), S, S)
    nA = float(op_norm(A))
    M = np.array([[float(v) for v in row] for row in A.dense()])
    for _ in range(500):
        x = rng.normal(size=S.dim)
        assert _space_norm(S, M @ x) <= nA * _space_norm(S, x) + 1e-9


def test_op_norm_equals_adjoint_norm():
    rng = random.Random(5)
    X = make_discrete_l1(4)
    for dom, cod in [(X, X), (SumSpace(F22, X, X), X), (X, SumSpace(F32, X, X))]:
        A = _rand_map(rng, dom, cod)
        assert op_norm(A) == op_norm(A.adjoint())


def test_apply_matches_dense():
    rng = random.Random(1)
    X = make_discrete_l1(3)
    A = _rand_map(rng, SumSpace(F22, X, X), X)
    x = np.array([Fr(rng.randint(-4, 4), 3) for _ in range(6)], dtype=object)
    assert list(A.apply(x)) == list(A.dense().dot(x))


# ---------------------------------------------------------------- centers

@pytest.mark.parametrize("F,coef", [(F22, (Fr(1, 2), 1)), (F23, (Fr(10, 13), Fr(10, 13))),
                                    (F23_SKEW, (Fr(6, 7), Fr(4, 7)))])
def test_center_from_sum(F, coef):
    for n in (4, 64):
        G = center_from_sum(F, make_discrete_l1(n))
        assert G.meta["coefficients"] == coef
        assert op_norm(G) == 1


@pytest.mark.parametrize("F,coef", [(F22, (1, Fr(1, 2))), (F32, (Fr(9, 10), Fr(9, 10)))])
def test_center_into_sum(F, coef):
    for n in (4, 64):
        G = center_into_sum(F, make_discrete_l1(n))
        assert G.meta["coefficients"] == coef
        assert op_norm(G) == 1


def test_centers_refuse_excluded_norms():
    X = make_discrete_l1(4)
    with pytest.raises(ContractError):
        center_from_sum(F32, X)
    with pytest.raises(ContractError):
        center_into_sum(F23, X)
    with pytest.raises(ContractError):
        center_from_sum(L1, X)


@pytest.mark.parametrize("maker,kind,f1,f2", [
    (center_from_sum_classical, "l1_sum", 1, 1),
    (center_from_sum_classical, "linf_sum", Fr(1, 3), 2),
    (center_into_sum_classical, "linf_sum", 1, 1),
    (center_into_sum_classical, "l1_sum", 2, 3),
])
def test_classical_centers(maker, kind, f1, f2):
    G = maker(kind, f1, f2, make_discrete_l1(4))
    assert op_norm(G) == G.meta["norm"]
    assert float(op_norm(G)) == pytest.approx(oracle_op_norm(G))


def test_classical_center_contracts():
    X = make_discrete_l1(2)
    with pytest.raises(ContractError):
        center_from_sum_classical("l1_sum", 1, 2, X)
    with pytest.raises(ContractError):
        center_into_sum_classical("l1_sum", 0, 1, X)


@pytest.mark.parametrize("F", [F22, F32])
def test_adjoint_center_identity(F):
    X = make_discrete_l1(8)
    GT = center_into_sum(F, X).transpose()
    H = center_from_sum(dual_norm(F), X.dual())
    assert GT.domain == H.domain and GT.codomain == H.codomain
    assert (GT.dense() == H.dense()).all()


# ---------------------------------------------------------------- rank-one operators and defects

def test_rank_one_norm_is_product():
    rng = random.Random(12)
    X = make_discrete_l1(4)
    S = SumSpace(F23, X, X)
    for dom, cod in [(X, X), (S, X), (X, S)]:
        phi = [Fr(rng.randint(-5, 5), 3) for _ in range(dom.dim)]
        y = [Fr(rng.randint(-5, 5), 2) for _ in range(cod.dim)]
        T = rank_one(dom, cod, phi, y)
        assert op_norm(T) == T.norm


def test_rank_one_dimension_check():
    with pytest.raises(ContractError):
        rank_one(make_discrete_l1(3), make_discrete_l1(3), [1, 2], [1, 2, 3])


def identity_defect_oracle(phi, y):
    # columns of Id + phi (x) y on weighted l1: |1 + w phi_i y_i| + |phi_i| (||y|| - w |y_i|)
    n = len(phi)
    w = Fr(1, n)
    ny = sum(w * abs(v) for v in y)
    col = max(abs(1 + w * p * yi) + abs(p) * (ny - w * abs(yi)) for p, yi in zip(phi, y))
    return 1 + max(abs(p) for p in phi) * ny - col


def test_identity_defect_column_formula():
    rng = random.Random(6)
    for n in (1, 2, 5, 16, 40):
        X = make_discrete_l1(n)
        for _ in range(3):
            phi = [Fr(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
            y = [Fr(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
            rep = daugavet_defect(identity(X), rank_one(X, X, phi, y))
            assert rep.defect == identity_defect_oracle(phi, y)
            assert rep.defect >= 0


def test_identity_defect_examples():
    X = make_discrete_l1(4)
    assert daugavet_defect(identity(X), rank_one(X, X, [1] * 4, [1] * 4)).defect == 0
    # a one-atom space: Id + T vanishes, so the defect is ||Id|| + ||T|| = 2
    Y = make_discrete_l1(1)
    assert daugavet_defect(identity(Y), rank_one(Y, Y, [1], [-1])).defect == 2


def test_defect_space_mismatch():
    X, Y = make_discrete_l1(2), make_discrete_l1(3)
    with pytest.raises(ContractError):
        daugavet_defect(identity(X), rank_one(Y, Y, [1] * 3, [1] * 3))


# ---------------------------------------------------------------- slice witnesses

def test_slice_witness_identity_spike():
    n = 64
    G = identity(make_discrete_l1(n))
    y0 = [0.0] * n
    y0[10] = float(n)
    xstar = [1.0] * n
    w = slice_criterion_witness(G, y0, xstar, 0.05)
    assert w.found and w.value > 1.95 and w.pairing > 0.95


def test_slice_witness_reports_best_when_missing():
    # a dense y0 of norm one aligned against every admissible spike caps ||x + y0||
    n = 4
    G = identity(make_discrete_l1(n))
    w = slice_criterion_witness(G, [-1.0] * n, [1.0] * n, 0.01)
    assert not w.found
    assert w.value == pytest.approx(1.5)


def test_slice_witness_from_sum_center():
    n = 256
    G = center_from_sum(F22, make_discrete_l1(n))
    y0 = [1.0] * n
    xstar = [1.0] * (2 * n)
    w = slice_criterion_witness(G, y0, xstar, 0.01)
    assert w.found and w.value > 1.99


# ---------------------------------------------------------------- refinement studies

def test_convergence_identity():
    T = StepRankOne(((1, -2, 3, Fr(1, 2)),), ((2, 1, -1, 1),), normalize=True)
    study = convergence_study(CenterSpec("identity"), T, [8, 16, 32, 64, 128])
    assert study.passed
    assert all(r.defect >= 0 for r in study.reports)
    assert study.slope_estimate == pytest.approx(-1, abs=0.2)
    lines = study.csv().splitlines()
    assert lines[0] == "n,normG,normT,normSum,defect" and len(lines) == 6


def test_convergence_f22_from_sum_rate():
    T = StepRankOne(((1, 0, 0, 0), (0, 0, 0, 1)), ((1, 1, 1, 1),), normalize=True)
    study = convergence_study(CenterSpec("from_sum", F22), T, [8, 16, 32, 64])
    assert study.passed
    assert [float(r.defect * r.n) for r in study.reports] == pytest.approx([study.C_estimate] * 4)


def test_convergence_grid_must_fit_steps():
    T = StepRankOne(((1, 2, 3),), ((1, 1, 1),))
    with pytest.raises(ContractError):
        convergence_study(CenterSpec("identity"), T, [8])


def test_unnormalized_step_keeps_norm():
    T = StepRankOne(((2, 2),), ((3, 3),))
    G = identity(make_discrete_l1(4))
    assert T.build(G).norm == 6
    assert math.isclose(float(StepRankOne(((2, 2),), ((3, 3),), True).build(G).norm), 1.0)
