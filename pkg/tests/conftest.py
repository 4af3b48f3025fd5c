import math
import random
from fractions import Fraction as Fr

import pytest

from absnorm import L1, LINF, polygon, polygon_from_points

F22 = polygon([(1, 0), (1, Fr(1, 2)), (0, 1)])
F32 = polygon([(1, 0), (Fr(9, 10), Fr(9, 10)), (0, 1)])
F23 = polygon([(1, 0), (1, Fr(3, 10)), (Fr(3, 10), 1), (0, 1)])
F23_SKEW = polygon([(1, 0), (1, Fr(1, 4)), (Fr(1, 2), 1), (0, 1)])
EXAMPLES = {"l1": L1, "linf": LINF, "f22": F22, "f32": F32, "f23": F23}

ACCEPTANCE_RESULTS = {}


def random_polygon(rng: random.Random, max_edges: int = 8):
    """Random valid rational polygonal norm with 1..max_edges edges."""
    while True:
        if rng.random() < 0.5:
            F = _curve_polygon(rng, rng.randint(1, max_edges))
            if 1 <= F.n_edges <= max_edges:
                return F
            continue
        k = rng.randint(0, max_edges)
        den = rng.choice([4, 6, 10, 12, 20, 30])
        pts = []
        for _ in range(k):
            # points near the sphere of some l_p ball so the hull keeps them
            x = Fr(rng.randint(1, den - 1), den)
            y = Fr(rng.randint(1, den), den)
            pts.append((x, max(y, 1 - x)))
        if rng.random() < 0.3:
            pts.append((1, Fr(rng.randint(1, den), den)))
        if rng.random() < 0.3:
            pts.append((Fr(rng.randint(1, den), den), 1))
        F = polygon_from_points(pts)
        if 1 <= F.n_edges <= max_edges:
            return F


def _curve_polygon(rng: random.Random, edges: int):
    """Rounded points on a superellipse x^p + y^p = 1, so most survive as vertices."""
    p = rng.uniform(1.2, 5.0)
    den = 1000
    pts = []
    for t in sorted(rng.uniform(0.05, 0.95) for _ in range(edges - 1)):
        x = math.cos(t * math.pi / 2) ** (2 / p)
        y = math.sin(t * math.pi / 2) ** (2 / p)
        pts.append((Fr(math.ceil(x * den), den), Fr(math.ceil(y * den), den)))
    return polygon_from_points([(min(x, 1), min(y, 1)) for x, y in pts])


def random_corpus(seed: int = 20240501, size: int = 240):
    rng = random.Random(seed)
    return [random_polygon(rng) for _ in range(size)]


@pytest.fixture(scope="session")
def corpus():
    return random_corpus()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
