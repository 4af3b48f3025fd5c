"""Brute-force reference computations, written independently of the package internals."""
import math
from fractions import Fraction as Fr

import numpy as np


def ray_gauge(vertices, a):
    """Norm of a from the positive-sphere vertex list by intersecting the ray with every edge."""
    a = (abs(Fr(a[0])), abs(Fr(a[1])))
    if a == (0, 0):
        return Fr(0)
    for p, q in zip(vertices[:-1], vertices[1:]):
        d = (q[0] - p[0], q[1] - p[1])
        det = -a[0] * d[1] + a[1] * d[0]
        if det == 0:
            continue
        s = (-p[0] * d[1] + p[1] * d[0]) / det
        u = (a[0] * p[1] - a[1] * p[0]) / det
        if 0 <= u <= 1 and s > 0:
            return 1 / s
    raise AssertionError("ray misses the sphere")


def full_ring(vertices):
    """All sign reflections of the positive vertices (extreme or not)."""
    pts = set()
    for v in vertices:
        for s1 in (1, -1):
            for s2 in (1, -1):
                pts.add((s1 * v[0], s2 * v[1]))
    return pts


def rank1_bruteforce(vertices, f, a):
    """max over reflected vertices x of ||x + <f,x> a|| (the ball is their convex hull)."""
    best = Fr(0)
    for x in full_ring(vertices):
        t = f[0] * x[0] + f[1] * x[1]
        best = max(best, ray_gauge(vertices, (x[0] + t * a[0], x[1] + t * a[1])))
    return best


def points_on(vertices, per_edge):
    out = []
    for p, q in zip(vertices[:-1], vertices[1:]):
        for j in range(per_edge):
            t = Fr(j, per_edge)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    out.append(tuple(vertices[-1]))
    return out


def spectral_rank1(f, a):
    """Euclidean ||I + a f^T||_2 for arrays of f (k, 2) and a (2,)."""
    f = np.atleast_2d(f)
    m11 = 1 + a[0] * f[:, 0]
    m12 = a[0] * f[:, 1]
    m21 = a[1] * f[:, 0]
    m22 = 1 + a[1] * f[:, 1]
    fro = m11 ** 2 + m12 ** 2 + m21 ** 2 + m22 ** 2
    det = m11 * m22 - m12 * m21
    return np.sqrt((fro + np.sqrt(np.maximum(fro ** 2 - 4 * det ** 2, 0))) / 2)


def euclid_star_margin(theta_f, samples=4001):
    """2 - min over a on the quarter circle of ||I + a f^T|| for f at angle theta_f."""
    f = np.array([math.cos(theta_f), math.sin(theta_f)])
    th = np.linspace(0, math.pi / 2, samples)
    A = np.stack([np.cos(th), np.sin(th)], axis=1)
    # ||I + a f^T|| = ||I + f a^T||, so sweep a as the "functional" slot
    vals = spectral_rank1(A, f)
    return 2 - vals.min()


def euclid_whole_star_epsilon(samples=1001):
    th = np.linspace(0, math.pi / 2, samples)
    return min(euclid_star_margin(t, samples) for t in th)
