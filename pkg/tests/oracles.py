"""Brute-force reference computations, deliberately independent of the package."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction


def leibniz_det(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = Fraction(1)
        for i in range(n):
            prod *= m[i][perm[i]]
        total += (-1) ** inversions * prod
    return total


def det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def cyclic_order_2d(rays):
    """Indices of 2D rays sorted by angle, using only cross products."""
    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    idx = list(range(len(rays)))
    # insertion sort with an exact comparator
    out = []
    for i in idx:
        pos = len(out)
        for k, j in enumerate(out):
            hi, hj = half(rays[i]), half(rays[j])
            if hi < hj or (hi == hj and det2(rays[i], rays[j]) > 0):
                pos = k
                break
        out.insert(pos, i)
    return out


def surface_intersections_2d(rays):
    """Intersection matrix of a complete toric surface from the classical
    formulas: adjacent D_i D_j = 1/det, D_i^2 = -det(prev, next)/(det(prev, i) det(i, next))."""
    n = len(rays)
    order = cyclic_order_2d(rays)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k, i in enumerate(order):
        prev, nxt = order[k - 1], order[(k + 1) % n]
        a, b, c = rays[prev], rays[i], rays[nxt]
        m[i][i] = Fraction(-det2(a, c), det2(a, b) * det2(b, c))
        m[i][nxt] = m[nxt][i] = Fraction(1, det2(b, c))
    return m


def in_hull(x, points):
    """x in conv(points), via barycentric coordinates on every (d+1)-simplex."""
    d = len(x)
    for simplex in itertools.combinations(points, d + 1):
        # solve sum l_k p_k = x, sum l_k = 1
        rows = [[Fraction(p[r]) for p in simplex] for r in range(d)] + [[Fraction(1)] * (d + 1)]
        rhs = [Fraction(c) for c in x] + [Fraction(1)]
        sol = _gauss(rows, rhs)
        if sol is not None and all(s >= 0 for s in sol):
            return True
    return False


def _gauss(a, b):
    n = len(a)
    m = [row[:] + [bi] for row, bi in zip(a, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def lattice_points_bruteforce(points):
    d = len(points[0])
    lo = [min(p[k] for p in points) for k in range(d)]
    hi = [max(p[k] for p in points) for k in range(d)]
    return {
        x
        for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
        if in_hull(x, points)
    }


def random_unimodular(d, rng: random.Random, steps=6):
    """Product of random elementary matrices and a signed permutation."""
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        k = rng.choice([-2, -1, 1, 2])
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    perm = list(range(d))
    rng.shuffle(perm)
    signs = [rng.choice([-1, 1]) for _ in range(d)]
    return [[signs[i] * x for x in m[perm[i]]] for i in range(d)]


def apply(matrix, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in matrix)


def random_complete_rays(rng: random.Random, kmin=3, kmax=7, box=5):
    """Primitive 2D rays whose consecutive angular gaps are all below pi."""
    from math import gcd

    while True:
        k = rng.randint(kmin, kmax)
        rays = set()
        while len(rays) < k:
            v = (rng.randint(-box, box), rng.randint(-box, box))
            if gcd(*v) == 1:
                rays.add(v)
        rays = list(rays)
        order = cyclic_order_2d(rays)
        if all(det2(rays[a], rays[b]) > 0 for a, b in zip(order, order[1:] + order[:1])):
            return rays
