"""Complete simplicial fans in small dimension.

A fan is stored as an ordered list of primitive ray generators plus the index
sets of its maximal cones. Fano inputs are usually given by generators only;
:func:`face_fan` rebuilds the fan over the faces of their convex hull.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from math import gcd
from typing import Iterable, Sequence

from . import linalg
from .exceptions import (
    FanError,
    NonSimplicialError,
    NonVertexError,
    NotCompleteError,
    RankError,
)

Vector = tuple[int, ...]

__all__ = [
    "Cone",
    "Fan",
    "Facet",
    "hull_facets",
    "face_fan",
    "polygon_fan",
    "product_fan",
    "projective_line",
    "star_subdivide",
    "mult",
    "star_of_ray",
    "surface_cycle",
    "is_simplicial",
    "is_complete",
    "transform",
    "vertex_flags",
]


def _is_primitive(v: Sequence[int]) -> bool:
    return reduce(gcd, v, 0) == 1


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


class Cone(tuple):
    """Sorted tuple of generator indices."""

    def __new__(cls, indices: Iterable[int]):
        idx = tuple(sorted(set(indices)))
        return super().__new__(cls, idx)

    @property
    def dim(self) -> int:
        return len(self)


@dataclass(frozen=True)
class Facet:
    """Supporting hyperplane ``<normal, x> = offset`` of a polytope.

    ``normal`` is primitive and outward, so every point satisfies
    ``<normal, x> <= offset``. ``points`` indexes the input points on it.
    """

    normal: Vector
    offset: int
    points: tuple[int, ...]


def hull_facets(points: Sequence[Sequence[int]]) -> list[Facet]:
    """Facets of the convex hull of integer points, by exhaustive search.

    Every d-subset of points spanning an affine hyperplane is tested for the
    supporting property. Cheap for the handful of points used here.
    """
    return list(_hull_facets(tuple(tuple(int(x) for x in p) for p in points)))


@lru_cache(maxsize=1024)
def _hull_facets(pts: tuple[Vector, ...]) -> tuple[Facet, ...]:
    if not pts:
        return ()
    d = len(pts[0])
    found: dict[tuple[int, ...], Facet] = {}
    for combo in itertools.combinations(range(len(pts)), d):
        base = pts[combo[0]]
        diffs = [[a - b for a, b in zip(pts[i], base)] for i in combo[1:]]
        if d == 1:
            normal = [1]
        else:
            ker = linalg.kernel_basis(diffs)
            if len(ker) != 1:
                continue
            normal = ker[0]
        offset = _dot(normal, base)
        vals = [_dot(normal, p) - offset for p in pts]
        if all(v <= 0 for v in vals):
            pass
        elif all(v >= 0 for v in vals):
            normal = [-x for x in normal]
            offset = -offset
        else:
            continue
        on = tuple(i for i, v in enumerate(vals) if v == 0)
        if len(on) == len(pts):
            continue  # all points on one hyperplane: not full-dimensional
        found.setdefault(on, Facet(tuple(normal), offset, on))
    return tuple(sorted(found.values(), key=lambda f: f.points))


def vertex_flags(pts: Sequence[Vector], facets: Sequence[Facet]) -> list[bool]:
    """A point is a vertex iff the normals of the facets through it span R^d."""
    d = len(pts[0])
    flags = []
    for i in range(len(pts)):
        normals = [f.normal for f in facets if i in f.points]
        flags.append(bool(normals) and linalg.rank(normals) == d)
    return flags


@dataclass(frozen=True)
class Fan:
    """A complete simplicial fan given by ray generators and maximal cones."""

    generators: tuple[Vector, ...]
    maximal_cones: tuple[Cone, ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        cones = tuple(sorted(Cone(c) for c in self.maximal_cones))
        object.__setattr__(self, "maximal_cones", cones)
        if not gens:
            raise FanError("fan without generators")
        d = len(gens[0])
        if any(len(g) != d for g in gens):
            raise FanError("generators of different dimensions")
        if len(set(gens)) != len(gens):
            raise FanError("duplicate generators")
        for g in gens:
            if not _is_primitive(g):
                raise FanError(f"generator {g} is not primitive")
        used = set()
        for c in cones:
            if any(not 0 <= i < len(gens) for i in c):
                raise FanError(f"cone {c} refers to a missing generator")
            if len(c) > d:
                raise NonSimplicialError(f"cone {c} has {len(c)} generators in dimension {d}")
            if len(c) < d:
                raise FanError(f"maximal cone {c} is not full-dimensional")
            if linalg.det([gens[i] for i in c]) == 0:
                raise FanError(f"cone {c} is degenerate")
            used.update(c)
        if len(used) != len(gens):
            raise FanError("some generator lies in no maximal cone")

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    @property
    def n(self) -> int:
        return len(self.generators)

    def __repr__(self):
        return f"Fan(dim={self.dim}, generators={list(self.generators)}, cones={len(self.maximal_cones)})"

    @cached_property
    def cones(self) -> frozenset[Cone]:
        """All faces of all maximal cones, including the zero cone."""
        out = set()
        for c in self.maximal_cones:
            for k in range(len(c) + 1):
                out.update(Cone(s) for s in itertools.combinations(c, k))
        return frozenset(out)

    def cones_of_dim(self, k: int) -> list[Cone]:
        return sorted(c for c in self.cones if len(c) == k)

    @property
    def walls(self) -> list[Cone]:
        return self.cones_of_dim(self.dim - 1)

    def is_cone(self, indices: Iterable[int]) -> bool:
        return Cone(indices) in self.cones

    def maximal_cones_containing(self, indices: Iterable[int]) -> list[Cone]:
        s = set(indices)
        return [c for c in self.maximal_cones if s.issubset(c)]

    def vectors(self, indices: Iterable[int]) -> list[Vector]:
        return [self.generators[i] for i in indices]


def face_fan(points: Sequence[Sequence[int]]) -> Fan:
    """Fan over the faces of conv(points).

    Requires the origin strictly inside the hull, every point a vertex, and
    simplicial facets.
    """
    pts = [tuple(int(x) for x in p) for p in points]
    if len(set(pts)) != len(pts):
        raise FanError("duplicate points")
    for p in pts:
        if not _is_primitive(p):
            raise FanError(f"point {p} is not primitive")
    facets = hull_facets(pts)
    if not facets:
        raise NotCompleteError("points do not span the space")
    if any(f.offset <= 0 for f in facets):
        raise NotCompleteError("origin is not strictly inside the convex hull")
    flags = vertex_flags(pts, facets)
    if not all(flags):
        bad = [pts[i] for i, ok in enumerate(flags) if not ok]
        raise NonVertexError(f"points {bad} are not vertices of the convex hull")
    d = len(pts[0])
    for f in facets:
        if len(f.points) != d:
            raise NonSimplicialError(f"facet through {[pts[i] for i in f.points]} is not a simplex")
    return Fan(tuple(pts), tuple(Cone(f.points) for f in facets))


def _angle_key(v: Sequence[int]):
    x, y = v
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    # within a half-plane, compare by cross product via a cotangent-like ratio
    return half, Fraction(-x, abs(x) + abs(y)) if half == 0 else Fraction(x, abs(x) + abs(y))


def polygon_fan(rays: Sequence[Sequence[int]]) -> Fan:
    """Complete 2-dimensional fan with the given rays, in angular order.

    Unlike :func:`face_fan` no convexity is needed, so non-Fano surfaces
    (e.g. Hirzebruch surfaces F_a, a >= 2) can be built.
    """
    pts = [tuple(int(x) for x in r) for r in rays]
    if any(len(p) != 2 for p in pts):
        raise FanError("polygon_fan needs 2-dimensional rays")
    order = sorted(range(len(pts)), key=lambda i: _angle_key(pts[i]))
    cones = []
    for a, b in zip(order, order[1:] + order[:1]):
        u, v = pts[a], pts[b]
        if u[0] * v[1] - u[1] * v[0] <= 0:
            raise NotCompleteError(f"rays {u} and {v} do not bound a strictly convex cone")
        cones.append(Cone((a, b)))
    return Fan(tuple(pts), tuple(cones))


def product_fan(first: Fan, second: Fan) -> Fan:
    """Product fan; generators of ``first`` come first."""
    d1, d2 = first.dim, second.dim
    gens = [g + (0,) * d2 for g in first.generators]
    gens += [(0,) * d1 + g for g in second.generators]
    cones = [
        Cone(tuple(a) + tuple(first.n + j for j in b))
        for a in first.maximal_cones
        for b in second.maximal_cones
    ]
    return Fan(tuple(gens), tuple(cones))


def projective_line() -> Fan:
    return Fan(((1,), (-1,)), (Cone((0,)), Cone((1,))))


def star_subdivide(fan: Fan, v: Sequence[int]) -> Fan:
    """Stellar subdivision at the primitive vector ``v`` (appended as the last ray)."""
    v = tuple(int(x) for x in v)
    if not _is_primitive(v):
        raise FanError(f"{v} is not primitive")
    if v in fan.generators:
        raise FanError(f"{v} is already a ray")
    new = fan.n
    cones = []
    touched = False
    for c in fan.maximal_cones:
        coords = linalg.solve(linalg.transpose(fan.vectors(c)), v)
        if any(x < 0 for x in coords):
            cones.append(c)
            continue
        touched = True
        for i, x in zip(c, coords):
            if x > 0:
                cones.append(Cone([j for j in c if j != i] + [new]))
    if not touched:
        raise FanError(f"{v} lies in no cone of the fan")
    return Fan(fan.generators + (v,), tuple(cones))


def transform(fan: Fan, matrix: Sequence[Sequence[int]]) -> Fan:
    """Image of the fan under an integer matrix acting on column vectors."""
    gens = tuple(tuple(_dot(row, g) for row in matrix) for g in fan.generators)
    return Fan(gens, fan.maximal_cones)


def mult(fan: Fan, cone: Iterable[int]) -> int:
    """Index of the lattice spanned by the cone's generators in its saturation."""
    idx = Cone(cone)
    if not idx:
        return 1
    try:
        return linalg.lattice_index(fan.vectors(idx))
    except RankError as exc:
        raise FanError(f"cone {tuple(idx)} is not simplicial") from exc


def _cycle_from_edges(edges: list[tuple[int, int]], what: str) -> list[int]:
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(len(nb) != 2 for nb in adj.values()):
        raise FanError(f"link of {what} is not a cycle")
    start = min(adj)
    cycle = [start]
    prev, cur = None, start
    while True:
        a, b = adj[cur]
        nxt = a if a != prev else b
        if nxt == start:
            break
        cycle.append(nxt)
        prev, cur = cur, nxt
    if len(cycle) != len(adj):
        raise FanError(f"link of {what} is disconnected")
    # orient so that the second element is the smaller neighbour of the start
    if len(cycle) > 2 and cycle[-1] < cycle[1]:
        cycle = [cycle[0]] + cycle[:0:-1]
    return cycle


def star_of_ray(fan: Fan, ray: int) -> tuple[list[int], list[Cone]]:
    """Neighbouring rays of ``ray`` in cyclic order, and the maximal cones through it.

    Consecutive neighbours (cyclically) span a maximal cone together with ``ray``.
    """
    if fan.dim != 3:
        raise FanError("star_of_ray is defined for 3-dimensional fans")
    cones = fan.maximal_cones_containing([ray])
    if not cones:
        raise FanError(f"ray {ray} lies in no maximal cone")
    edges = [tuple(i for i in c if i != ray) for c in cones]
    return _cycle_from_edges(edges, f"ray {ray}"), cones


def surface_cycle(fan: Fan, ray: int | None) -> list[int]:
    """Rays around the torus-invariant surface: the star of ``ray`` for 3-folds,
    the cyclic order of all rays when ``ray`` is None and the fan is a surface."""
    if ray is None:
        if fan.dim != 2:
            raise FanError("the whole-surface case needs a 2-dimensional fan")
        return _cycle_from_edges([tuple(c) for c in fan.maximal_cones], "the origin")
    return star_of_ray(fan, ray)[0]


def is_simplicial(fan: Fan) -> bool:
    return all(len(c) == fan.dim and linalg.det(fan.vectors(c)) != 0 for c in fan.maximal_cones)


def _generic_points(d: int):
    primes = (1, 7919, 104729, 1299709)
    yield tuple(primes[:d])
    yield tuple((-1) ** k * p for k, p in enumerate(primes[1 : d + 1]))
    for shift in range(1, 50):
        yield tuple(p + shift * (k + 1) for k, p in enumerate(primes[:d]))


@lru_cache(maxsize=256)
def is_complete(fan: Fan) -> bool:
    """Wall two-sidedness, opposite sides, connectivity, and degree one."""
    d = fan.dim
    if not is_simplicial(fan):
        return False
    if d == 1:
        return sorted(g[0] for g in fan.generators) == [-1, 1]
    incidence: dict[Cone, list[Cone]] = {}
    for c in fan.maximal_cones:
        for w in itertools.combinations(c, d - 1):
            incidence.setdefault(Cone(w), []).append(c)
    for w, cs in incidence.items():
        if len(cs) != 2:
            return False
        outer = [next(i for i in c if i not in w) for c in cs]
        normal = linalg.kernel_basis(fan.vectors(w))[0]
        s0 = _dot(normal, fan.generators[outer[0]])
        s1 = _dot(normal, fan.generators[outer[1]])
        if s0 * s1 >= 0:
            return False
    # dual graph connectivity
    seen = {fan.maximal_cones[0]}
    stack = [fan.maximal_cones[0]]
    while stack:
        c = stack.pop()
        for w in itertools.combinations(c, d - 1):
            for nb in incidence[Cone(w)]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
    if len(seen) != len(fan.maximal_cones):
        return False
    # a generic point is covered exactly once
    for p in _generic_points(d):
        count = 0
        boundary = False
        for c in fan.maximal_cones:
            coords = linalg.solve(linalg.transpose(fan.vectors(c)), p)
            if all(x > 0 for x in coords):
                count += 1
            elif all(x >= 0 for x in coords):
                boundary = True
        if not boundary:
            return count == 1
    return False
