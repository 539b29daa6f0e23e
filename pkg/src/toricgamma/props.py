"""Variety-level predicates: Fano, terminal, Gorenstein, Picard numbers."""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import linalg
from .fan import Cone, Fan, hull_facets, is_complete, is_simplicial, surface_cycle, vertex_flags

Points = Sequence[Sequence[int]]

__all__ = [
    "VarietyProfile",
    "is_fano",
    "is_terminal",
    "is_gorenstein",
    "picard_number",
    "surface_picard",
    "lattice_points",
    "profile",
]


def _points(obj: Union[Fan, Points]) -> list[tuple[int, ...]]:
    if isinstance(obj, Fan):
        return list(obj.generators)
    return [tuple(int(x) for x in p) for p in obj]


def is_fano(obj: Union[Fan, Points]) -> bool:
    """Origin strictly inside conv(points) and every point a vertex.

    For a :class:`Fan` the fan must additionally be the face fan of its
    generators; a non-convex fan on Fano-looking rays is not Fano.
    """
    pts = _points(obj)
    facets = hull_facets(pts)
    if not facets or any(f.offset <= 0 for f in facets) or not all(vertex_flags(pts, facets)):
        return False
    if isinstance(obj, Fan):
        faces = {Cone(f.points) for f in facets}
        return faces == set(obj.maximal_cones)
    return True


def lattice_points(points: Points) -> list[tuple[int, ...]]:
    """All lattice points of conv(points).

    With the origin inside and simplicial facets the polytope is the union of
    the simplices conv(0, facet), each handled by :func:`_simplex_points`.
    Otherwise the bounding box is scanned.
    """
    pts = _points(points)
    facets = hull_facets(pts)
    d = len(pts[0])
    if facets and all(f.offset > 0 and len(f.points) == d for f in facets):
        out = {(0,) * d}
        for f in facets:
            out.update(_simplex_points([pts[i] for i in f.points]))
        return sorted(out)
    lo = [min(p[k] for p in pts) for k in range(d)]
    hi = [max(p[k] for p in pts) for k in range(d)]
    out = []
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(sum(n * c for n, c in zip(f.normal, x)) <= f.offset for f in facets):
            out.append(x)
    return out


def _simplex_points(vertices: Sequence[Sequence[int]]) -> set[tuple[int, ...]]:
    """Lattice points of conv(0, v_1, ..., v_d) for independent v_i.

    Writing x = sum l_i v_i, the fractional parts of l range over the finite
    group Z^d / <v_i>, generated by the images of the unit vectors. A point of
    the simplex has all l_i in [0, 1) and sum l_i <= 1, or is a vertex.
    """
    d = len(vertices)
    cols = linalg.transpose(vertices)
    gens = [[x % 1 for x in linalg.solve(cols, [int(i == j) for i in range(d)])] for j in range(d)]
    zero = (Fraction(0),) * d
    group = {zero}
    frontier = [zero]
    while frontier:
        lam = frontier.pop()
        for g in gens:
            nxt = tuple((a + b) % 1 for a, b in zip(lam, g))
            if nxt not in group:
                group.add(nxt)
                frontier.append(nxt)
    out = {tuple(v) for v in vertices}
    for lam in group:
        if sum(lam) <= 1:
            x = [sum(l * v[k] for l, v in zip(lam, vertices)) for k in range(d)]
            out.add(tuple(int(c) for c in x))
    return out


def is_terminal(points: Union[Fan, Points]) -> bool:
    """conv(points) meets the lattice only in the origin and the points."""
    pts = _points(points)
    return set(lattice_points(pts)) == set(pts) | {(0,) * len(pts[0])}


def is_gorenstein(points: Union[Fan, Points]) -> bool:
    """Every facet lies on a hyperplane <m, x> = 1 with m integral."""
    facets = hull_facets(_points(points))
    return all(all(c % f.offset == 0 for c in f.normal) for f in facets)


def picard_number(fan: Fan) -> int:
    return fan.n - fan.dim


def surface_picard(fan: Fan, ray: Optional[int] = None) -> int:
    """Picard number of V(ray) in a 3-fold, or of the surface itself when ``ray`` is None."""
    return len(surface_cycle(fan, ray)) - 2


@dataclass(frozen=True)
class VarietyProfile:
    q_factorial: bool
    complete: bool
    fano: bool
    terminal: Optional[bool]
    gorenstein: Optional[bool]
    picard: int

    def as_dict(self) -> dict:
        return asdict(self)


def profile(fan: Fan) -> VarietyProfile:
    fano = is_fano(fan)
    return VarietyProfile(
        q_factorial=is_simplicial(fan),
        complete=is_complete(fan),
        fano=fano,
        terminal=is_terminal(fan) if fano else None,
        gorenstein=is_gorenstein(fan) if fano else None,
        picard=picard_number(fan),
    )
