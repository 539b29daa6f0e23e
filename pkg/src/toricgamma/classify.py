"""Variety verdicts, dataset sweeps and the reflexive polygon oracle."""
from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from . import linalg
from .exceptions import NotCompleteError, ToricError
from .fan import Fan, face_fan, is_complete, is_simplicial, surface_cycle
from .intersection import Intersector
from .props import VarietyProfile, profile

POSITIVE = "gamma2-positive"
NEF = "gamma2-nef-not-positive"
NOT_NEF = "not-gamma2-nef"

WHOLE = "whole-surface"

__all__ = [
    "POSITIVE",
    "NEF",
    "NOT_NEF",
    "SurfaceResult",
    "VarietyReport",
    "SweepResult",
    "verdict",
    "sweep",
    "enumerate_reflexive_polygons",
    "polygon_normal_form",
]


@dataclass(frozen=True)
class SurfaceResult:
    ray: Union[int, str]
    rho: int
    gamma2: Fraction
    closed_form: str

    def as_dict(self) -> dict:
        return {
            "ray": self.ray,
            "rho": self.rho,
            "gamma2": fraction_str(self.gamma2),
            "closed_form": self.closed_form,
        }


@dataclass(frozen=True)
class VarietyReport:
    id: str
    profile: VarietyProfile
    surfaces: tuple[SurfaceResult, ...]
    verdict: str
    witness: SurfaceResult

    @property
    def nef(self) -> bool:
        return self.verdict != NOT_NEF

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "profile": self.profile.as_dict(),
            "surfaces": [s.as_dict() for s in self.surfaces],
            "verdict": self.verdict,
            "witness": self.witness.as_dict(),
        }


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _closed_form_tag(rho: int) -> str:
    return {1: "rho1", 2: "rho2"}.get(rho, "none")


def verdict(obj: Union[Fan, Sequence[Sequence[int]]], id: str = "") -> VarietyReport:
    """gamma_2 . S on every torus-invariant surface and the resulting verdict.

    ``obj`` is a fan or a list of generators (turned into their face fan).
    For 3-folds every ray gives a surface; a surface fan is its own surface.
    """
    fan = obj if isinstance(obj, Fan) else face_fan(obj)
    if fan.dim not in (2, 3):
        raise ToricError(f"unsupported dimension {fan.dim}")
    if not is_simplicial(fan):
        raise ToricError("non-simplicial fans are unsupported")
    if not is_complete(fan):
        raise NotCompleteError("fan is not complete")
    eng = Intersector(fan)
    results = []
    rays = [None] if fan.dim == 2 else list(range(fan.n))
    for ray in rays:
        tau = () if ray is None else (ray,)
        g = sum((eng.product((i, i) + tau) for i in range(fan.n)), Fraction(0))
        rho = len(surface_cycle(fan, ray)) - 2
        results.append(SurfaceResult(WHOLE if ray is None else ray, rho, g, _closed_form_tag(rho)))
    witness = min(results, key=lambda s: s.gamma2)
    if witness.gamma2 > 0:
        v = POSITIVE
    elif witness.gamma2 == 0:
        v = NEF
    else:
        v = NOT_NEF
    return VarietyReport(id, profile(fan), tuple(results), v, witness)


@dataclass
class SweepResult:
    reports: list[VarietyReport]
    errors: dict[str, str] = field(default_factory=dict)

    def counts(self) -> dict:
        by_verdict = Counter(r.verdict for r in self.reports)
        by_profile = Counter(
            f"terminal={r.profile.terminal},gorenstein={r.profile.gorenstein},fano={r.profile.fano}"
            for r in self.reports
        )
        return {
            "total": len(self.reports) + len(self.errors),
            "errors": len(self.errors),
            "nef": sum(r.nef for r in self.reports),
            "verdicts": {k: by_verdict.get(k, 0) for k in (POSITIVE, NEF, NOT_NEF)},
            "profiles": dict(sorted(by_profile.items())),
        }


def _verdict_or_error(item):
    rid, points = item
    try:
        return verdict(points, id=rid)
    except ToricError as exc:
        return f"{type(exc).__name__}: {exc}"


def sweep(dataset: Sequence[tuple[str, Sequence]], jobs: int = 1) -> SweepResult:
    """Evaluate every ``(id, points_or_fan)``; failures are collected, not raised.

    Output order follows the input regardless of ``jobs``.
    """
    items = list(dataset)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_verdict_or_error, items))
    else:
        outcomes = [_verdict_or_error(it) for it in items]
    result = SweepResult([])
    for (rid, _), out in zip(items, outcomes):
        if isinstance(out, VarietyReport):
            result.reports.append(out)
        else:
            result.errors[rid] = out
    return result


# ---------------------------------------------------------------------------
# reflexive polygons


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points) -> tuple:
    """Vertices of the convex hull in counter-clockwise order (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return tuple(pts)
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return tuple(lower[:-1] + upper[:-1])


def _strict_interior_points(hull) -> list:
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    edges = list(zip(hull, hull[1:] + hull[:1]))
    return [
        (x, y)
        for x in range(min(xs) + 1, max(xs))
        for y in range(min(ys) + 1, max(ys))
        if all(_cross(a, b, (x, y)) > 0 for a, b in edges)
    ]


def _one_interior_point(hull) -> bool:
    return len(hull) >= 3 and _strict_interior_points(hull) == [(0, 0)]


def polygon_normal_form(vertices: Sequence[Sequence[int]]) -> tuple:
    """Canonical representative of a lattice polygon (origin inside) under GL(2, Z).

    For each pair of adjacent vertices, in both orientations, the polygon is
    moved by the unique unimodular map putting that pair in Hermite normal
    form; the lexicographically smallest sorted vertex tuple wins.
    """
    hull = list(_hull_2d([tuple(v) for v in vertices]))
    best = None
    pairs = list(zip(hull, hull[1:] + hull[:1]))
    pairs += [(b, a) for a, b in pairs]
    for a, b in pairs:
        u = linalg.hermite_2x2(a, b)
        image = tuple(
            sorted((u[0][0] * x + u[0][1] * y, u[1][0] * x + u[1][1] * y) for x, y in hull)
        )
        if best is None or image < best:
            best = image
    return best


def enumerate_reflexive_polygons(bound: int = 3) -> list[tuple]:
    """All reflexive polygons up to GL(2, Z), by exhaustive search in a box.

    In the plane, reflexive means "lattice polygon whose only interior lattice
    point is the origin". Any such polygon contains a triangle or quadrilateral
    of its own vertices with the origin in its interior (Steinitz), so the
    search seeds with those and grows by adding one primitive box point at a
    time; every intermediate polygon again has the origin as its only interior
    point. Vertices of such polygons are primitive, so only primitive points
    are used.
    """
    box = [
        (x, y)
        for x in range(-bound, bound + 1)
        for y in range(-bound, bound + 1)
        if gcd(x, y) == 1
    ]
    seen: set[tuple] = set()
    frontier = []
    for k in (3, 4):
        for combo in itertools.combinations(box, k):
            hull = _hull_2d(combo)
            if len(hull) != k or hull in seen:
                continue
            if _one_interior_point(hull):
                seen.add(hull)
                frontier.append(hull)
    while frontier:
        hull = frontier.pop()
        edges = list(zip(hull, hull[1:] + hull[:1]))
        for q in box:
            if all(_cross(a, b, q) >= 0 for a, b in edges):
                continue
            new = _hull_2d(hull + (q,))
            if new in seen or not _one_interior_point(new):
                continue
            seen.add(new)
            frontier.append(new)
    classes = {polygon_normal_form(h) for h in seen}
    return sorted(classes, key=lambda c: (len(c), c))
