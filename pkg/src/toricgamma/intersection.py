"""Intersection numbers on complete simplicial toric varieties.

Two independent routes are provided:

* a general engine (:class:`Intersector`) computing any product
  ``D_{i1} ... D_{id}`` of torus-invariant divisors exactly: products of
  distinct divisors spanning a maximal cone equal ``1/mult``, products not
  contained in a cone vanish, and repeated factors are removed with the linear
  equivalence ``sum <m, v_k> D_k = 0`` for a suitable rational character m;
* closed forms built from wall relations only (rank-one form for surfaces of
  Picard number one, the two-relation form for Picard number two, and the
  update under subdividing a cone of a surface fan).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from . import linalg
from .exceptions import FanError, PreconditionError
from .fan import Cone, Fan, mult, surface_cycle

__all__ = [
    "Intersector",
    "intersection_number",
    "WallRelation",
    "wall_relation",
    "TripleTable",
    "triple_table",
    "QuadForm",
    "i_poly",
    "gamma_dot_surface",
    "gamma1_dot_curve",
    "gamma1_from_relation",
    "rho1_form",
    "rho2_form",
    "rho2_data",
    "rho2_labeling",
    "rho2_gamma",
    "normalize_corner",
    "subdivide_update",
    "subdivision_drop",
    "surface_gamma2",
]


class Intersector:
    """Memoised exact intersection products on one fan.

    ``basis_choice`` selects which maximal cone completes the basis when a
    character is chosen to eliminate a repeated divisor. The result does not
    depend on it; the parameter exists so that this can be checked.
    """

    def __init__(self, fan: Fan, basis_choice: int = 0):
        self.fan = fan
        self.basis_choice = basis_choice
        self._cache: dict[tuple[int, ...], Fraction] = {}
        self._characters: dict[tuple[Cone, int], list[Fraction]] = {}

    def product(self, indices: Iterable[int]) -> Fraction:
        key = tuple(sorted(indices))
        if len(key) != self.fan.dim:
            raise ValueError(f"need {self.fan.dim} divisors, got {len(key)}")
        if key not in self._cache:
            self._cache[key] = self._compute(key)
        return self._cache[key]

    def _compute(self, key: tuple[int, ...]) -> Fraction:
        fan = self.fan
        support = sorted(set(key))
        if not fan.is_cone(support):
            return Fraction(0)
        if len(support) == len(key):
            return Fraction(1, mult(fan, key))
        counts = Counter(key)
        a = max(support, key=lambda i: (counts[i], -i))
        owners = fan.maximal_cones_containing(support)
        sigma = owners[self.basis_choice % len(owners)]
        if (sigma, a) not in self._characters:
            m = character(fan, sigma, a)
            self._characters[sigma, a] = [sum(x * y for x, y in zip(m, v)) for v in fan.generators]
        pairing = self._characters[sigma, a]
        rest = list(key)
        rest.remove(a)
        total = Fraction(0)
        for k, coeff in enumerate(pairing):
            if k == a:
                continue
            if coeff:
                total -= coeff * self.product(rest + [k])
        return total


def character(fan: Fan, sigma: Sequence[int], target: int) -> list[Fraction]:
    """Rational m with <m, v_target> = 1 and <m, v_j> = 0 for the other rays of sigma."""
    rows = fan.vectors(sigma)
    rhs = [int(j == target) for j in sigma]
    return linalg.solve(rows, rhs)


def intersection_number(fan: Fan, indices: Iterable[int]) -> Fraction:
    return Intersector(fan).product(indices)


# ---------------------------------------------------------------------------
# wall relations


@dataclass(frozen=True)
class WallRelation:
    """Primitive integer relation ``sum coeff_i v_i = 0`` around a wall.

    ``outer`` holds the two rays completing the wall to maximal cones; their
    coefficients are strictly positive.
    """

    wall: Cone
    outer: tuple[int, int]
    coefficients: dict[int, int]

    def __getitem__(self, index: int) -> int:
        return self.coefficients.get(index, 0)

    def vector(self, n: int) -> list[int]:
        return [self[i] for i in range(n)]

    def total(self) -> int:
        return sum(self.coefficients.values())


def wall_relation(fan: Fan, wall: Iterable[int]) -> WallRelation:
    wall = Cone(wall)
    if len(wall) != fan.dim - 1:
        raise FanError(f"{tuple(wall)} is not a wall of a {fan.dim}-dimensional fan")
    cones = fan.maximal_cones_containing(wall)
    if len(cones) != 2:
        raise FanError(f"wall {tuple(wall)} lies in {len(cones)} maximal cones, expected 2")
    outer = tuple(sorted(next(i for i in c if i not in wall) for c in cones))
    idx = list(wall) + list(outer)
    ker = linalg.kernel_basis(linalg.transpose(fan.vectors(idx)))
    if len(ker) != 1:
        raise FanError(f"wall {tuple(wall)} is degenerate")
    rel = ker[0]
    p = rel[idx.index(outer[0])]
    q = rel[idx.index(outer[1])]
    if p * q <= 0:
        raise FanError(f"rays around wall {tuple(wall)} are not on opposite sides")
    if p < 0:
        rel = [-x for x in rel]
    return WallRelation(wall, outer, {i: c for i, c in zip(idx, rel) if c})


def _relation_among(fan: Fan, idx: Sequence[int], positive: Sequence[int]) -> dict[int, int]:
    """The one-dimensional relation among ``idx``, signed so ``positive`` rays are > 0."""
    ker = linalg.kernel_basis(linalg.transpose(fan.vectors(idx)))
    if len(ker) != 1:
        raise FanError(f"rays {list(idx)} do not carry a unique relation")
    rel = dict(zip(idx, ker[0]))
    vals = [rel[i] for i in positive]
    if not (all(x > 0 for x in vals) or all(x < 0 for x in vals)):
        raise FanError(f"relation among {list(idx)} has mixed signs on {list(positive)}")
    if rel[positive[0]] < 0:
        rel = {i: -c for i, c in rel.items()}
    return {i: c for i, c in rel.items() if c}


# ---------------------------------------------------------------------------
# quadratic forms


@dataclass(frozen=True)
class QuadForm:
    """Symmetric rational matrix ``M`` for the form ``sum M[i][j] X_i X_j``.

    ``exact`` is False for forms known only up to a positive scalar.
    """

    matrix: tuple[tuple[Fraction, ...], ...]
    exact: bool = True

    def __post_init__(self):
        m = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        n = len(m)
        if any(len(r) != n for r in m):
            raise ValueError("form matrix must be square")
        if any(m[i][j] != m[j][i] for i in range(n) for j in range(i)):
            raise ValueError("form matrix must be symmetric")
        object.__setattr__(self, "matrix", m)

    @property
    def size(self) -> int:
        return len(self.matrix)

    @classmethod
    def zero(cls, n: int, exact: bool = True) -> "QuadForm":
        return cls(tuple((Fraction(0),) * n for _ in range(n)), exact)

    @classmethod
    def from_products(cls, terms: Sequence[tuple], n: int, exact: bool = False) -> "QuadForm":
        """Sum of ``c * L1 * L2`` over ``terms = [(c, L1, L2), ...]`` with L given as
        dicts index -> coefficient."""
        m = [[Fraction(0)] * n for _ in range(n)]
        for c, l1, l2 in terms:
            for i, x in l1.items():
                for j, y in l2.items():
                    half = Fraction(c) * x * y / 2
                    m[i][j] += half
                    m[j][i] += half
        return cls(tuple(map(tuple, m)), exact)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.matrix[i][j]

    def trace(self) -> Fraction:
        """Sum of the diagonal: the form's value on ``gamma_2``."""
        return sum((self.matrix[i][i] for i in range(self.size)), Fraction(0))

    def __call__(self, x: Sequence) -> Fraction:
        return sum(
            (self.matrix[i][j] * x[i] * x[j] for i in range(self.size) for j in range(self.size)),
            Fraction(0),
        )

    def scaled(self, c) -> "QuadForm":
        return QuadForm(tuple(tuple(c * x for x in row) for row in self.matrix), self.exact)

    def __add__(self, other: "QuadForm") -> "QuadForm":
        return QuadForm(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)),
            self.exact and other.exact,
        )

    def __sub__(self, other: "QuadForm") -> "QuadForm":
        return self + other.scaled(-1)

    def padded(self, n: int) -> "QuadForm":
        """Same form with extra variables (zero rows and columns) appended."""
        m = [list(r) + [Fraction(0)] * (n - self.size) for r in self.matrix]
        m += [[Fraction(0)] * n for _ in range(n - self.size)]
        return QuadForm(tuple(map(tuple, m)), self.exact)

    def ratio_to(self, other: "QuadForm") -> Optional[Fraction]:
        """``c`` with ``self == c * other``, or None if not proportional."""
        if self.size != other.size:
            return None
        c = None
        for r, s in zip(self.matrix, other.matrix):
            for a, b in zip(r, s):
                if b == 0:
                    if a != 0:
                        return None
                    continue
                if c is None:
                    c = a / b
                elif a != c * b:
                    return None
        return c

    def positive_multiple_of(self, other: "QuadForm") -> bool:
        c = self.ratio_to(other)
        return c is not None and c > 0

    def terms(self) -> dict[tuple[int, int], Fraction]:
        """Polynomial coefficients keyed by ``(i, j)`` with ``i <= j``."""
        out = {}
        for i in range(self.size):
            for j in range(i, self.size):
                c = self.matrix[i][j] * (1 if i == j else 2)
                if c:
                    out[(i, j)] = c
        return out

    def to_polynomial(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or [f"X{i + 1}" for i in range(self.size)]
        parts = []
        for (i, j), c in self.terms().items():
            mono = f"{names[i]}^2" if i == j else f"{names[i]}*{names[j]}"
            parts.append(f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class TripleTable:
    """All ``D_i . D_j . S`` for one torus-invariant surface S.

    ``ray`` is the ray of S in a 3-fold, or None for a surface fan (S = X).
    """

    fan: Fan
    ray: Optional[int]
    values: dict[tuple[int, int], Fraction]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.values[(min(i, j), max(i, j))]


def _surface_indices(fan: Fan, ray: Optional[int]) -> tuple[int, ...]:
    if ray is None:
        if fan.dim != 2:
            raise FanError("ray=None denotes the whole surface and needs a 2-dimensional fan")
        return ()
    if fan.dim != 3:
        raise FanError("surfaces V(ray) are defined for 3-dimensional fans")
    if not 0 <= ray < fan.n:
        raise FanError(f"ray index {ray} out of range")
    return (ray,)


def triple_table(fan: Fan, ray: Optional[int] = None, basis_choice: int = 0) -> TripleTable:
    tau = _surface_indices(fan, ray)
    eng = Intersector(fan, basis_choice)
    values = {
        (i, j): eng.product((i, j) + tau) for i in range(fan.n) for j in range(i, fan.n)
    }
    return TripleTable(fan, ray, values)


def i_poly(fan: Fan, ray: Optional[int] = None, basis_choice: int = 0) -> QuadForm:
    """Exact form ``sum (D_i . D_j . S) X_i X_j``."""
    t = triple_table(fan, ray, basis_choice)
    return QuadForm(tuple(tuple(t[i, j] for j in range(fan.n)) for i in range(fan.n)))


def gamma_dot_surface(fan: Fan, ray: Optional[int] = None) -> Fraction:
    """Exact ``gamma_2 . S = sum_i D_i^2 . S``."""
    tau = _surface_indices(fan, ray)
    eng = Intersector(fan)
    return sum((eng.product((i, i) + tau) for i in range(fan.n)), Fraction(0))


def surface_gamma2(fan: Fan) -> Fraction:
    """``sum D_i^2`` on a complete simplicial surface fan."""
    return gamma_dot_surface(fan, None)


def gamma1_dot_curve(fan: Fan, wall: Iterable[int]) -> Fraction:
    """Exact ``(sum_i D_i) . C`` for the curve C of a wall."""
    wall = tuple(Cone(wall))
    if len(wall) != fan.dim - 1:
        raise FanError(f"{wall} is not a wall")
    eng = Intersector(fan)
    return sum((eng.product((i,) + wall) for i in range(fan.n)), Fraction(0))


def gamma1_from_relation(fan: Fan, wall: Iterable[int]) -> Fraction:
    """Same as :func:`gamma1_dot_curve`, from the wall relation alone.

    ``D_k . C`` is proportional to the relation coefficient of ``v_k``, and the
    outer divisor meets C in ``mult(wall) / mult(wall + outer)``.
    """
    rel = wall_relation(fan, wall)
    p = rel.outer[0]
    scale = Fraction(mult(fan, rel.wall), mult(fan, tuple(rel.wall) + (p,)) * rel[p])
    return rel.total() * scale


# ---------------------------------------------------------------------------
# closed forms for Picard number one and two


def rho1_form(fan: Fan, ray: Optional[int] = None) -> QuadForm:
    """Rank-one form ``(sum a_i X_i)^2`` from the relation among the rays of S's star."""
    tau = _surface_indices(fan, ray)
    cycle = surface_cycle(fan, ray)
    if len(cycle) != 3:
        raise PreconditionError(f"surface has Picard number {len(cycle) - 2}, expected 1")
    rel = _relation_among(fan, list(tau) + cycle, cycle)
    return QuadForm.from_products([(1, rel, rel)], fan.n, exact=False)


def rho2_labeling(fan: Fan, ray: Optional[int] = None) -> tuple[int, int, int, int]:
    """Default ``(y1, y2, y3, y4)``: y1 is the lowest-index star ray, y2 its
    opposite, y3 the lower-index ray of the other opposite pair."""
    cycle = surface_cycle(fan, ray)
    if len(cycle) != 4:
        raise PreconditionError(f"surface has Picard number {len(cycle) - 2}, expected 2")
    y1 = min(cycle)
    k = cycle.index(y1)
    y2 = cycle[(k + 2) % 4]
    y3, y4 = sorted((cycle[(k + 1) % 4], cycle[(k + 3) % 4]))
    return y1, y2, y3, y4


@dataclass(frozen=True)
class Rho2Data:
    """The two wall relations of a Picard-number-two surface.

    ``first`` is the relation through the wall (tau, y3) (coefficients b1, b2
    on y1, y2 and c3 on y3), ``second`` the one through (tau, y1) (b3, b4 on
    y3, y4 and c1 on y1).
    """

    labels: tuple[int, int, int, int]
    tau: tuple[int, ...]
    first: dict[int, int]
    second: dict[int, int]

    def coefficient(self, name: str):
        y1, y2, y3, y4 = self.labels
        table = {
            "b1": self.first.get(y1, 0),
            "b2": self.first.get(y2, 0),
            "c3": self.first.get(y3, 0),
            "b3": self.second.get(y3, 0),
            "b4": self.second.get(y4, 0),
            "c1": self.second.get(y1, 0),
        }
        return table[name]

    @property
    def a(self) -> list[int]:
        return [self.first.get(x, 0) for x in self.tau]

    @property
    def e(self) -> list[int]:
        return [self.second.get(x, 0) for x in self.tau]


def rho2_data(fan: Fan, ray: Optional[int] = None, labeling=None) -> Rho2Data:
    tau = _surface_indices(fan, ray)
    cycle = surface_cycle(fan, ray)
    if len(cycle) != 4:
        raise PreconditionError(f"surface has Picard number {len(cycle) - 2}, expected 2")
    labels = tuple(labeling) if labeling is not None else rho2_labeling(fan, ray)
    y1, y2, y3, y4 = labels
    if sorted(labels) != sorted(cycle):
        raise FanError(f"labeling {labels} does not match the star {cycle}")
    for a, b in ((y1, y3), (y2, y3), (y1, y4), (y2, y4)):
        if not fan.is_cone(tau + (a, b)):
            raise FanError(f"labeling {labels}: rays {a}, {b} do not span a cone with the surface")
    first = _relation_among(fan, list(tau) + [y3, y1, y2], [y1, y2])
    second = _relation_among(fan, list(tau) + [y1, y3, y4], [y3, y4])
    return Rho2Data(labels, tau, first, second)


def rho2_gamma(b1, b2, c3, a, b3, b4, c1, e) -> Fraction:
    """Diagonal sum of the Picard-number-two form, straight from the coefficients."""
    sa = sum(x * x for x in a)
    se = sum(x * x for x in e)
    sae = sum(x * y for x, y in zip(a, e))
    return Fraction(
        -b3 * c1 * (b1**2 + b2**2 + c3**2 + sa)
        + 2 * b1 * b3 * (b1 * c1 + b3 * c3 + sae)
        - b1 * c3 * (b3**2 + b4**2 + c1**2 + se)
    )


def rho2_form(fan: Fan, ray: Optional[int] = None, labeling=None) -> QuadForm:
    """``-b3 c1 L1^2 + 2 b1 b3 L1 L2 - b1 c3 L2^2`` for the two wall relations L1, L2.

    ``labeling`` optionally fixes ``(y1, y2, y3, y4)``; by default
    :func:`rho2_labeling` is used.
    """
    data = rho2_data(fan, ray, labeling)
    b1, b3 = data.coefficient("b1"), data.coefficient("b3")
    c1, c3 = data.coefficient("c1"), data.coefficient("c3")
    l1, l2 = data.first, data.second
    return QuadForm.from_products(
        [(-b3 * c1, l1, l1), (2 * b1 * b3, l1, l2), (-b1 * c3, l2, l2)], fan.n, exact=False
    )


# ---------------------------------------------------------------------------
# subdividing a cone of a surface fan


def normalize_corner(x1: Sequence[int], x2: Sequence[int], y: Sequence[int]) -> tuple[int, int, int, int]:
    """``(p, q, r, s)`` with x1 -> (1, 0), x2 -> (p, q), y -> (r, s) under GL(2, Z),
    q > 0. Raises unless y is primitive and strictly inside cone(x1, x2)."""
    try:
        u = linalg.unimodular_to_e1(x1)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc
    p, q = (u[0][0] * x2[0] + u[0][1] * x2[1], u[1][0] * x2[0] + u[1][1] * x2[1])
    r, s = (u[0][0] * y[0] + u[0][1] * y[1], u[1][0] * y[0] + u[1][1] * y[1])
    if q < 0:
        q, s = -q, -s
    if q == 0:
        raise PreconditionError("x1 and x2 are parallel")
    if gcd(r, s) != 1:
        raise PreconditionError(f"{tuple(y)} is not primitive")
    if not (s > 0 and q * r - p * s > 0):
        raise PreconditionError(f"{tuple(y)} is not strictly inside the cone")
    return p, q, r, s


def subdivision_drop(p: int, q: int, r: int, s: int) -> Fraction:
    """Decrease of gamma_2 when the cone is subdivided."""
    k = q * r - p * s
    return Fraction(k * k + s * s + q * q, q * s * k)


def subdivide_update(form: QuadForm, i1: int, i2: int, p: int, q: int, r: int, s: int) -> QuadForm:
    """Form of the surface obtained by subdividing cone(x_i1, x_i2) at y.

    The new variable Y is appended as the last index. Coordinates must be
    normalised as in :func:`normalize_corner`.
    """
    k = q * r - p * s
    if not (q > 0 and s > 0 and k > 0):
        raise PreconditionError("need q > 0, s > 0 and qr - ps > 0")
    if gcd(r, s) != 1:
        raise PreconditionError("subdivision point is not primitive")
    n = form.size + 1
    lin = {i1: k, i2: s, n - 1: -q}
    square = QuadForm.from_products([(Fraction(1, q * s * k), lin, lin)], n, exact=True)
    return QuadForm(form.padded(n).matrix, form.exact) - square
