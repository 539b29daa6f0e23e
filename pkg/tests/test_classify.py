import random
from fractions import Fraction

import pytest

from conftest import ID34, P2, P3, REMARK58, SURFACE_EX
from oracles import apply, random_unimodular
from toricgamma.classify import (
    NEF,
    NOT_NEF,
    POSITIVE,
    enumerate_reflexive_polygons,
    fraction_str,
    polygon_normal_form,
    sweep,
    verdict,
)
from toricgamma.dataset import EXPECTED
from toricgamma.exceptions import NotCompleteError, ToricError
from toricgamma.fan import Fan, face_fan, mult
from toricgamma.props import is_fano, is_gorenstein


def test_verdict_id34():
    rep = verdict(ID34, id="34")
    assert rep.verdict == NEF
    assert rep.witness.gamma2 == 0
    assert rep.witness.ray in (0, 1, 2)
    assert rep.surfaces[0].rho == 2 and rep.surfaces[4].rho == 1
    assert rep.surfaces[4].gamma2 > 0


def test_verdict_simplex_and_p2():
    assert verdict(P3).verdict == POSITIVE
    rep = verdict(P2)
    assert rep.verdict == POSITIVE
    assert rep.witness.ray == "whole-surface" and rep.witness.gamma2 == 3


def test_verdict_surface_example():
    rep = verdict(SURFACE_EX)
    assert rep.verdict == POSITIVE
    assert rep.witness.gamma2 == Fraction(5, 6)
    assert rep.witness.closed_form == "rho2"


def test_verdict_remark58():
    rep = verdict(REMARK58, id="remark58")
    assert rep.verdict == NOT_NEF and not rep.nef
    assert rep.witness.gamma2 == -2
    assert rep.profile.fano


def test_verdict_errors():
    with pytest.raises(NotCompleteError):
        verdict([(1, 0), (-1, 0), (0, 1)])
    with pytest.raises(NotCompleteError):
        verdict(Fan(((1, 0), (0, 1), (-1, -1)), ((1, 2), (0, 2))))
    with pytest.raises(ToricError):
        verdict(Fan(((1,), (-1,)), ((0,), (1,))))


def test_table2_verdicts(table2):
    result = sweep([r.as_item() for r in table2])
    assert not result.errors
    got = {r.id: r.verdict for r in result.reports}
    assert got == EXPECTED["table2"]
    assert [r for r in got if got[r] == POSITIVE] == [str(i) for i in range(1, 9)]


def test_table1_verdicts(table1):
    result = sweep([r.as_item() for r in table1])
    assert {r.id: r.verdict for r in result.reports} == EXPECTED["table1"]
    for rep in result.reports:
        assert (rep.verdict == POSITIVE) == (rep.witness.rho == 1)


def test_sweep_counts(table2):
    counts = sweep([r.as_item() for r in table2]).counts()
    assert counts["total"] == 23 and counts["errors"] == 0 and counts["nef"] == 23
    assert counts["verdicts"] == {POSITIVE: 8, NEF: 15, NOT_NEF: 0}
    assert sum(counts["profiles"].values()) == 23


def test_sweep_collects_errors():
    result = sweep([("p2", P2), ("bad", [(1, 0), (-1, 0), (0, 1)]), ("p3", P3)])
    assert [r.id for r in result.reports] == ["p2", "p3"]
    assert "bad" in result.errors and "NotCompleteError" in result.errors["bad"]
    assert result.counts()["total"] == 3


def test_sweep_parallel_same_order(table2):
    items = [r.as_item() for r in table2]
    serial = sweep(items)
    parallel = sweep(items, jobs=3)
    assert [r.as_dict() for r in parallel.reports] == [r.as_dict() for r in serial.reports]


def test_fraction_str():
    assert fraction_str(Fraction(13, 2)) == "13/2"
    assert fraction_str(Fraction(-2)) == "-2/1"
    assert fraction_str(0) == "0/1"


# reflexive polygons


@pytest.fixture(scope="module")
def reflexive():
    return enumerate_reflexive_polygons()


def test_reflexive_count(reflexive):
    assert len(reflexive) == 16
    by_size = {}
    for poly in reflexive:
        by_size[len(poly)] = by_size.get(len(poly), 0) + 1
    assert by_size == {3: 5, 4: 7, 5: 3, 6: 1}


def test_reflexive_contains_p2(reflexive):
    assert polygon_normal_form(P2) in reflexive


def test_reflexive_all_gorenstein_fano(reflexive):
    for poly in reflexive:
        assert is_fano(list(poly)) and is_gorenstein(list(poly))


def test_reflexive_nef_split(reflexive):
    reports = [verdict(list(p)) for p in reflexive]
    assert sum(r.nef for r in reports) == 10
    nef_quads = 0
    for poly, rep in zip(reflexive, reports):
        rho = len(poly) - 2
        if rho == 1:
            assert rep.verdict == POSITIVE
        elif rho == 2:
            assert rep.verdict != POSITIVE
            nef_quads += rep.nef
        else:
            assert rep.witness.gamma2 < 0
    assert nef_quads == 5


def test_reflexive_matches_table1(reflexive, table1):
    listed = {polygon_normal_form(r.generators) for r in table1}
    assert listed <= set(reflexive)
    nef = {p for p in reflexive if verdict(list(p)).nef}
    assert nef == listed


def test_normal_form_invariant():
    rng = random.Random(7)
    for poly in [P2, SURFACE_EX, [(1, 0), (0, 1), (-1, 0), (0, -1)]]:
        nf = polygon_normal_form(poly)
        for _ in range(20):
            u = random_unimodular(2, rng)
            moved = [apply(u, v) for v in poly]
            rng.shuffle(moved)
            assert polygon_normal_form(moved) == nf


def test_normal_form_separates():
    assert polygon_normal_form(P2) != polygon_normal_form([(1, 0), (0, 1), (-1, 0), (0, -1)])
    assert polygon_normal_form([(0, 1), (2, 1), (-1, -1)]) != polygon_normal_form(P2)


def test_enumeration_deterministic(reflexive):
    assert enumerate_reflexive_polygons() == reflexive


# invariants


@pytest.mark.parametrize("points", [ID34, REMARK58, SURFACE_EX, P3])
def test_verdict_reorder_invariant(points):
    base = verdict(points)
    rng = random.Random(3)
    for _ in range(5):
        perm = points[:]
        rng.shuffle(perm)
        rep = verdict(perm)
        assert rep.verdict == base.verdict
        assert rep.witness.gamma2 == base.witness.gamma2
        by_gen = {perm[s.ray] if isinstance(s.ray, int) else None: s.gamma2 for s in rep.surfaces}
        assert by_gen == {
            points[s.ray] if isinstance(s.ray, int) else None: s.gamma2 for s in base.surfaces
        }


def test_all_rho1_surfaces_positive(bundled_fans):
    seen = 0
    for name, fan in bundled_fans:
        if fan.dim != 3:
            continue
        rep = verdict(fan)
        if all(s.rho == 1 for s in rep.surfaces):
            seen += 1
            assert rep.verdict == POSITIVE, name
    fan = face_fan([(1, 0, 0), (0, 1, 0), (1, -3, 5), (-2, 2, -5)])
    assert mult(fan, (0, 1, 2)) == 5
    assert verdict(fan).verdict == POSITIVE
    assert seen >= 1
