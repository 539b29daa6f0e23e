from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricgamma.dataset import (
    BUNDLED,
    EXPECTED,
    DatasetRecord,
    format_dataset,
    load_bundled,
    parse_dataset,
    parse_dataset_lenient,
)
from toricgamma.exceptions import DatasetError


def test_parse_single_record():
    recs = parse_dataset("id 4\n1 0 0\n0 1 0\n0 0 1\n-1 -1 -1\n")
    assert len(recs) == 1
    assert recs[0].id == "4" and recs[0].dim == 3 and len(recs[0].generators) == 4


def test_parse_empty():
    assert parse_dataset("") == []
    assert parse_dataset("\n\n# only a comment\n") == []


def test_parse_with_dim():
    (rec,) = parse_dataset("id P2 dim 2\n1 0\n0 1\n-1 -1")
    assert rec == DatasetRecord("P2", 2, ((1, 0), (0, 1), (-1, -1)))


def test_parse_multiple_and_comments():
    text = "# two records\nid a\n1 0\n0 1\n-1 -1\n\n\n# next\nid b dim 2\n1 0\n-1 0\n0 1\n0 -1\n"
    recs = parse_dataset(text)
    assert [r.id for r in recs] == ["a", "b"]


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("id a\n1 0\n0 x\n-1 -1\n", 3, "non-integer"),
        ("id a\n2 0\n0 1\n-1 -1\n", 2, "not primitive"),
        ("id a\n1 0\n0 1\n1 0\n-1 -1\n", 4, "duplicate generator"),
        ("name a\n1 0\n0 1\n-1 -1\n", 1, "expected 'id"),
        ("id a dim 3\n1 0\n", 2, "length 2"),
        ("id a\n1 0\n0 1\n", 1, "at least 3"),
        ("id a\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n-1 -1 -1 -1\n", 1, "dimension 4"),
        ("id a\n1 0\n0 1\n-1 -1\n\nid a\n1 0\n0 1\n-1 -1\n", 6, "duplicate id"),
        ("id a dim two\n1 0\n", 1, "not an integer"),
        ("id a\n", 1, "no generators"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(DatasetError) as info:
        parse_dataset(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {line}:")


def test_lenient_keeps_good_records():
    text = "id good\n1 0\n0 1\n-1 -1\n\nid bad\n2 0\n0 1\n-1 -1\n\nid good2\n1 0\n0 1\n-1 0\n0 -1\n"
    recs, errors = parse_dataset_lenient(text)
    assert [r.id for r in recs] == ["good", "good2"]
    assert len(errors) == 1 and errors[0].line == 7


def primitive_vectors(dim):
    return st.tuples(*[st.integers(-9, 9)] * dim).filter(lambda v: gcd(*v) == 1)


@st.composite
def records(draw):
    n = draw(st.integers(0, 4))
    ids = draw(
        st.lists(
            st.text("abcXYZ0123456789_-.", min_size=1, max_size=6), min_size=n, max_size=n, unique=True
        )
    )
    out = []
    for rid in ids:
        dim = draw(st.sampled_from([2, 3]))
        gens = draw(st.lists(primitive_vectors(dim), min_size=dim + 1, max_size=7, unique=True))
        out.append(DatasetRecord(rid, dim, tuple(gens)))
    return out


@settings(max_examples=60)
@given(records())
def test_round_trip(recs):
    assert parse_dataset(format_dataset(recs)) == recs


def test_bundled_sizes():
    assert len(load_bundled("table1")) == 10
    assert len(load_bundled("table2")) == 23
    assert len(load_bundled("remark58")) == 1
    assert set(BUNDLED) == {"table1", "table2", "remark58"}


def test_bundled_ids_match_expected():
    for name in ("table1", "table2"):
        assert {r.id for r in load_bundled(name)} == set(EXPECTED[name])


def test_bundled_id4_is_simplex():
    rec = next(r for r in load_bundled("table2") if r.id == "4")
    assert set(rec.generators) == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)}
