"""Plain-text dataset format and bundled tables.

Records are separated by blank lines::

    id 34 dim 3
    1 0 0
    0 1 0
    -2 1 5
    1 -1 -3
    -1 1 3

``dim`` may be omitted and is then inferred from the vectors. Lines starting
with ``#`` are comments.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from importlib import resources
from math import gcd

from .classify import NEF, POSITIVE
from .exceptions import DatasetError

__all__ = [
    "DatasetRecord",
    "parse_dataset",
    "parse_dataset_lenient",
    "format_dataset",
    "load_bundled",
    "BUNDLED",
    "EXPECTED",
]


@dataclass(frozen=True)
class DatasetRecord:
    id: str
    dim: int
    generators: tuple[tuple[int, ...], ...]

    def as_item(self) -> tuple[str, list[tuple[int, ...]]]:
        return self.id, list(self.generators)


def _blocks(text: str):
    """Yield (first line number, [(line number, content), ...]) per record."""
    block: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if block:
                yield block
                block = []
            continue
        block.append((lineno, line))
    if block:
        yield block


def _parse_block(block: list[tuple[int, str]]) -> DatasetRecord:
    lineno, header = block[0]
    words = header.split()
    if len(words) not in (2, 4) or words[0] != "id" or (len(words) == 4 and words[2] != "dim"):
        raise DatasetError(f"expected 'id <token> [dim <d>]', got {header!r}", lineno)
    rid = words[1]
    dim = None
    if len(words) == 4:
        try:
            dim = int(words[3])
        except ValueError:
            raise DatasetError(f"dimension {words[3]!r} is not an integer", lineno) from None
    gens = []
    for lineno, line in block[1:]:
        try:
            v = tuple(int(x) for x in line.split())
        except ValueError:
            raise DatasetError(f"non-integer entry in {line!r}", lineno) from None
        if dim is None:
            dim = len(v)
        if len(v) != dim:
            raise DatasetError(f"vector {v} has length {len(v)}, expected {dim}", lineno)
        if reduce(gcd, v, 0) != 1:
            raise DatasetError(f"generator {v} is not primitive", lineno)
        if v in gens:
            raise DatasetError(f"duplicate generator {v}", lineno)
        gens.append(v)
    if dim is None:
        raise DatasetError(f"record {rid!r} has no generators", block[0][0])
    if dim not in (2, 3):
        raise DatasetError(f"dimension {dim} not supported", block[0][0])
    if len(gens) < dim + 1:
        raise DatasetError(f"record {rid!r} needs at least {dim + 1} generators", block[0][0])
    return DatasetRecord(rid, dim, tuple(gens))


def parse_dataset_lenient(text: str) -> tuple[list[DatasetRecord], list[DatasetError]]:
    """Parse what can be parsed; malformed records are reported, not raised."""
    records: list[DatasetRecord] = []
    errors: list[DatasetError] = []
    ids: set[str] = set()
    for block in _blocks(text):
        try:
            rec = _parse_block(block)
            if rec.id in ids:
                raise DatasetError(f"duplicate id {rec.id!r}", block[0][0])
        except DatasetError as exc:
            errors.append(exc)
            continue
        ids.add(rec.id)
        records.append(rec)
    return records, errors


def parse_dataset(text: str) -> list[DatasetRecord]:
    records, errors = parse_dataset_lenient(text)
    if errors:
        raise errors[0]
    return records


def format_dataset(records) -> str:
    chunks = []
    for rec in records:
        lines = [f"id {rec.id} dim {rec.dim}"]
        lines += [" ".join(str(x) for x in g) for g in rec.generators]
        chunks.append("\n".join(lines) + "\n")
    return "\n".join(chunks)


BUNDLED = {
    "table1": "table1_delpezzo.txt",
    "table2": "table2_fano3.txt",
    "remark58": "remark58.txt",
}

# verdicts the bundled tables must reproduce
EXPECTED = {
    "table1": {
        **{i: POSITIVE for i in ("12", "13", "14", "15", "16")},
        **{i: NEF for i in ("6", "8", "9", "10", "11")},
    },
    "table2": {
        **{str(i): POSITIVE for i in range(1, 9)},
        **{
            i: NEF
            for i in ("9", "24", "34", "35", "36", "38", "43", "45", "47", "62", "105", "110", "123", "131", "140")
        },
    },
}


def bundled_text(name: str) -> str:
    return resources.files("toricgamma").joinpath("data", BUNDLED[name]).read_text()


def load_bundled(name: str) -> list[DatasetRecord]:
    return parse_dataset(bundled_text(name))
