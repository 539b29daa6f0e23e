"""Command-line interface.

Exit codes: 0 success, 1 verdict mismatch against a bundled table, 2 input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .classify import POSITIVE, enumerate_reflexive_polygons, fraction_str, sweep
from .dataset import EXPECTED, load_bundled, parse_dataset_lenient
from .exceptions import ToricError
from .fan import face_fan
from .props import profile

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


def _read(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    records, errors = parse_dataset_lenient(text)
    for e in errors:
        print(f"error: {e}", file=sys.stderr)
    return records, errors


def cmd_check(args) -> int:
    records, errors = _read(args.file)
    failed = bool(errors)
    for rec in records:
        try:
            p = profile(face_fan(rec.generators))
        except ToricError as exc:
            print(f"{rec.id}: error: {exc}")
            failed = True
            continue
        flags = " ".join(f"{k}={v}" for k, v in p.as_dict().items())
        print(f"{rec.id}: {flags}")
    return EXIT_INPUT if failed else EXIT_OK


def cmd_gamma(args) -> int:
    records, errors = _read(args.file)
    result = sweep([r.as_item() for r in records])
    for rep in result.reports:
        print(f"{rep.id}: {rep.verdict} (min gamma2.S = {fraction_str(rep.witness.gamma2)} at {rep.witness.ray})")
        if args.per_surface:
            for s in rep.surfaces:
                print(f"  S={s.ray} rho={s.rho} gamma2={fraction_str(s.gamma2)} [{s.closed_form}]")
    for rid, msg in result.errors.items():
        print(f"{rid}: error: {msg}")
    return EXIT_INPUT if errors or result.errors else EXIT_OK


def cmd_sweep(args) -> int:
    records, errors = _read(args.file)
    result = sweep([r.as_item() for r in records], jobs=args.jobs)
    errs = {**{f"parse:{e.line}": str(e) for e in errors}, **result.errors}
    if args.format == "json":
        counts = result.counts()
        counts["errors"] += len(errors)
        counts["total"] += len(errors)
        doc = {
            "reports": [r.as_dict() for r in result.reports],
            "errors": errs,
            "summary": counts,
        }
        print(json.dumps(doc, indent=2))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "verdict", "witness_ray", "min_gamma2", "picard", "fano", "terminal", "gorenstein"])
        for r in result.reports:
            w.writerow([
                r.id, r.verdict, r.witness.ray, fraction_str(r.witness.gamma2),
                r.profile.picard, r.profile.fano, r.profile.terminal, r.profile.gorenstein,
            ])
        sys.stdout.write(buf.getvalue())
        for rid, msg in errs.items():
            print(f"error: {rid}: {msg}", file=sys.stderr)
    return EXIT_INPUT if errs else EXIT_OK


def _cmd_table(name: str) -> int:
    records = load_bundled(name)
    result = sweep([r.as_item() for r in records])
    expected = EXPECTED[name]
    mismatches = []
    for rep in result.reports:
        if expected.get(rep.id) != rep.verdict:
            mismatches.append(f"{rep.id}: got {rep.verdict}, expected {expected.get(rep.id)}")
    for rid, msg in result.errors.items():
        mismatches.append(f"{rid}: error: {msg}")
    nef = sum(r.nef for r in result.reports)
    pos = sum(r.verdict == POSITIVE for r in result.reports)
    for line in mismatches:
        print(line)
    print(f"{nef}/{len(records)} nef, {pos} positive")
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_reflexive2d(args) -> int:
    polys = enumerate_reflexive_polygons()
    for p in polys:
        print(" ".join(f"({x},{y})" for x, y in p))
    print(f"{len(polys)} reflexive polygons")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricgamma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="print the variety profile of each record")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gamma", help="print gamma2 verdicts")
    p.add_argument("file")
    p.add_argument("--per-surface", action="store_true")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("sweep", help="batch reports with a summary")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    for name in ("table1", "table2"):
        p = sub.add_parser(name, help=f"reproduce the bundled {name} verdicts")
        p.set_defaults(func=lambda args, name=name: _cmd_table(name))

    p = sub.add_parser("reflexive2d", help="enumerate reflexive polygons")
    p.set_defaults(func=cmd_reflexive2d)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
