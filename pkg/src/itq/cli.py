"""Command-line entry point: ``itq analyze | generate | oracle | batch | fixtures``."""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from itq import fixtures
from itq.generators import FAMILIES, FAMILY_PARAMS, generate, random_quiver
from itq.oracle import CapExceeded, resolve_cap, run_oracle
from itq.quiver import ParseError, Quiver, format_quiver, parse_quiver
from itq.report import TSV_COLUMNS, Report, build_report, render_text, tsv_row

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


def _err(msg: str):
    print(f"itq: {msg}", file=sys.stderr)


def _read_quiver(path: Optional[str], fixture: Optional[str] = None) -> Quiver:
    if fixture:
        if fixture not in fixtures.names():
            raise ParseError(f"unknown fixture {fixture!r}")
        return fixtures.load(fixture)
    if path is None or path == "-":
        return parse_quiver(sys.stdin.read())
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_quiver(text)


# -- analyze ---------------------------------------------------------------

def cmd_analyze(args) -> int:
    try:
        q = _read_quiver(args.file, args.fixture)
    except ParseError as exc:
        _err(str(exc))
        return EXIT_INPUT
    rep = build_report(q, witness=args.witness, partitions=args.partitions,
                       oracle=args.oracle, cap=args.cap)
    print(rep.to_json() if args.json else render_text(rep))
    if args.figures:
        from itq.plotting import write_figures

        stem = args.fixture or (Path(args.file).stem if args.file and args.file != "-" else "quiver")
        for p in write_figures(rep, Path(args.figures), stem):
            print(f"wrote {p}", file=sys.stderr)
    return rep.exit_code


# -- generate --------------------------------------------------------------

def _parse_params(family: str, raw: Sequence[str]) -> List[int]:
    names = FAMILY_PARAMS[family]
    values = {}
    positional = []
    for tok in raw:
        if "=" in tok:
            key, _, val = tok.partition("=")
            if key not in names:
                raise ValueError(f"{family} has no parameter {key!r}")
            values[key] = val
        else:
            positional.append(tok)
    for key in names:
        if key not in values and positional:
            values[key] = positional.pop(0)
    if positional or set(values) != set(names):
        raise ValueError(f"usage: itq generate {family} {' '.join(names)}")
    try:
        return [int(values[k]) for k in names]
    except ValueError:
        raise ValueError("parameters must be integers") from None


def cmd_generate(args) -> int:
    try:
        params = _parse_params(args.family, args.params)
        q = generate(args.family, *params)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_INPUT
    header = f"# {args.family} " + " ".join(f"{k}={v}" for k, v in zip(FAMILY_PARAMS[args.family], params))
    print(header)
    print(format_quiver(q, args.format))
    return EXIT_OK


# -- oracle ----------------------------------------------------------------

def _oracle_line(name: str, q: Quiver, cap: int) -> Tuple[bool, str]:
    try:
        rep = run_oracle(q, cap)
    except CapExceeded as exc:
        return True, f"{name}\tskipped\t{exc}"
    if rep.ok:
        return True, f"{name}\tpass\t{len(rep.comparisons)} quantities agree"
    detail = "; ".join(f"{k}: engine {a} oracle {b}" for k, a, b in rep.mismatches)
    return False, f"{name}\tFAIL\t{detail}"


def cmd_oracle(args) -> int:
    try:
        cap = resolve_cap(args.cap)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_INPUT
    jobs: List[Tuple[str, Quiver]] = []
    if args.file or args.fixture:
        try:
            q = _read_quiver(args.file, args.fixture)
        except ParseError as exc:
            _err(str(exc))
            return EXIT_INPUT
        if q.n > cap:
            _err(f"quiver has {q.n} vertices, oracle cap is {cap}")
            return EXIT_INPUT
        jobs.append((args.fixture or args.file, q))
    if args.fixtures:
        jobs += [(n, fixtures.load(n)) for n in fixtures.names()]
    if args.seed is not None:
        rng = random.Random(args.seed)
        print(f"# seed {args.seed}, {args.count} random quivers, n <= {min(6, cap)}")
        for i in range(args.count):
            jobs.append((f"random[{i}]", random_quiver(rng, rng.randint(1, min(6, cap)))))
    if not jobs:
        _err("nothing to check: give FILE, --fixture, --fixtures or --seed")
        return EXIT_INPUT
    ok_all = True
    for name, q in jobs:
        ok, line = _oracle_line(name, q, cap)
        ok_all &= ok
        print(line)
    return EXIT_OK if ok_all else EXIT_VIOLATION


# -- batch -----------------------------------------------------------------

def _batch_one(path: str):
    try:
        q = parse_quiver(Path(path).read_text())
    except (ParseError, OSError) as exc:
        return None, str(exc)
    return build_report(q).to_dict(), None


def cmd_batch(args) -> int:
    directory = Path(args.dir)
    if not directory.is_dir():
        _err(f"{directory} is not a directory")
        return EXIT_INPUT
    paths = sorted(directory.glob("*.quiver"), key=lambda p: p.name)
    if args.jobs == 1 or len(paths) < 2:
        results = [_batch_one(str(p)) for p in paths]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            # map keeps input order whatever the completion order
            results = list(pool.map(_batch_one, [str(p) for p in paths]))
    code = EXIT_OK
    rows = []
    for path, (data, error) in zip(paths, results):
        if error is not None:
            code = max(code, EXIT_INPUT)
            rows.append((path.stem, None, error))
            continue
        rep = Report.from_dict(data)
        code = max(code, rep.exit_code)
        rows.append((path.stem, rep, None))
        if args.figures:
            from itq.plotting import write_figures

            write_figures(rep, Path(args.figures), path.stem)
    if args.json:
        out = [{"name": n, "report": r.to_dict() if r else None, "error": e} for n, r, e in rows]
        print(json.dumps(out, indent=2))
    else:
        w = csv.writer(sys.stdout, delimiter="\t", lineterminator="\n")
        w.writerow(TSV_COLUMNS)
        for n, r, e in rows:
            w.writerow(tsv_row(n, r) if r else [n] + ["error: " + e] + [""] * (len(TSV_COLUMNS) - 2))
    return code


def cmd_fixtures(args) -> int:
    expected = fixtures.expected()
    for name in fixtures.names():
        vals = ", ".join(f"{k}={v}" for k, v in sorted(expected.get(name, {}).items()))
        print(f"{name}\t{vals}")
    return EXIT_OK


# -- wiring ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="itq", description="Igusa-Todorov invariants of radical square zero algebras kQ/J^2.")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="profile one quiver")
    a.add_argument("file", nargs="?", help="quiver file (stdin if omitted or '-')")
    a.add_argument("--fixture", help="analyze a built-in fixture by name")
    a.add_argument("--json", action="store_true", help="machine-readable report")
    a.add_argument("--partitions", action="store_true", help="equitable partitions and quotient checks")
    a.add_argument("--oracle", action="store_true", help="cross-check against the brute-force oracle")
    a.add_argument("--witness", action="store_true", help="minimal witness, Gamma graph and kernel audit")
    a.add_argument("--figures", metavar="DIR", help="write rank-trace and matrix figures to DIR")
    a.add_argument("--cap", type=int, help="oracle vertex cap (default 8, or $ITQ_ORACLE_CAP)")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("generate", help="print a quiver from a built-in family")
    g.add_argument("family", choices=sorted(FAMILIES))
    g.add_argument("params", nargs="*", help="integers, positional or key=value")
    g.add_argument("--format", choices=("matrix", "arrows"), default="matrix")
    g.set_defaults(func=cmd_generate)

    o = sub.add_parser("oracle", help="brute-force cross-check")
    o.add_argument("file", nargs="?")
    o.add_argument("--fixture")
    o.add_argument("--fixtures", action="store_true", help="check every built-in fixture")
    o.add_argument("--seed", type=int, help="check a seeded batch of random quivers")
    o.add_argument("--count", type=int, default=100)
    o.add_argument("--cap", type=int)
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("batch", help="analyze every *.quiver file in a directory")
    b.add_argument("dir")
    b.add_argument("--json", action="store_true")
    b.add_argument("--figures", metavar="DIR")
    b.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
    b.set_defaults(func=cmd_batch)

    f = sub.add_parser("fixtures", help="list built-in fixtures and their expected values")
    f.set_defaults(func=cmd_fixtures)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
