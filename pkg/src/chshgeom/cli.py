"""Command-line interface.

Subcommands::

    check      report on a single correlation vector
    decompose  local-plus-PR decomposition of a single vector
    verify     batch-check a CSV/JSON file of experimental correlations
    boundary   write the maximally violating boundary family on a grid
    sample     write seeded random quantum correlations

Exit codes: 0 all checks pass, 1 a quantum bound is violated, 2 usage or
schema error, 3 I/O error.
"""

import argparse
import contextlib
import csv
import io
import json
import logging
import math
import re
import sys

import numpy as np

from .errors import ParseError, SchemaError, UnknownSource
from .geometry import DEFAULT_TOL, boundary_point, boundary_theta, chsh_values, quadric_form
from .quantum import SOURCES, sample_correlations
from .reports import BatchSummary, decomposition_dict, vector_report

log = logging.getLogger("chshgeom")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

COLUMNS = ("p11", "p12", "p21", "p22")
_ALIASES = {"q11": "p11", "q12": "p12", "q21": "p21", "q22": "p22"}


def fmt(x):
    """17 significant digits, enough to round-trip a double."""
    return f"{x:.17g}"


def parse_vector(tokens):
    """Four finite reals from tokens separated by spaces and/or commas."""
    parts = [p for p in re.split(r"[\s,]+", " ".join(tokens).strip()) if p]
    if len(parts) != 4:
        raise ParseError(f"expected 4 numbers, got {len(parts)}")
    try:
        values = [float(p) for p in parts]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if not all(math.isfinite(v) for v in values):
        raise ParseError("components must be finite")
    return np.array(values)


def _cell(value, row, column):
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise SchemaError(f"row {row}, column {column}: not a number: {value!r}", row, column) from None
    if not math.isfinite(x):
        raise SchemaError(f"row {row}, column {column}: value must be finite", row, column)
    return x


def read_csv(text):
    """Parse the ``p11,p12,p21,p22`` CSV schema into an ``(n, 4)`` array."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        raise SchemaError("empty file: missing header", 0, None)
    header = [_ALIASES.get(h.strip(), h.strip()) for h in header]
    missing = [c for c in COLUMNS if c not in header]
    if missing:
        raise SchemaError(f"header is missing column(s) {', '.join(missing)}", 0, missing[0])
    extra = [h for h in header if h not in COLUMNS]
    if extra:
        log.warning("ignoring extra column(s): %s", ", ".join(extra))
    positions = [header.index(c) for c in COLUMNS]
    rows = []
    for n, record in enumerate(reader, start=1):
        if not record or all(not cell.strip() for cell in record):
            continue
        values = []
        for column, pos in zip(COLUMNS, positions):
            if pos >= len(record):
                raise SchemaError(f"row {n}, column {column}: missing value", n, column)
            values.append(_cell(record[pos], n, column))
        rows.append(values)
    return np.array(rows, dtype=float).reshape(-1, 4)


def read_json(text):
    """A JSON list of 4-element arrays or objects keyed by ``p11`` .. ``p22``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(data, list):
        raise SchemaError("JSON input must be a list of rows")
    rows = []
    for n, item in enumerate(data, start=1):
        if isinstance(item, dict):
            item = {_ALIASES.get(k, k): v for k, v in item.items()}
            for column in COLUMNS:
                if column not in item:
                    raise SchemaError(f"row {n}, column {column}: missing value", n, column)
            rows.append([_cell(item[c], n, c) for c in COLUMNS])
        elif isinstance(item, list) and len(item) == 4:
            rows.append([_cell(v, n, c) for v, c in zip(item, COLUMNS)])
        else:
            raise SchemaError(f"row {n}: expected an object or a list of 4 numbers", n)
    return np.array(rows, dtype=float).reshape(-1, 4)


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _emit(obj, out):
    out.write(json.dumps(obj) + "\n")


def cmd_check(args):
    q = parse_vector(args.vector)
    report = vector_report(q, args.tol)
    with _output(args.out) as out:
        out.write(json.dumps(report.to_dict(), indent=2) + "\n")
    return EXIT_VIOLATION if report.failed else EXIT_OK


def cmd_decompose(args):
    q = parse_vector(args.vector)
    report = vector_report(q, args.tol)
    body = {
        "input": report.input,
        "pr_rate": report.pr_rate,
        "decomposition": decomposition_dict(report.decomposition),
        "tol": args.tol,
    }
    with _output(args.out) as out:
        out.write(json.dumps(body, indent=2) + "\n")
    return EXIT_VIOLATION if report.failed else EXIT_OK


def cmd_verify(args):
    fmt_name = args.format or ("json" if args.input.lower().endswith(".json") else "csv")
    with open(args.input, encoding="utf-8") as fh:
        text = fh.read()
    data = read_json(text) if fmt_name == "json" else read_csv(text)

    summary = BatchSummary()
    with _output(args.out) as out:
        for row, q in enumerate(data, start=1):
            report = vector_report(q, args.tol)
            summary.add(row, report)
            if not args.summary_only:
                _emit({
                    "row": row,
                    "failed": report.failed,
                    "violations": report.violations,
                    "report": report.to_dict(),
                }, out)
        _emit({"summary": summary.to_dict(), "tol": args.tol}, out)
    return EXIT_VIOLATION if summary.failures else EXIT_OK


def _open_grid(steps):
    return (np.arange(steps) + 1) * (math.pi / 2) / (steps + 1)


def cmd_boundary(args):
    if args.alpha_steps < 2 or args.beta_steps < 2:
        raise ParseError("grid steps must be at least 2")
    alpha, beta = np.meshgrid(_open_grid(args.alpha_steps), _open_grid(args.beta_steps), indexing="ij")
    alpha, beta = alpha.ravel(), beta.ravel()
    theta = boundary_theta(alpha, beta)
    q = boundary_point(alpha, beta)
    chsh = chsh_values(q)[:, 3]
    quad = quadric_form(q)
    with _output(args.out) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["alpha", "beta", "theta", "q11", "q12", "q21", "q22", "chsh", "quadric"])
        for k in range(len(alpha)):
            writer.writerow([fmt(x) for x in (alpha[k], beta[k], theta[k], *q[k], chsh[k], quad[k])])
    log.info("wrote %d rows", len(alpha))
    return EXIT_OK


def cmd_sample(args):
    if args.count < 1:
        raise ParseError("--count must be at least 1")
    q = sample_correlations(args.count, args.seed, args.source)
    with _output(args.out) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(COLUMNS)
        writer.writerows([fmt(x) for x in row] for row in q)
    log.info("wrote %d rows", len(q))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="chshgeom", description="Geometry of two-setting Bell correlations."
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="membership tolerance (default 1e-9)")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    for name, func, text in (
        ("check", cmd_check, "full report on one correlation vector"),
        ("decompose", cmd_decompose, "local-plus-PR decomposition of one vector"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("vector", nargs="+", help='four numbers, e.g. "1 1 1 -1" or 1,1,1,-1')
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="batch-check a file of correlation vectors")
    p.add_argument("input", help="CSV with header p11,p12,p21,p22, or a JSON list")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--summary-only", action="store_true", help="only print the summary line")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("boundary", help="sample the maximally violating boundary family")
    p.add_argument("--alpha-steps", type=int, default=50)
    p.add_argument("--beta-steps", type=int, default=50)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("sample", help="seeded random quantum correlations")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--source", default="pure-state", help=f"one of: {', '.join(SOURCES)}")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, SchemaError, UnknownSource) as exc:
        print(f"chshgeom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"chshgeom: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
