"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 unsupported precision or a caveat under ``--strict``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field as dc_field
from typing import Any

from . import __version__, verify
from .errors import InvalidInputError, PrecisionError, ResourceLimitError
from .experiment import convergence_table, empirical_probability
from .field import NumberField, field_from_text
from .ideals import enumerate_ideals, ideal_count
from .product import ProbabilityQuery, ProbabilityResult, probability
from .splitting import primes_below_or_equal, split_prime

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3

DEFAULT_TABLE_FIELDS = ["Q", "Q(sqrt2)", "Q(sqrt-1)", "Q(zeta3)", "Q(zeta5)"]
GUARD_DIGITS = 2


class CaveatError(Exception):
    pass


@dataclass
class OutputRecord:
    command: str
    field: str = ""
    params: dict[str, Any] = dc_field(default_factory=dict)
    results: dict[str, Any] = dc_field(default_factory=dict)
    error_bounds: dict[str, Any] = dc_field(default_factory=dict)
    caveats: dict[str, Any] = dc_field(default_factory=dict)
    wall_time: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> OutputRecord:
        return cls(**json.loads(text))

    def flat(self) -> dict[str, Any]:
        row = {"command": self.command, "field": self.field}
        for group in ("params", "results", "error_bounds", "caveats"):
            for key, value in getattr(self, group).items():
                row[key] = value
        row["wall_time"] = self.wall_time
        return row

    def to_csv(self) -> str:
        row = self.flat()
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\r\n")
        writer.writeheader()
        writer.writerow(row)
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.field}".rstrip(": ")]
        for key, value in self.flat().items():
            if key not in ("command", "field"):
                lines.append(f"  {key} = {value}")
        return "\n".join(lines)


def shown_digits(result: ProbabilityResult) -> int:
    """Decimal places backed by the error bound, plus guard digits."""
    if result.digits is not None:
        return result.digits + GUARD_DIGITS
    bound = result.value_error_bound
    if not math.isfinite(bound) or bound <= 0:
        return GUARD_DIGITS
    return min(max(int(math.floor(-math.log10(2 * bound))), 0) + GUARD_DIGITS, 15)


def _emit(record: OutputRecord, fmt: str, out) -> None:
    if fmt == "json":
        out.write(record.to_json() + "\n")
    elif fmt == "csv":
        out.write(record.to_csv())
    else:
        out.write(record.to_text() + "\n")


def _field(text: str) -> NumberField:
    return field_from_text(text)


def _handle_caveat(caveat: bool, args, label: str) -> None:
    if not caveat:
        return
    message = f"splitting for {label} is unverified at primes where the defining polynomial is not squarefree"
    if args.strict:
        raise CaveatError(message)
    print(f"warning: {message}", file=sys.stderr)


# ---------------------------------------------------------------------------
# commands


def cmd_prob(args, out) -> int:
    start = time.perf_counter()
    field = _field(args.field)
    query = ProbabilityQuery(field, args.n, args.k, args.r, args.digits, args.primes)
    result = probability(query, threads=args.threads)
    _handle_caveat(result.caveat, args, field.label)
    places = shown_digits(result)
    record = OutputRecord(
        command="prob",
        field=field.label,
        params={"n": args.n, "k": args.k, "r": args.r, "t": result.digits, "N": result.N},
        results={
            "value": round(result.value, places),
            "display": f"{result.value:.{places - GUARD_DIGITS if result.digits else places}f}",
            "p_N": result.p_N,
        },
        error_bounds={"log_bound": result.error_bound, "value_bound": result.value_error_bound},
        caveats={"caveat": result.caveat},
        wall_time=time.perf_counter() - start,
    )
    _emit(record, args.format, out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    start = time.perf_counter()
    fields = [_field(text) for text in (args.fields or DEFAULT_TABLE_FIELDS)]
    ns = args.ns or [2, 3, 4]
    grid, bounds, caveat = [], [], False
    for n in ns:
        row, row_bounds = [], []
        for field in fields:
            result = probability(ProbabilityQuery(field, n, args.k, args.r, args.digits), threads=args.threads)
            caveat |= result.caveat
            row.append(round(result.value, args.digits))
            row_bounds.append(result.error_bound)
        grid.append(row)
        bounds.append(row_bounds)
    _handle_caveat(caveat, args, ", ".join(f.label for f in fields))
    labels = [f.label for f in fields]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(["n", *labels])
        for n, row in zip(ns, grid):
            writer.writerow([n, *(f"{v:.{args.digits}f}" for v in row)])
        out.write(buf.getvalue())
        return EXIT_OK
    record = OutputRecord(
        command="table",
        field=",".join(labels),
        params={"n": ns, "k": args.k, "r": args.r, "t": args.digits},
        results={"labels": labels, "grid": grid},
        error_bounds={"log_bound": bounds},
        caveats={"caveat": caveat},
        wall_time=time.perf_counter() - start,
    )
    if args.format == "json":
        _emit(record, "json", out)
        return EXIT_OK
    width = max(len(label) for label in labels) + 2
    out.write("n".ljust(4) + "".join(label.rjust(width) for label in labels) + "\n")
    for n, row in zip(ns, grid):
        out.write(str(n).ljust(4) + "".join(f"{v:.{args.digits}f}".rjust(width) for v in row) + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    checks = verify.run(args.suite)
    for check in checks:
        out.write(check.line() + "\n")
    failed = sum(not c.passed for c in checks)
    out.write(f"{len(checks) - failed}/{len(checks)} checks passed\n")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_split(args, out) -> int:
    field = _field(args.field)
    if args.p is not None:
        primes = [args.p]
        if len(primes_below_or_equal(args.p)) == 0 or int(primes_below_or_equal(args.p)[-1]) != args.p:
            raise InvalidInputError(f"{args.p} is not prime")
    else:
        lo, hi = args.range
        primes = [p for p in primes_below_or_equal(hi).tolist() if p >= lo]
    rows = []
    caveat = False
    for p in primes:
        for cls in split_prime(field, p):
            rows.append({"p": p, "f": cls.f, "e": cls.e, "g": cls.g, "certain": cls.certain})
            caveat |= not cls.certain
    _handle_caveat(caveat, args, field.label)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["p", "f", "e", "g", "certain"], lineterminator="\r\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
    elif args.format == "json":
        record = OutputRecord("split", field.label, {"primes": primes}, {"classes": rows}, {}, {"caveat": caveat})
        _emit(record, "json", out)
    else:
        for row in rows:
            flag = "" if row["certain"] else "  (unverified)"
            out.write(f"p={row['p']} f={row['f']} e={row['e']} g={row['g']}{flag}\n")
    return EXIT_OK


def cmd_estimate(args, out) -> int:
    if args.samples < 1:
        raise InvalidInputError(f"samples must be >= 1, got {args.samples}")
    start = time.perf_counter()
    field = _field(args.field)
    universe = enumerate_ideals(field, args.x)
    est = empirical_probability(universe, args.n, args.k, args.r, args.samples, args.seed, threads=args.threads)
    record = OutputRecord(
        command="estimate",
        field=field.label,
        params={"n": args.n, "k": args.k, "r": args.r, "x": universe.x, "samples": args.samples, "seed": args.seed},
        results={"mean": est.mean, "hits": est.hits, "H": len(universe)},
        error_bounds={"standard_error": est.standard_error},
        caveats={"caveat": not field.exact_splitting},
        wall_time=time.perf_counter() - start,
    )
    _emit(record, args.format, out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    start = time.perf_counter()
    field = _field(args.field)
    x = _parse_bound(args.x)
    if args.count_only:
        H = ideal_count(field, x)
        listing = None
    else:
        universe = enumerate_ideals(field, x)
        H = len(universe)
        listing = [f"{a.norm}\t{a}" for a in universe.ideals]
        if args.dump:
            with open(args.dump, "w", encoding="ascii") as fh:
                universe.dump(fh)
    results: dict[str, Any] = {"H": H, "ratio": H / x}
    if listing is not None and args.format != "csv":
        results["ideals"] = listing
    record = OutputRecord(
        command="enumerate",
        field=field.label,
        params={"x": x, "count_only": args.count_only},
        results=results,
        wall_time=time.perf_counter() - start,
    )
    if args.format == "text":
        out.write(f"H({x}) = {H}  H/x = {H / x:.6f}\n")
        for line in listing or []:
            out.write(line + "\n")
    else:
        _emit(record, args.format, out)
    return EXIT_OK


def cmd_converge(args, out) -> int:
    field = _field(args.field)
    xs = [_parse_bound(v) for v in args.xs]
    rows = convergence_table(
        field, args.n, args.k, args.r, xs, samples=args.samples, seed=args.seed, threads=args.threads
    )
    names = ["x", "H", "ratio", "method", "P", "gap", "standard_error"]
    if args.format == "json":
        record = OutputRecord(
            "converge", field.label, {"n": args.n, "k": args.k, "r": args.r, "seed": args.seed},
            {"rows": [asdict(row) for row in rows]},
        )
        _emit(record, "json", out)
        return EXIT_OK
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n", delimiter="," if args.format == "csv" else "\t")
    writer.writerow(names)
    for row in rows:
        writer.writerow([getattr(row, name) for name in names])
    out.write(buf.getvalue())
    return EXIT_OK


def _parse_bound(text) -> int:
    """Accept plain integers and ``a^b`` powers such as ``10^5``."""
    if isinstance(text, int):
        return text
    text = str(text).strip()
    try:
        if "^" in text:
            base, exp = text.split("^", 1)
            return int(base) ** int(exp)
        return int(text)
    except ValueError:
        raise InvalidInputError(f"bad norm bound {text!r}") from None


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringcoprime",
        description="Probabilities that n random ideals of a number ring are k-wise relatively r-prime.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--strict", action="store_true", help="treat splitting caveats as errors")

    nkr = argparse.ArgumentParser(add_help=False)
    nkr.add_argument("-n", type=int, default=2)
    nkr.add_argument("-k", type=int, default=2)
    nkr.add_argument("-r", type=int, default=1)

    p = sub.add_parser("prob", parents=[common, nkr], help="P_{n,k,r} with a truncation bound")
    p.add_argument("-f", "--field", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("-t", "--digits", type=int, default=4)
    group.add_argument("--primes", type=int, default=None, help="use exactly this many rational primes")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("table", parents=[common], help="grid of pairwise probabilities")
    p.add_argument("-f", "--field", dest="fields", action="append")
    p.add_argument("-n", dest="ns", type=int, action="append")
    p.add_argument("-k", type=int, default=2)
    p.add_argument("-r", type=int, default=1)
    p.add_argument("-t", "--digits", type=int, default=4)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run oracle property suites")
    p.add_argument("suite", choices=[*verify.SUITES, "all"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("split", parents=[common], help="prime splitting data")
    p.add_argument("-f", "--field", required=True)
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("-p", type=int)
    where.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("estimate", parents=[common, nkr], help="Monte-Carlo estimate over ideals of norm <= x")
    p.add_argument("-f", "--field", required=True)
    p.add_argument("-x", type=_parse_bound, required=True)
    p.add_argument("--samples", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("enumerate", parents=[common], help="ideals of norm <= x and H(x)")
    p.add_argument("-f", "--field", required=True)
    p.add_argument("-x", required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--dump", metavar="FILE", help="write the universe as norm<TAB>p^f#idx:e,... lines")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("converge", parents=[common, nkr], help="finite-x ratios against the limit")
    p.add_argument("-f", "--field", required=True)
    p.add_argument("-x", dest="xs", action="append", required=True)
    p.add_argument("--samples", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_converge)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args, out)
    except (PrecisionError, CaveatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (InvalidInputError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
