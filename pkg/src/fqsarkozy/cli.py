"""Command-line interface.

Every subcommand writes its report to stdout (JSON unless a table format is
requested) and diagnostics to stderr.  Exit codes: 0 success, 1 bad input,
2 a proven inequality failed on a concrete instance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import bounds, pipeline
from .clpcore import build_mu, build_P
from .config import Config
from .errors import ParseError, SarkozyError, TheoremViolation, UnknownSubcommand, ValidationError
from .extremal import bound_comparison, forbidden_set, max_free_set
from .field import FieldSpec, field_create, field_of_order, prime_power
from .parsing import parse_polynomial
from .phimap import build_phi, preimage_zero, validate_F
from .polynomial import UniPoly
from .rankcert import certify
from .selftest import run_selftest

log = logging.getLogger("fqsarkozy")

SUBCOMMANDS = ("bound", "table", "phi", "construct", "certify", "search", "compare", "prove", "sweep", "selftest")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _field(args, config: Config, q: int | None = None) -> FieldSpec:
    q = args.q if q is None else q
    pe = prime_power(q)
    if pe is None:
        return field_of_order(q)  # raises NonPrimeCharacteristic
    modulus = getattr(args, "modulus", None)
    if modulus:
        coeffs = [int(c) for c in modulus.split(",")]
        return field_create(pe[0], pe[1], modulus=coeffs, max_size=config.max_field)
    return field_create(pe[0], pe[1], max_size=config.max_field)


def _poly(args, spec: FieldSpec) -> UniPoly:
    return parse_polynomial(args.F, spec)


def _read_set(path: str) -> list:
    """A JSON list of point encodings or coordinate lists."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.pos) from exc
    if isinstance(data, dict):
        data = data.get("A", data.get("points"))
    if not isinstance(data, list):
        raise ValidationError(f"{path} must hold a JSON list of points")
    return [tuple(v) if isinstance(v, list) else v for v in data]


def _rows_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v for k, v in row.items()})
    return buf.getvalue()


def _pretty(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for key, value in obj.items():
            if isinstance(value, (dict, list)) and value and not all(isinstance(v, (int, float)) for v in value):
                lines.append(f"{pad}{key}:")
                lines.append(_pretty(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_pretty(v, indent) if isinstance(v, dict) else f"{pad}- {v}" for v in obj)
    return f"{pad}{obj}"


# subcommands; each returns a JSON-able object, or a list of rows for tables


def cmd_bound(args, config):
    report = bounds.minimize(args.q, args.k, args.d or config.d_mode)
    out = report.to_json()
    if args.n is not None:
        value = bounds.bound_value(report, args.n)
        out["n"] = args.n
        out["bound"] = value.value
        out["witness"] = value.witness
    return out


def cmd_table(args, config):
    return bounds.table(args.qmax, args.kmax, args.d or config.d_mode)


def cmd_phi(args, config):
    spec = _field(args, config)
    phi = build_phi(spec, _poly(args, spec), args.n)
    out = phi.to_json()
    out["preimage_zero"] = [list(v) for v in preimage_zero(phi)]
    return out


def _construct(args, config):
    spec = _field(args, config)
    F = _poly(args, spec)
    k = validate_F(F)
    phi = build_phi(spec, F, args.n)
    mu = build_mu(spec, preimage_zero(phi))
    d = bounds.choose_d(spec.q, k, args.d or "exact")
    return build_P(phi, mu, d=d, config=config)


def cmd_construct(args, config):
    return _construct(args, config).to_json()


def cmd_certify(args, config):
    ind = _construct(args, config)
    points = range(ind.phi.spec.q**args.n) if args.set == "all" else _read_set(args.set)
    return certify(ind.P, points, config=config).to_json()


def cmd_search(args, config):
    if args.setting == "field":
        if args.p is None:
            raise ValidationError("--setting field needs --p")
        spec = field_of_order(args.p)
        if spec.e != 1:
            raise ValidationError(f"--p must be prime, got {args.p}")
    else:
        if args.q is None:
            raise ValidationError("--setting poly needs --q")
        spec = _field(args, config)
    fs = forbidden_set(args.setting, spec, _poly(args, spec), args.n, config=config)
    result = max_free_set(fs, limit=args.limit or config.max_vertices)
    out = result.to_json(timing=not args.no_timing)
    out["setting"] = fs.setting
    out["ambient_size"] = fs.ambient_size
    return out


def cmd_compare(args, config):
    rows = []
    d_mode = args.d or config.d_mode
    limit = args.limit or config.max_vertices
    for q in range(2, args.qmax + 1):
        if prime_power(q) is None:
            continue
        spec = field_of_order(q)
        for k in range(1, args.kmax + 1):
            report = bounds.minimize(q, k, d_mode)
            F = UniPoly(spec, [0] * k + [1])
            for n in range(1, args.nmax + 1):
                if q**n > limit:
                    log.info("skipping q=%d k=%d n=%d: %d vertices over limit %d", q, k, n, q**n, limit)
                    continue
                row = bound_comparison(forbidden_set("poly_ring", spec, F, n, config=config), report)
                rows.append(row._asdict())
    return rows


def cmd_prove(args, config):
    spec = _field(args, config)
    A = _read_set(args.set) if args.set else "search"
    return pipeline.run_pipeline(spec, _poly(args, spec), args.n, A, config=config).to_json()


def cmd_sweep(args, config):
    try:
        cfg = json.loads(Path(args.config).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{args.config}: {exc.msg}", exc.pos) from exc
    result = pipeline.sweep(instances=pipeline.expand_config(cfg), workers=args.workers, config=config)
    for err in result.errors:
        print(f"sweep: {err['q']} {err['F']} n={err['n']}: {err['error']}: {err['message']}", file=sys.stderr)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "transcripts.json").write_text(result.dumps() + "\n")
        (out / "summary.csv").write_text(result.summary_csv())
    if args.output == "csv":
        return result.rows
    return json.loads(result.dumps())


def cmd_selftest(args, config):
    report = run_selftest(config)
    if not report["passed"]:
        failed = [name for name, r in report["suites"].items() if not r["passed"]]
        print(json.dumps(report, indent=2, sort_keys=True))
        raise TheoremViolation(f"selftest suites failed: {failed}")
    return report


HANDLERS = {name: globals()[f"cmd_{name}"] for name in SUBCOMMANDS}
TABULAR = {"table", "compare"}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fqsarkozy", description=__doc__.splitlines()[0])
    parser.add_argument("--config", dest="config_file", help="JSON config file (default: $FQSARKOZY_CONFIG)")
    parser.add_argument("-v", "--verbose", action="store_true")
    common = _Parser(add_help=False)
    common.add_argument("--output", choices=("json", "csv", "pretty"), help="report format")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    def field_args(p, required=True):
        p.add_argument("--q", type=int, required=required, help="field order, a prime power")
        p.add_argument("--modulus", help="comma-separated coefficients of a monic irreducible, low degree first")

    def instance_args(p):
        field_args(p)
        p.add_argument("--F", required=True, help='polynomial, e.g. "b^2+b" or "0,1,1"')
        p.add_argument("--n", type=int, required=True)

    p = add("bound", "constants t and c of the bound")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--d", choices=("paper", "exact"))

    p = add("table", "t and c over a range of (q, k)")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--d", choices=("paper", "exact"))

    p = add("phi", "the substitution map and its zero fibre")
    instance_args(p)

    p = add("construct", "mu and the indicator polynomial P")
    instance_args(p)
    p.add_argument("--d", choices=("exact", "paper"))

    p = add("certify", "rank certificate of P(u - v) on a point set")
    instance_args(p)
    p.add_argument("--d", choices=("exact", "paper"))
    p.add_argument("--set", required=True, help='JSON file with a list of points, or "all"')

    p = add("search", "exact maximum F-difference-free set")
    p.add_argument("--setting", choices=("poly", "field"), default="poly")
    field_args(p, required=False)
    p.add_argument("--p", type=int, help="prime for the field setting")
    p.add_argument("--F", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int, help="maximum number of vertices")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed time (byte-stable output)")

    p = add("compare", "exact gamma against c t^n for F = b^k")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--d", choices=("paper", "exact"))
    p.add_argument("--limit", type=int, help="skip instances with more vertices than this")

    p = add("prove", "full proof transcript for one instance")
    instance_args(p)
    p.add_argument("--set", help="JSON file with the set A (default: an extremal one)")

    p = add("sweep", "prove over many instances")
    p.add_argument("--config", required=True, help="sweep config JSON")
    p.add_argument("--out", help="directory for transcripts.json and summary.csv")
    p.add_argument("--workers", type=int, default=1, help="parallel processes (0 = one per CPU)")

    add("selftest", "run the built-in invariant suites")
    return parser


def emit(result, fmt: str, tabular: bool, stream=None):
    stream = stream or sys.stdout
    if fmt == "csv" or (tabular and fmt != "json"):
        rows = result if isinstance(result, list) else [result]
        stream.write(_rows_csv(rows))
    elif fmt == "pretty":
        stream.write(_pretty(result) + "\n")
    else:
        stream.write(json.dumps(result, indent=2, sort_keys=True) + "\n")


def dispatch(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if argv and not argv[0].startswith("-") and argv[0] not in SUBCOMMANDS:
            raise UnknownSubcommand(f"unknown subcommand {argv[0]!r}; choose from {', '.join(SUBCOMMANDS)}")
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
        if args.command is None:
            parser.print_help(sys.stderr)
            return 1
        config = Config.load(args.config_file)
        if args.command == "sweep" and args.workers == 0:
            args.workers = None
        fmt = args.output or ("csv" if args.command in TABULAR else config.output)
        args.output = fmt
        result = HANDLERS[args.command](args, config)
        emit(result, fmt, args.command in TABULAR)
        return 0
    except TheoremViolation as exc:
        print(f"THEOREM VIOLATION ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 1
    except (SarkozyError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
