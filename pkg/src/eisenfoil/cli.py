"""Command-line front end.

Every subcommand prints one JSON document (default) or CSV to stdout.
Exit status is 0 on success, 1 for a bad parameter and 2 for a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from .counting import CSV_COLUMNS, degree_table, enumerate_parameters, growth_report
from .eisenstein import INFINITY, EisInt, ParseError, format_eisrat, parse_eisrat
from .lattice import intersection_number, intersection_oracle, intersection_swapped, zeta_K, zeta_K2_reference
from .pencil import PencilParam, Variant, degree_record

MAX_SAFE_INT = 2 ** 53
SEED_ENV = "EISENFOIL_SEED"


class DomainError(ValueError):
    """A well-formed request that names an invalid parameter."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _scalar(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x) if abs(x) > MAX_SAFE_INT else x
    if isinstance(x, Fraction):
        return _scalar(x.numerator) if x.denominator == 1 else str(x)
    return x


def to_json(obj) -> str:
    """Deterministic JSON: keys in insertion order, big ints as strings,
    floats with 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(to_json(v) for v in obj) + "]"
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return format(obj, ".17g")
    return json.dumps(_scalar(obj))


def to_csv(rows: list[dict], columns=None) -> str:
    if not rows:
        return ""
    columns = list(columns or rows[0].keys())
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        cells = []
        for k in columns:
            v = row.get(k)
            if isinstance(v, float):
                v = format(v, ".17g")
            elif isinstance(v, bool):
                v = "true" if v else "false"
            elif v is None:
                v = ""
            cells.append(v)
        writer.writerow(cells)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# argument parsing helpers
# ---------------------------------------------------------------------------

def _literal(text: str, offset: int = 0):
    try:
        return parse_eisrat(text)
    except ParseError as e:
        raise DomainError(f"cannot parse {text!r}: {e}", offset + e.pos) from None
    except ZeroDivisionError:
        raise DomainError(f"zero denominator in {text!r}") from None


def _integer(text: str, offset: int = 0) -> EisInt:
    x = _literal(text, offset)
    if x is INFINITY or not x.is_integral():
        raise DomainError(f"{text!r} is not an Eisenstein integer", offset)
    return x.num


def parse_pair(text: str) -> tuple[EisInt, EisInt]:
    """"a+b*w,c+d*w" -> (a + b w, c + d w)."""
    if text.count(",") != 1:
        pos = len(text.encode()) if "," not in text else text.index(",", text.index(",") + 1)
        raise DomainError(f"expected two comma-separated elements in {text!r}", pos)
    left, right = text.split(",")
    x = _integer(left)
    y = _integer(right, len(left.encode()) + 1)
    if not (x or y):
        raise DomainError("the pair (0, 0) does not define a subtorus")
    return x, y


def _variants(choice: str) -> list[Variant]:
    return list(Variant) if choice == "both" else [Variant(choice)]


def _seed(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise DomainError(f"{SEED_ENV}={env!r} is not an integer") from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be >= 1")
    return n


# ---------------------------------------------------------------------------
# subcommands; each returns (json object, csv rows, csv columns or None)
# ---------------------------------------------------------------------------

def cmd_degree(args):
    t = _literal(args.t)
    rec = degree_record(PencilParam.from_t(t), check_intersections=False)
    out = {"t": format_eisrat(t)}
    for v in _variants(args.variant):
        out[f"d_{v.value}"] = rec.degree(v)
    out["degenerate"] = rec.param.degenerate
    return out, [out], None


def cmd_intersect(args):
    A, B = parse_pair(args.a), parse_pair(args.b)
    out = {"eq1": intersection_number(A, B), "oracle": intersection_oracle(A, B)}
    if args.oracle:
        out["swapped"] = intersection_swapped(A, B)
        out["agree"] = out["eq1"] == out["oracle"]
    return out, [out], None


def cmd_count(args):
    report = enumerate_parameters(args.max_degree, Variant(args.variant))
    out = report.as_dict()
    out.pop("elapsed")          # wall time would break byte-identical reruns
    return out, out["parameters"], CSV_COLUMNS


def cmd_growth(args):
    report = growth_report(args.max, Variant(args.variant), points=args.points, zeta_terms=args.zeta_terms)
    out = report.as_dict()
    return out, out["rows"], None


def cmd_zeta(args):
    if args.s <= 1:
        raise DomainError("the series converges only for s > 1")
    value = zeta_K(args.s, args.terms)
    out = {"s": args.s, "terms": args.terms, "zeta_K": value}
    if args.s == 2:
        ref = zeta_K2_reference()
        out["reference"] = ref
        out["difference"] = value - ref
    return out, [out], None


def cmd_verify(args):
    from .verifier.extactic import Verdict, extactic_certifier
    from .verifier.foliation import Foliation

    t = _literal(args.t)
    if not 1 <= args.max_d <= 12:
        raise DomainError("--max-d must lie in 1..12")
    seed = _seed(args.seed)
    F = Foliation.from_parameter(t)
    rec = degree_record(PencilParam.from_t(t), check_intersections=False)
    results, minimal = [], None
    for d in range(args.step, args.max_d + 1, args.step):
        res = extactic_certifier(F, d, trials=args.trials, primes=args.primes, seed=seed)
        results.append(res.as_dict())
        if res.verdict is Verdict.CONSISTENT_WITH_D:
            minimal = d
            break
    out = {
        "t": format_eisrat(t),
        "d_paper": rec.d_paper,
        "d_corrected": rec.d_corrected,
        "degenerate": rec.param.degenerate,
        "seed": seed,
        "minimal_degree": minimal,
        "results": results,
    }
    rows = [{k: r[k] for k in ("t", "d", "verdict", "seed")} for r in results]
    return out, rows, None


def cmd_table(args):
    if args.max_norm < 1:
        raise DomainError("--max-norm must be >= 1")
    rows = [r.as_dict() for r in degree_table(args.max_norm)]
    return {"max_norm": args.max_norm, "records": rows}, rows, CSV_COLUMNS + ("degenerate",)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="eisenfoil", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degree", parents=[common], help="degree of the first integral at t")
    p.add_argument("--t", required=True)
    p.add_argument("--variant", choices=("paper", "corrected", "both"), default="both")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("intersect", parents=[common], help="intersection number of two subtori")
    p.add_argument("--a", required=True, help='pair "a+b*w,c+d*w"')
    p.add_argument("--b", required=True, help='pair "a+b*w,c+d*w"')
    p.add_argument("--oracle", action="store_true", help="also report the swapped index order and agreement")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("count", parents=[common], help="all parameters with degree <= N")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--variant", choices=("paper", "corrected"), default="corrected")
    p.add_argument("--emit", choices=("json", "csv"), help="alias for --format")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("growth", parents=[common], help="counting function on a log grid")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--variant", choices=("paper", "corrected"), default="corrected")
    p.add_argument("--points", type=_positive, default=12)
    p.add_argument("--zeta-terms", type=_positive, default=1_000_000)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("zeta", parents=[common], help="partial sum of the Dedekind zeta function")
    p.add_argument("--s", type=float, default=2.0)
    p.add_argument("--terms", type=int, required=True)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("verify", parents=[common], help="extactic certification of the minimal degree")
    p.add_argument("--t", required=True)
    p.add_argument("--max-d", type=int, required=True)
    p.add_argument("--step", type=_positive, default=3)
    p.add_argument("--trials", type=_positive, default=3)
    p.add_argument("--primes", type=_positive, default=2)
    p.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV}, then 0")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="degree records for small norms")
    p.add_argument("--max-norm", type=int, required=True)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    fmt = getattr(args, "emit", None) or args.format
    try:
        obj, rows, columns = args.func(args)
    except DomainError as e:
        err = {"error": str(e)}
        if e.offset is not None:
            err["offset"] = e.offset
        print(to_json(err), file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError, ArithmeticError) as e:
        print(to_json({"error": str(e)}), file=sys.stderr)
        return 1
    if fmt == "csv":
        sys.stdout.write(to_csv(rows, columns))
    else:
        sys.stdout.write(to_json(obj) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
