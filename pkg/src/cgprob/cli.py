"""Command-line interface: coefficient tables and verification reports.

Exit codes: 0 success, 1 a verification failed, 2 bad arguments, 3 an
inconclusive result (a sigma search that hit its bound).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction

from .checks import SUITES, run_suite
from .counts import CharParity
from .genfun import finite_prob, finite_prob_exact, limit_prob
from .partitions import GroupKind, LambdaSpec
from .stabilization import sigma_with_one, sigma_without_one

log = logging.getLogger("cgprob")

EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 1, 2, 3
HALF_GROUPS = (GroupKind.OPLUS, GroupKind.OMINUS)


class UsageError(Exception):
    pass


def worker_count() -> int:
    raw = os.environ.get("CGPROB_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"CGPROB_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"CGPROB_THREADS must be a positive integer, got {raw!r}")
    return n


def _parse_spec(text: str) -> LambdaSpec:
    try:
        return LambdaSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_group(text: str) -> GroupKind:
    try:
        return GroupKind.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parity(group: GroupKind, char: str | None) -> CharParity | None:
    if group in (GroupKind.GL, GroupKind.U):
        return None
    if char is None:
        raise UsageError(f"--char even|odd is required for {group.value}")
    return CharParity.EVEN if char == "even" else CharParity.ODD


def series_record(prob, provenance: str = "symbolic") -> dict:
    """Lossless record: coefficients are decimal strings over a fixed denominator."""
    denom = 2 if prob.group in HALF_GROUPS else 1
    coeffs = []
    for c in prob.coefficients:
        scaled = c * denom
        if scaled.denominator != 1:
            raise AssertionError(f"coefficient {c} is not a multiple of 1/{denom}")
        coeffs.append(str(scaled.numerator))
    rec = {
        "group": prob.group.value,
        "lambda": str(prob.spec),
        "dimension": "infinity" if prob.dimension is None else prob.dimension,
        "order": prob.order,
        "coefficients": coeffs,
        "denominator": str(denom),
        "provenance": provenance,
    }
    if prob.parity is not None:
        rec["char"] = prob.parity.name.lower()
    return rec


def coefficients_of(rec: dict) -> list[Fraction]:
    """Exact coefficients back from a record."""
    denom = int(rec["denominator"])
    return [Fraction(int(c), denom) for c in rec["coefficients"]]


CSV_FIELDS = ["group", "lambda", "dimension", "order", "char", "denominator", "provenance", "coefficients"]


def _csv_rows(records: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CSV_FIELDS)
    for r in records:
        coeffs = r.get("coefficients", [r.get("value", "")])
        w.writerow([r["group"], r["lambda"], r["dimension"], r.get("order", ""), r.get("char", ""),
                    r.get("denominator", ""), r["provenance"], " ".join(coeffs)])
    return buf.getvalue()


def _plain(records: list[dict]) -> str:
    lines = []
    for r in records:
        head = f"{r['group']:<3} {r['lambda']:<12} d={r['dimension']}"
        if "value" in r:
            lines.append(f"{head}  q={r['q']}: {r['value']}")
            continue
        denom = int(r["denominator"])
        coeffs = r["coefficients"] if denom == 1 else [str(Fraction(int(c), denom)) for c in r["coefficients"]]
        width = max(len(c) for c in coeffs)
        lines.append(f"{head}  " + " ".join(c.rjust(width) for c in coeffs))
    return "\n".join(lines) + "\n"


def emit(records: list[dict], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        body = records[0] if len(records) == 1 else records
        out.write(json.dumps(body, ensure_ascii=False) + "\n")
    elif fmt == "csv":
        out.write(_csv_rows(records))
    else:
        out.write(_plain(records))


def cmd_limit(args) -> int:
    group = _parse_group(args.group)
    spec = _parse_spec(args.type)
    prob = limit_prob(group, spec, args.order, _parity(group, args.char))
    if prob.note:
        log.info(prob.note)
    emit([series_record(prob)], args.format)
    return 0


def cmd_finite(args) -> int:
    group = _parse_group(args.group)
    spec = _parse_spec(args.type)
    if args.dim < 1:
        raise UsageError("--dim must be >= 1")
    if args.at_q is not None:
        value = finite_prob_exact(group, args.dim, spec, args.at_q)
        rec = {"group": group.value, "lambda": str(spec), "dimension": args.dim, "q": args.at_q,
               "value": str(value), "provenance": "exact-q"}
        emit([rec], args.format)
        return 0
    prob = finite_prob(group, args.dim, spec, args.order, _parity(group, args.char))
    emit([series_record(prob)], args.format)
    return 0


def cmd_verify(args) -> int:
    workers = worker_count()
    failed = 0
    for res in run_suite(args.suite, args.order, args.dmax, workers):
        status = "PASS" if res.ok else "FAIL"
        print(f"{status} {res.name}" + (f": {res.detail}" if res.detail else ""), flush=True)
        failed += not res.ok
    return EXIT_FAIL if failed else 0


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def cmd_table(args) -> int:
    groups = [_parse_group(g) for g in _split(args.groups)]
    types = [_parse_spec(t) for t in (args.types.split("|") if "|" in args.types else _split(args.types))]
    if not groups or not types:
        raise UsageError("--groups and --types must each name at least one entry")
    records = []
    for spec in types:
        for group in groups:
            records.append(series_record(limit_prob(group, spec, args.order, _parity(group, args.char))))
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(_csv_rows(records))
    else:
        sys.stdout.write(_csv_rows(records))
    return 0


def cmd_sigma(args) -> int:
    spec = _parse_spec(args.type)
    sig = sigma_with_one(spec) if spec.contains_one else sigma_without_one(spec, args.size_bound)
    rec = {"lambda": str(spec), "sigma": str(sig.value), "exact": sig.exact, "lower_bound": str(sig.lower_bound)}
    print(json.dumps(rec))
    return 0 if sig.exact else EXIT_INCONCLUSIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cgprob", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, order_default=10):
        sp.add_argument("--group", required=True, help="gl, u, sp, o+ or o-")
        sp.add_argument("--type", required=True, help="separable, cyclic, semisimple, all, or set:[1];[2,1]")
        sp.add_argument("--order", type=int, default=order_default, help="last power of 1/q kept")
        sp.add_argument("--char", choices=("even", "odd"), help="characteristic parity (sp and o+-)")
        sp.add_argument("--format", choices=("json", "csv", "plain"), default="json")

    lim = sub.add_parser("limit", help="limiting probability as d grows")
    common(lim)
    lim.set_defaults(func=cmd_limit)

    fin = sub.add_parser("finite", help="probability in a fixed dimension")
    common(fin)
    fin.add_argument("--dim", type=int, required=True, help="dimension (half-dimension for sp and o+-)")
    fin.add_argument("--at-q", type=int, dest="at_q", help="evaluate exactly at this prime power")
    fin.set_defaults(func=cmd_finite)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("--suite", choices=SUITES + ("all",), default="all")
    ver.add_argument("--order", type=int, default=12)
    ver.add_argument("--dmax", type=int, default=6)
    ver.set_defaults(func=cmd_verify)

    tab = sub.add_parser("table", help="CSV table of limits over groups x types")
    tab.add_argument("--groups", default="gl,u")
    tab.add_argument("--types", default="separable,cyclic,semisimple",
                     help="comma-separated; use | as separator when a set: spec contains commas")
    tab.add_argument("--order", type=int, default=9)
    tab.add_argument("--char", choices=("even", "odd"))
    tab.add_argument("--out", help="write CSV here instead of stdout")
    tab.set_defaults(func=cmd_table)

    sig = sub.add_parser("sigma", help="stabilization constant sigma for a Λ-spec")
    sig.add_argument("--type", required=True)
    sig.add_argument("--size-bound", type=int, default=12, dest="size_bound")
    sig.set_defaults(func=cmd_sigma)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "order", 0) is not None and getattr(args, "order", 0) < 0:
        parser.error("--order must be >= 0")
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"cgprob: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
