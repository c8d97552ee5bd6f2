"""Command-line front end.

    boolquery measure MAJ(3) --p 1/2 --all
    boolquery reproduce
    boolquery invariants --level fast --seed 1
    boolquery partial-info AND(2) --p 3/4 --critical
    boolquery perc --m 3 --p 0.5 --quantity crossing --samples 100000 --seed 7

Output is one JSON document per run (or CSV with ``--format csv``). Exact
values are strings "num/den". Exit codes: 0 success, 1 usage error,
2 regression failure, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from .core import CapExceeded, ProductMeasure, format_rational
from .funcspec import SpecError, build, parse_spec, spec_arity
from .measures import ALL_MEASURES, DETERMINISTIC, Caps, measure_all

SCHEMA = "boolquery.report/1"
EXIT_OK, EXIT_USAGE, EXIT_REGRESSION, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational: {text!r}") from exc


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def make_report(command: str, **sections) -> dict:
    rep = {"schema": SCHEMA, "command": command}
    rep.update(sections)
    return _jsonable(rep)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=False) + "\n"
    # CSV: flatten to key,value rows, or emit the table if there is one
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    table = report.get("rows")
    if table:
        keys = list(table[0].keys())
        w.writerow(keys)
        for row in table:
            w.writerow([row.get(k, "") for k in keys])
        return buf.getvalue()
    w.writerow(["key", "value"])

    def walk(prefix, v):
        if isinstance(v, dict):
            for k, x in v.items():
                walk(f"{prefix}.{k}" if prefix else k, x)
        elif isinstance(v, list):
            for i, x in enumerate(v):
                walk(f"{prefix}[{i}]", x)
        else:
            w.writerow([prefix, v])

    walk("", report)
    return buf.getvalue()


# ---------------------------------------------------------------- commands


def run_measure(spec: str, p=None, measures=None, caps: Caps = Caps()) -> tuple[dict, int]:
    t0 = time.perf_counter()
    try:
        node = parse_spec(spec)
        n = spec_arity(node)
    except (SpecError, OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    names = list(measures) if measures else list(ALL_MEASURES)
    bad = [x for x in names if x not in ALL_MEASURES]
    if bad:
        raise UsageError(f"unknown measure(s) {bad}; choose from {', '.join(ALL_MEASURES)}")
    needs_p = any(x not in DETERMINISTIC for x in names)
    if needs_p and p is None:
        raise UsageError("--p is required for distributional measures")
    m = ProductMeasure(parse_rational(p)) if p is not None else None
    try:
        f = build(node, caps.arity)
    except CapExceeded as exc:
        rep = make_report("measure", function=spec, arity=n, error=str(exc))
        return rep, EXIT_CAP
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = measure_all(f, names, m, caps)
    rep = make_report(
        "measure",
        function=spec,
        arity=n,
        p=m.p if m else None,
        values=res.values,
        skipped=res.skipped,
        timing_s=round(time.perf_counter() - t0, 4),
        engine={"caps": vars(caps)},
    )
    return rep, EXIT_CAP if res.skipped else EXIT_OK


def run_partial_info(spec: str, p, kappas=None, critical=False, caps: Caps = Caps()) -> tuple[dict, int]:
    from .partialinfo import kappa_critical, pk_solve

    t0 = time.perf_counter()
    try:
        f = build(parse_spec(spec), caps.arity)
    except CapExceeded as exc:
        return make_report("partial-info", function=spec, error=str(exc)), EXIT_CAP
    except (SpecError, OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    p = parse_rational(p)
    if not Fraction(1, 2) < p < 1:
        raise UsageError("p must lie strictly between 1/2 and 1")
    out = {"function": spec, "arity": f.arity, "p": p}
    try:
        if kappas:
            sweep = []
            for k in kappas:
                k = parse_rational(k)
                if not 0 <= k <= 1:
                    raise UsageError("kappa must lie in [0, 1]")
                r = pk_solve(f, p, k, cap=caps.partial)
                sweep.append({"kappa": k, "cost": r.value, "alpha": r.line.alpha, "beta": r.line.beta})
            out["sweep"] = sweep
        if critical:
            kc = kappa_critical(f, p, cap=caps.partial)
            r = pk_solve(f, p, kc, cap=caps.partial)
            out["kappa_critical"] = kc
            out["line_at_critical"] = {"alpha": r.line.alpha, "beta": r.line.beta}
    except CapExceeded as exc:
        return make_report("partial-info", function=spec, error=str(exc)), EXIT_CAP
    if not kappas and not critical:
        raise UsageError("give --kappa values and/or --critical")
    out["timing_s"] = round(time.perf_counter() - t0, 4)
    return make_report("partial-info", **out), EXIT_OK


def run_percolation(
    m: int, p, quantity: str, samples: int = 10000, seed: int = 0, shards: int = 1, exact: bool | None = None,
    caps: Caps = Caps(),
) -> tuple[dict, int]:
    from .percolation import QUANTITIES, grid_graph, mc_estimate

    t0 = time.perf_counter()
    if m < 1:
        raise UsageError("m must be at least 1")
    g = grid_graph(m)
    if exact is None:
        exact = m == 1
    if exact:
        return _perc_exact(g, m, p, quantity, caps, t0)
    if quantity not in QUANTITIES:
        raise UsageError(f"unknown quantity {quantity!r}; choose from {QUANTITIES}")
    pf = float(parse_rational(p))
    est = mc_estimate(g, pf, quantity, samples, seed, shards)
    return (
        make_report(
            "perc",
            m=m,
            p=pf,
            quantity=quantity,
            mode="mc",
            estimate={"mean": est.mean, "stderr": est.stderr, "min": est.minimum, "max": est.maximum},
            samples=est.samples,
            engine={"seed": seed, "shards": shards, "generator": "numpy Philox, SeedSequence([seed, block])"},
            timing_s=round(time.perf_counter() - t0, 4),
        ),
        EXIT_OK,
    )


_EXACT_QUANTITIES = {"crossing": None, "sensitivity": "s", "s": "s", "witness": "w", "w": "w", "b": "b", "a": "a", "sc": "sc", "l": "l"}


def _perc_exact(g, m, p, quantity, caps, t0):
    from .core import output_probability
    from .measures import measure
    from .percolation import perc_function

    if quantity not in _EXACT_QUANTITIES:
        raise UsageError(f"quantity {quantity!r} has no exact mode")
    try:
        f = perc_function(g, cap=caps.arity)
        pm = ProductMeasure(parse_rational(p))
        if quantity == "crossing":
            value = output_probability(f, pm)
        else:
            value = measure(f, _EXACT_QUANTITIES[quantity], pm, caps)
    except CapExceeded as exc:
        return make_report("perc", m=m, error=str(exc)), EXIT_CAP
    return (
        make_report("perc", m=m, p=pm.p, quantity=quantity, mode="exact", value=value, edges=g.m,
                    timing_s=round(time.perf_counter() - t0, 4)),
        EXIT_OK,
    )


def run_reproduce(only=None) -> tuple[dict, int]:
    from .regress import run_table

    t0 = time.perf_counter()
    rows = run_table(only)
    fails = [r for r in rows if r["status"] != "PASS"]
    rep = make_report(
        "reproduce",
        rows=rows,
        summary={"total": len(rows), "pass": len(rows) - len(fails), "fail": len(fails)},
        timing_s=round(time.perf_counter() - t0, 2),
    )
    return rep, EXIT_REGRESSION if fails else EXIT_OK


def run_invariants(seed: int = 1, level: str = "fast") -> tuple[dict, int]:
    from .invariants import run_suites

    t0 = time.perf_counter()
    rows = run_suites(seed, level)
    fails = [r for r in rows if r["status"] == "FAIL"]
    rep = make_report(
        "invariants",
        seed=seed,
        level=level,
        rows=rows,
        summary={
            "total": len(rows),
            "pass": sum(r["status"] == "PASS" for r in rows),
            "fail": len(fails),
            "finding": sum(r["status"] == "FINDING" for r in rows),
            "info": sum(r["status"] == "INFO" for r in rows),
        },
        timing_s=round(time.perf_counter() - t0, 2),
    )
    return rep, EXIT_REGRESSION if fails else EXIT_OK


# ---------------------------------------------------------------- argparse


def _load_config(path):
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="boolquery", description="Exact query-complexity measures of Boolean functions.")
    ap.add_argument("--config", help="JSON file with defaults: {'p': '1/2', 'caps': {...}, 'format': 'json'}")
    ap.add_argument("--format", choices=("json", "csv"))
    ap.add_argument("--cap", type=int, help="arity cap for building functions")
    ap.add_argument("--output", "-o", help="write the report here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", help="compute measures of one function")
    m.add_argument("spec")
    m.add_argument("--p")
    m.add_argument("--measures", help="comma list from " + ",".join(ALL_MEASURES))
    m.add_argument("--all", action="store_true")

    sub.add_parser("reproduce", help="run the regression table").add_argument("--only", help="comma list of row ids")

    inv = sub.add_parser("invariants", help="run the invariant suites")
    inv.add_argument("--seed", type=int, default=1)
    inv.add_argument("--level", choices=("fast", "full"), default="fast")

    pi = sub.add_parser("partial-info", help="(p, kappa) partial-information model")
    pi.add_argument("spec")
    pi.add_argument("--p")
    pi.add_argument("--kappa", action="append", help="repeatable, or a comma list")
    pi.add_argument("--critical", action="store_true")

    pc = sub.add_parser("perc", help="square-crossing percolation")
    pc.add_argument("--m", type=int, required=True)
    pc.add_argument("--p", default="1/2")
    pc.add_argument("--quantity", default="crossing")
    pc.add_argument("--samples", type=int, default=10000)
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--shards", type=int, default=1)
    mode = pc.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_true", default=None)
    mode.add_argument("--mc", dest="exact", action="store_false")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = _load_config(args.config)
        caps = Caps().override(**cfg.get("caps", {})).override(arity=args.cap)
        fmt = args.format or cfg.get("format", "json")
        p = getattr(args, "p", None) or cfg.get("p")
        if args.command == "measure":
            names = ALL_MEASURES if args.all or not args.measures else [x.strip() for x in args.measures.split(",")]
            rep, code = run_measure(args.spec, p, names, caps)
        elif args.command == "reproduce":
            rep, code = run_reproduce(args.only.split(",") if args.only else None)
        elif args.command == "invariants":
            rep, code = run_invariants(args.seed, args.level)
        elif args.command == "partial-info":
            if p is None:
                raise UsageError("--p is required")
            kappas = [k for item in (args.kappa or []) for k in item.split(",") if k.strip()]
            rep, code = run_partial_info(args.spec, p, kappas, args.critical, caps)
        else:
            rep, code = run_percolation(args.m, p, args.quantity, args.samples, args.seed, args.shards, args.exact, caps)
    except (UsageError, OSError, json.JSONDecodeError, TypeError) as exc:
        print(f"boolquery: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(rep, fmt)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
