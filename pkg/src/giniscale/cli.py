"""Command-line interface: ``giniscale <command> [flags]``.

Every command writes a ``# config: {...}`` line holding its resolved
settings, followed by CSV (or JSON for ``--format json``).  Floats are
printed with 9 significant digits.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 accuracy or
verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import closedform, curves, influence, montecarlo, verify
from .distributions import DomainError, parse_distribution
from .estimators import MeanDevScaling, ScaleKind, estimate, mean_dev_n
from .oracle import AccuracyError

__all__ = ["main", "build_parser", "format_float"]

EXIT_USAGE, EXIT_DOMAIN, EXIT_ACCURACY = 2, 3, 4

# flags whose values may begin with '-' (ranges like -4:4:401)
_RANGE_FLAGS = ("--range", "--lambda", "--log10eps")

ESTIMATE_CHOICES = ("sd", "gini", "meandev", "meandev_plain", "iqr")


class FlagError(DomainError):
    """A flag value is outside its domain; the message names the flag."""

    def __init__(self, flag, message):
        super().__init__(f"{flag}: {message}")


def format_float(v):
    if v is None:
        return ""
    v = float(v)
    if math.isnan(v):
        return "nan"
    return f"{v:.9g}"


def _json_float(v):
    if v is None or not math.isfinite(v):
        return None
    return float(f"{v:.9g}")


# ---------------------------------------------------------------------------
# flag parsing helpers
# ---------------------------------------------------------------------------

def _dist(text, flag="--dist"):
    try:
        return parse_distribution(text)
    except DomainError as exc:
        raise FlagError(flag, str(exc)) from None


def _range(text, flag, allow_single=False):
    parts = text.split(":")
    if len(parts) != 3:
        raise FlagError(flag, f"expected a:b:num, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        num = int(parts[2])
    except ValueError:
        raise FlagError(flag, f"expected a:b:num with numeric parts, got {text!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise FlagError(flag, "range ends must be finite")
    if allow_single and num == 1:
        if lo != hi:
            raise FlagError(flag, "num = 1 needs a == b")
        return lo, hi, num
    if num < 2 or lo >= hi:
        raise FlagError(flag, f"need a < b and num >= 2, got {text!r}")
    return lo, hi, num


def _axis(spec):
    lo, hi, num = spec
    return np.array([lo]) if num == 1 else np.linspace(lo, hi, num)


def _list(text, flag, choices):
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise FlagError(flag, "empty list")
    for s in items:
        if s not in choices:
            raise FlagError(flag, f"unknown value {s!r}; choose from {', '.join(choices)}")
    return items


def _kind(text, flag, allowed):
    if text not in allowed:
        raise FlagError(flag, f"unknown value {text!r}; choose from {', '.join(allowed)}")
    return ScaleKind(text)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _render(config, header, rows, fmt):
    out = io.StringIO()
    meta = json.dumps(config, sort_keys=True, separators=(",", ":"))
    if fmt == "json":
        recs = [{h: (_json_float(v) if isinstance(v, float) else v) for h, v in zip(header, r)}
                for r in rows]
        json.dump({"config": config, "rows": recs}, out, sort_keys=True, indent=1)
        out.write("\n")
        return out.getvalue()
    out.write(f"# config: {meta}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([format_float(v) if isinstance(v, float) or v is None else v for v in r])
    return out.getvalue()


def _emit(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _read_column(path):
    values = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not row[0].strip() or row[0].lstrip().startswith("#"):
                continue
            if len(row) > 1 and any(c.strip() for c in row[1:]):
                raise FlagError("--input", f"line {lineno}: expected one column")
            try:
                values.append(float(row[0]))
            except ValueError:
                if values or lineno > 1:
                    raise FlagError("--input", f"line {lineno}: not a number: {row[0]!r}") from None
                # a header line
    if not values:
        raise FlagError("--input", "no data")
    x = np.array(values)
    if not np.all(np.isfinite(x)):
        raise FlagError("--input", "non-finite value in data")
    return x


def cmd_estimate(args):
    names = _list(args.estimators, "--estimators", ESTIMATE_CHOICES)
    x = _read_column(args.input)
    rows = []
    for name in names:
        try:
            if name == "meandev_plain":
                v = mean_dev_n(x, MeanDevScaling.PLAIN)
            else:
                v = estimate(ScaleKind(name), x)
        except DomainError as exc:
            raise FlagError("--estimators", f"{name}: {exc}") from None
        rows.append((name, float(v)))
    cfg = {"command": "estimate", "input": os.path.basename(args.input), "n": int(x.size),
           "estimators": names}
    return _render(cfg, ("estimator", "value"), rows, args.format)


SUMMARY_COLUMNS = ("dist", "sigma", "g", "d", "J", "iqr", "asv_sd", "asv_g", "asv_d", "asv_iqr",
                   "are_g", "are_d", "are_iqr")


def cmd_summarize(args):
    dists = [_dist(t) for t in args.dist]
    rows = []
    for d in dists:
        s = closedform.summarize(d).as_dict()
        rows.append(tuple(s[c] for c in SUMMARY_COLUMNS))
    cfg = {"command": "summarize", "dist": [d.label() for d in dists]}
    return _render(cfg, SUMMARY_COLUMNS, rows, args.format)


def cmd_are(args):
    d = _dist(args.dist)
    kind = _kind(args.kind, "--kind", ("gini", "meandev", "iqr", "sd"))
    cfg = {"command": "are", "dist": d.label(), "kind": kind.value}
    return _render(cfg, ("dist", "kind", "are"), [(d.label(), kind.value, closedform.are(kind, d))],
                   args.format)


def cmd_lomnicki(args):
    d = _dist(args.dist)
    if args.n < 2:
        raise FlagError("--n", f"need n >= 2, got {args.n}")
    v = closedform.lomnicki_var(d, args.n)
    cfg = {"command": "lomnicki", "dist": d.label(), "n": args.n}
    return _render(cfg, ("dist", "n", "variance", "n_variance"),
                   [(d.label(), args.n, v, args.n * v)], args.format)


def cmd_influence(args):
    d = _dist(args.dist)
    kinds = _list(args.kinds, "--kinds", ("sd", "meandev", "gini"))
    lo, hi, num = _range(args.range, "--range")
    cols = influence.influence_table(d, kinds, lo, hi, num)
    header = tuple(cols)
    rows = [tuple(float(cols[h][i]) for h in header) for i in range(num)]
    cfg = {"command": "influence", "dist": d.label(), "kinds": kinds, "range": [lo, hi, num]}
    return _render(cfg, header, rows, args.format)


def cmd_surface(args):
    kind = _kind(args.kind, "--kind", ("gini", "meandev", "iqr"))
    lam = _range(args.lambda_, "--lambda")
    if lam[0] < 1:
        raise FlagError("--lambda", "lambda must be >= 1")
    le = _range(args.log10eps, "--log10eps")
    if le[1] > 0:
        raise FlagError("--log10eps", "log10 epsilon must be <= 0")
    grid = curves.are_surface(kind, lam, le)
    rows = [(float(a), float(b), float(grid.values[i, j]))
            for i, a in enumerate(grid.lambda_axis) for j, b in enumerate(grid.log10_eps_axis)]
    cfg = {"command": "surface", "kind": kind.value, "lambda": list(lam), "log10eps": list(le)}
    return _render(cfg, ("lambda", "log10_epsilon", "are"), rows, args.format)


def cmd_iso(args):
    try:
        pair = curves.Pair(args.pair)
    except ValueError:
        raise FlagError("--pair", f"unknown pair {args.pair!r}; choose from "
                        + ", ".join(p.value for p in curves.Pair)) from None
    lam = _range(args.lambda_, "--lambda", allow_single=True)
    if lam[0] <= 1:
        raise FlagError("--lambda", "lambda must be > 1")
    axis = _axis(lam)
    points, _ = curves.iso_curve(pair, axis)
    found = {p.lam: p.epsilon for p in points}
    # lambdas without a crossing keep their row with epsilon = nan
    rows = [(pair.value, float(a), found.get(float(a), math.nan)) for a in axis]
    cfg = {"command": "iso", "pair": pair.value, "lambda": list(lam)}
    return _render(cfg, ("pair", "lambda", "epsilon"), rows, args.format)


def cmd_simulate(args):
    try:
        study = montecarlo.StudyConfig.from_json(args.config)
    except OSError as exc:
        raise FlagError("--config", str(exc)) from None
    except (json.JSONDecodeError, TypeError, DomainError) as exc:
        raise FlagError("--config", str(exc)) from None
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.replications is not None:
        overrides["replications"] = args.replications
    if overrides:
        study = montecarlo.StudyConfig.from_dict({**study.to_dict(), **overrides})
    cells = montecarlo.run_study(study, workers=args.threads)
    if args.format == "json":
        return json.dumps(montecarlo.report_json(study, cells), sort_keys=True, indent=1) + "\n"
    cfg = {"command": "simulate", **study.to_dict()}
    return _render(cfg, montecarlo.CSV_HEADER, list(montecarlo.report_rows(cells)), "csv")


def cmd_verify(args):
    sections = None
    if args.sections:
        sections = _list(args.sections, "--sections", tuple(verify.SECTIONS))
    checks = list(verify.run_battery(sections))
    failed = [c for c in checks if not c.passed]
    cfg = {"command": "verify", "sections": sections or list(verify.SECTIONS)}
    rows = [(c.section, c.name, c.value, c.reference, c.error, c.tol,
             "pass" if c.passed else "fail") for c in checks]
    text = _render(cfg, ("section", "check", "value", "reference", "error", "tol", "status"),
                   rows, args.format)
    if failed:
        for c in failed:
            print(c.line(), file=sys.stderr)
        print(f"{len(failed)} of {len(checks)} checks failed", file=sys.stderr)
    return text, (EXIT_ACCURACY if failed else 0)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="giniscale",
                                description="Scale estimators: efficiencies, influence and simulation.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--output", "-o", default=None, help="output path (default stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        return sp

    sp = add("estimate", cmd_estimate, "scale estimates from a one-column CSV")
    sp.add_argument("--input", required=True)
    sp.add_argument("--estimators", default="sd,gini,meandev,iqr")

    sp = add("summarize", cmd_summarize, "population values, ASVs and AREs")
    sp.add_argument("--dist", action="append", required=True,
                    help="distribution, e.g. normal, t:16, nm:3,0.008 (repeatable)")

    sp = add("are", cmd_are, "efficiency relative to the standard deviation")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--kind", required=True)

    sp = add("lomnicki", cmd_lomnicki, "exact finite-sample variance of the mean difference")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("influence", cmd_influence, "influence functions on a grid")
    sp.add_argument("--dist", default="normal")
    sp.add_argument("--kinds", default="sd,meandev,gini")
    sp.add_argument("--range", default="-4:4:401", help="a:b:num")

    sp = add("surface", cmd_surface, "efficiency surface over the normal-mixture plane")
    sp.add_argument("--kind", required=True)
    sp.add_argument("--lambda", dest="lambda_", default="1:6:121", help="a:b:num")
    sp.add_argument("--log10eps", default="-5:-0.3:121", help="a:b:num")

    sp = add("iso", cmd_iso, "equal-efficiency curve in the normal-mixture plane")
    sp.add_argument("--pair", required=True, help="gini-sd, meandev-sd or gini-meandev")
    sp.add_argument("--lambda", dest="lambda_", default="1.5:6:46", help="a:b:num")

    sp = add("simulate", cmd_simulate, "finite-sample simulation study")
    sp.add_argument("--config", required=True, help="study JSON")
    sp.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sp.add_argument("--seed", type=int, default=None, help="override the config seed")
    sp.add_argument("--replications", type=int, default=None, help="override the config count")

    sp = add("verify", cmd_verify, "closed-form versus quadrature battery")
    sp.add_argument("--sections", default=None,
                    help="comma list of: " + ", ".join(verify.SECTIONS))
    return p


def _join_range_values(argv):
    # argparse takes "-4:4:401" for an option; glue such values to their flag
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _RANGE_FLAGS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_join_range_values(argv))
    if getattr(args, "threads", 1) is not None and getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    try:
        result = args.func(args)
    except AccuracyError as exc:
        print(f"giniscale: accuracy failure: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except DomainError as exc:
        print(f"giniscale: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text, code = result if isinstance(result, tuple) else (result, 0)
    _emit(text, args.output)
    return code


def run():
    sys.exit(main())
