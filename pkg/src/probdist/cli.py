"""Command-line frontend.

Subcommands: ``list``, ``describe``, ``eval``, ``sample``, ``plotdata``,
``qq``.  Distributions are given as expressions, e.g.::

    probdist eval "truncate(Normal(), lower=-1, upper=1)" cdf --at='-2:2'
    probdist describe "Arcsine()" --params
    probdist plotdata "decorate(Binomial(prob=0.1, size=6), ExoticStatistics)" --funs all

Tables are CSV by default (RFC 4180) with numbers at 7 significant digits;
``--json`` switches to JSON rows and ``--digits`` overrides the precision.
Exit codes: 0 success, 2 user/parse/domain error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys

import numpy as np

from . import numeric as _num
from .catalog import list_catalog
from .compose import COMPOSITORS, VectorDistribution
from .core import EvaluationMatrix
from .errors import DistributionError, NumericError
from .expr import build_distribution, read_numbers
from .numeric import DECORATOR_KINDS, NumericOptions

_DECORATOR_BLURBS = {
    "CoreStatistics": "numeric moments and generating functions via generalized expectation",
    "ExoticStatistics": "survival/hazard functions, p-norms, anti-derivatives",
    "FunctionImputation": "numeric imputation of missing pdf/cdf/quantile/rand kernels",
}

_EVAL_FUNS = ("pdf", "cdf", "quantile", "survival", "hazard", "cumhazard")
_PLOT_FUNS = ("pdf", "cdf", "quantile", "survival", "hazard", "cumhazard")


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _common_flags(p: argparse.ArgumentParser):
    p.add_argument("--json", action="store_true", help="emit JSON rows instead of CSV")
    p.add_argument("--digits", type=int, default=7, metavar="N",
                   help="significant digits for CSV numbers (default 7)")
    p.add_argument("--quad-tol", type=float, default=None, metavar="TOL",
                   help="relative tolerance for quadrature")
    p.add_argument("--root-tol", type=float, default=None, metavar="TOL",
                   help="tolerance for root finding")
    p.add_argument("--config", default=None, metavar="FILE",
                   help="key=value file with numeric options")
    p.add_argument("--seed", type=int, default=None, metavar="N",
                   help="seed for anything random")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probdist",
        description="Construct, compose, query, and evaluate probability distributions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="list distributions, compositors, or decorators")
    p.add_argument("kind", choices=("distributions", "compositors", "decorators"))
    _common_flags(p)

    p = sub.add_parser("describe", help="summarize a distribution expression")
    p.add_argument("expr")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--params", action="store_true", help="parameter table only")
    g.add_argument("--traits", action="store_true", help="traits only")
    g.add_argument("--properties", action="store_true", help="properties only")
    g.add_argument("--stats", action="store_true", help="quick statistics only")
    _common_flags(p)

    p = sub.add_parser("eval", help="evaluate a distribution function on points")
    p.add_argument("expr")
    p.add_argument("fun", choices=_EVAL_FUNS)
    p.add_argument("--at", action="append", required=True, metavar="PTS",
                   help="points: numbers, a:b integer ranges, @file; "
                        "repeat for paired vector evaluation (use --at='-1,0,1' "
                        "for values starting with a dash)")
    p.add_argument("--upper-tail", action="store_true",
                   help="upper tail for cdf/quantile")
    p.add_argument("--log", action="store_true", help="log-scale results (or inputs for quantile)")
    _common_flags(p)

    p = sub.add_parser("sample", help="draw pseudo-random samples")
    p.add_argument("expr")
    p.add_argument("-n", type=int, default=1, help="number of draws")
    _common_flags(p)

    p = sub.add_parser("plotdata", help="emit long-format (fun, x, y) plot data")
    p.add_argument("expr")
    p.add_argument("--funs", default="all",
                   help="comma-separated subset of pdf,cdf,quantile,survival,"
                        "hazard,cumhazard or 'all' (default)")
    p.add_argument("--points", type=int, default=129,
                   help="grid size for continuous supports (default 129)")
    _common_flags(p)

    p = sub.add_parser("qq", help="paired quantile table of two distributions")
    p.add_argument("expr_a")
    p.add_argument("expr_b")
    p.add_argument("--points", type=int, default=99, help="probability grid size")
    _common_flags(p)

    return parser


def _options_from(args) -> NumericOptions | None:
    fields = {}
    if args.config:
        aliases = {"quad_tol": "quad_rel_tol", "root_tol": "root_tol"}
        valid = set(NumericOptions.__dataclass_fields__)
        with open(args.config, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#")[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"{args.config}:{lineno}: expected key=value")
                key, _, value = line.partition("=")
                key = aliases.get(key.strip(), key.strip())
                if key not in valid:
                    raise ValueError(f"{args.config}:{lineno}: unknown option {key!r}")
                cast = int if key in ("quad_max_subdiv", "discrete_cutoff") else float
                fields[key] = cast(value.strip())
    if args.quad_tol is not None:
        fields["quad_rel_tol"] = args.quad_tol
    if args.root_tol is not None:
        fields["root_tol"] = args.root_tol
    if not fields:
        return None
    return NumericOptions(**{**_num.DEFAULT_OPTIONS.__dict__, **fields})


def parse_points(text: str) -> list[float]:
    """Point list syntax: numbers, ``a:b`` integer ranges, ``@file`` refs,
    separated by commas or whitespace."""
    out: list[float] = []
    for token in (t for t in re.split(r"[\s,]+", text.strip()) if t):
        if token.startswith("@"):
            values = read_numbers(token[1:])
            if values and isinstance(values[0], list):
                raise ValueError(f"{token[1:]}: evaluation points must be one per line")
            out.extend(values)
        elif ":" in token:
            a_txt, _, b_txt = token.partition(":")
            a, b = int(a_txt), int(b_txt)
            step = 1 if b >= a else -1
            out.extend(float(v) for v in range(a, b + step, step))
        else:
            out.append(float(token))
    return out


# ---------------------------------------------------------------------------
# table emission
# ---------------------------------------------------------------------------

def _fmt_cell(v, digits: int) -> str:
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, f".{digits}g")
    return str(v)


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def emit_table(headers, rows, args):
    if args.json:
        payload = [{h: _json_safe(v) for h, v in zip(headers, row)} for row in rows]
        print(json.dumps(payload, indent=2))
        return
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow([_fmt_cell(v, args.digits) for v in row])


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_list(args) -> int:
    if args.kind == "distributions":
        headers = ["shortName", "name", "valueSupport", "variateForm", "parameters", "defaults"]
        rows = [[e.short_name, e.name, e.value_support, e.variate_form,
                 " ".join(e.parameter_ids), e.defaults] for e in list_catalog()]
    elif args.kind == "compositors":
        headers = ["name", "description"]
        rows = [[name, blurb] for name, blurb in COMPOSITORS]
    else:
        headers = ["name", "description"]
        rows = [[k, _DECORATOR_BLURBS[k]] for k in DECORATOR_KINDS]
    emit_table(headers, rows, args)
    return 0


def cmd_describe(args) -> int:
    dist = build_distribution(args.expr, _options_from(args))
    info = dist.describe()
    if args.params:
        headers = ["id", "value", "support", "description"]
        rows = [[r["id"], _value_cell(r["value"]), r["support"], r["description"]]
                for r in info["parameters"]]
        emit_table(headers, rows, args)
        return 0
    if args.traits:
        emit_table(["trait", "value"], sorted(info["traits"].items()), args)
        return 0
    if args.properties:
        rows = [[k, "" if v is None else v] for k, v in info["properties"].items()]
        emit_table(["property", "value"], rows, args)
        return 0
    if args.stats:
        rows = [[k, v] for k, v in info["statistics"].items()]
        emit_table(["statistic", "value"], rows, args)
        return 0
    if args.json:
        print(json.dumps(info, indent=2, default=_value_cell))
        return 0
    print(dist.summary())
    return 0


def _value_cell(v):
    if isinstance(v, (list, tuple, np.ndarray)):
        return " ".join(format(float(x), "g") for x in v)
    if isinstance(v, float) and v == int(v) and math.isfinite(v):
        return int(v)
    return v


def cmd_eval(args) -> int:
    dist = build_distribution(args.expr, _options_from(args))
    vectors = [parse_points(t) for t in args.at]
    fun = args.fun
    kwargs = {}
    if fun in ("cdf", "quantile"):
        kwargs = {"lower_tail": not args.upper_tail, "log": args.log}
    elif fun == "pdf" or fun in ("survival", "hazard", "cumhazard"):
        kwargs = {"log": args.log}
    method = {
        "pdf": dist.pdf, "cdf": dist.cdf, "quantile": dist.quantile,
        "survival": dist.survival, "hazard": dist.hazard,
        "cumhazard": dist.cumulative_hazard,
    }[fun]
    result = method(*vectors, **kwargs)

    if isinstance(result, EvaluationMatrix):
        if len(vectors) == 1:
            headers = ["x"] + result.columns
            rows = [[x] + list(row) for x, row in zip(vectors[0], result.values.tolist())]
        else:
            headers = list(result.columns)
            rows = result.values.tolist()
    else:
        values = np.atleast_1d(np.asarray(result, float)).tolist()
        if len(vectors) == 1:
            headers = ["x", dist.short_name]
            rows = [[x, v] for x, v in zip(vectors[0], values)]
        else:
            headers = [dist.short_name]
            rows = [[v] for v in values]
    emit_table(headers, rows, args)
    return 0


def cmd_sample(args) -> int:
    dist = build_distribution(args.expr, _options_from(args))
    draws = np.asarray(dist.rand(args.n, seed=args.seed))
    if draws.ndim == 2:
        headers = getattr(dist, "_labels", None) or \
            [f"{dist.short_name}{i + 1}" for i in range(draws.shape[1])]
        rows = draws.tolist()
    else:
        headers = [dist.short_name]
        rows = [[v] for v in draws.tolist()]
    emit_table(headers, rows, args)
    return 0


def _plot_grid(dist, points: int) -> np.ndarray:
    if dist.traits.value_support == "discrete":
        return _num.support_points(dist)
    lo = float(dist.quantile([0.001])[0])
    hi = float(dist.quantile([0.999])[0])
    return np.linspace(lo, hi, points)


def cmd_plotdata(args) -> int:
    dist = build_distribution(args.expr, _options_from(args))
    if isinstance(dist, VectorDistribution) and type(dist) is VectorDistribution:
        raise DistributionError("plotdata needs a scalar-valued distribution expression")
    funs = _PLOT_FUNS if args.funs == "all" else \
        tuple(f.strip() for f in args.funs.split(",") if f.strip())
    for f in funs:
        if f not in _PLOT_FUNS:
            raise ValueError(f"unknown plot function {f!r}; expected {_PLOT_FUNS}")
    rows = []
    for f in funs:
        if f == "quantile":
            ps = np.arange(1, 100) / 100.0
            ys = np.asarray(dist.quantile(ps), float)
            rows.extend(["quantile", p, y] for p, y in zip(ps.tolist(), ys.tolist()))
            continue
        xs = _plot_grid(dist, args.points)
        method = {
            "pdf": dist.pdf, "cdf": dist.cdf, "survival": dist.survival,
            "hazard": dist.hazard, "cumhazard": dist.cumulative_hazard,
        }[f]
        ys = np.asarray(method(xs), float)
        rows.extend([f, x, y] for x, y in zip(xs.tolist(), ys.tolist()))
    emit_table(["fun", "x", "y"], rows, args)
    return 0


def cmd_qq(args) -> int:
    options = _options_from(args)
    da = build_distribution(args.expr_a, options)
    db = build_distribution(args.expr_b, options)
    for d in (da, db):
        if d.traits.variate_form != "univariate":
            raise DistributionError("qq needs two univariate distributions")
    n = args.points
    ps = np.arange(1, n + 1) / (n + 1.0)
    qa = np.asarray(da.quantile(ps), float)
    qb = np.asarray(db.quantile(ps), float)
    la, lb = da.short_name, db.short_name
    if la == lb:
        la, lb = f"{la}1", f"{lb}2"
    rows = [[p, a, b] for p, a, b in zip(ps.tolist(), qa.tolist(), qb.tolist())]
    emit_table(["p", la, lb], rows, args)
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

_COMMANDS = {
    "list": cmd_list,
    "describe": cmd_describe,
    "eval": cmd_eval,
    "sample": cmd_sample,
    "plotdata": cmd_plotdata,
    "qq": cmd_qq,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except (DistributionError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
