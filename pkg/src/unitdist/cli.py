"""Command-line interface: ``unitdist <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 data or parameter error,
3 non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .dataio import (
    SCHEMA_VERSION,
    DataSource,
    ReportEntry,
    builtin_names,
    export_report,
    load,
    report_record,
)
from .errors import DataError, DomainError, UnitDistError
from .families import ALIASES, FAMILY_NAMES, PARAM_NAMES, DistributionSpec, canonical_family, cdf, pdf, sf
from .gof import descriptive, gof_report
from .mle import FitConfig, fit
from .sampler import SampleRequest, sample

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NOCONV = 0, 1, 2, 3
SEED_ENV = "UNITDIST_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- helpers


def _float_list(text):
    try:
        return tuple(float(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise UsageError(f"could not parse parameter list {text!r}") from None


def _family(name):
    try:
        return canonical_family(name)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _spec(args):
    family = _family(args.dist)
    if args.params is None:
        raise UsageError(f"--params is required ({family} takes {', '.join(PARAM_NAMES[family])})")
    return DistributionSpec(family, _float_list(args.params))


def _source(args):
    chosen = [s for s in (args.builtin, args.data, args.values) if s is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --builtin, --data or --values")
    if args.builtin is not None:
        if args.builtin not in builtin_names():
            raise UsageError(
                f"unknown builtin dataset {args.builtin!r}; available: {', '.join(builtin_names())}"
            )
        return DataSource("builtin-name", args.builtin)
    if args.data is not None:
        return DataSource("file-path", args.data)
    return DataSource("inline-list", args.values)


def _load(args):
    src = _source(args)
    try:
        return load(src)
    except OSError as exc:
        raise DataError(f"cannot read {src.locator}: {exc.strerror or exc}") from None


def _fit_config(args):
    kwargs = {}
    if args.init is not None:
        kwargs["init"] = _float_list(args.init)
    for name in ("max_iter", "x_tol", "f_tol", "multi_start", "restart_seed"):
        value = getattr(args, name)
        if value is not None:
            kwargs[name] = value
    return FitConfig(**kwargs)


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None or not env.strip():
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def _emit(args, payload):
    data = payload if isinstance(payload, bytes) else payload.encode("utf-8")
    out = getattr(args, "out", None)
    if out and out != "-":
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _dump_json(doc):
    return json.dumps(doc, indent=2) + "\n"


def _fit_warnings(res):
    notes = []
    if res.identified:
        combo = ", ".join(f"{k} = {v:.4f}" for k, v in res.identified.items())
        notes.append(
            f"{res.family} is not identifiable: the likelihood depends only on {combo}; "
            "covariance omitted"
        )
    elif res.identifiability_flag:
        notes.append("observed information is singular or ill-conditioned; covariance omitted")
    if not res.converged:
        notes.append(res.message or "optimizer did not converge")
    return notes


# ---------------------------------------------------------------- commands


def cmd_describe(args):
    data = _load(args)
    stats = descriptive(data).as_dict()
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": "describe", "dataset": data.name,
               "stats": stats}
        _emit(args, _dump_json(doc))
        return EXIT_OK
    labels = [("n", "n"), ("min", "Min"), ("max", "Max"), ("mean", "Mean"),
              ("std_dev", "Std. dev."), ("skewness", "Skewness"), ("kurtosis", "Kurtosis"),
              ("q25", "25th pct"), ("median", "Median"), ("q75", "75th pct")]
    lines = [f"dataset: {data.name}"]
    for key, label in labels:
        v = stats[key]
        lines.append(f"{label:<10} {v}" if key == "n" else f"{label:<10} {v:.4f}")
    if data.metadata.get("note"):
        lines.append(f"note: {data.metadata['note']}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _score(res, data, paper_k, k):
    try:
        return gof_report(res, data, k=k, paper_k=paper_k, require_converged=False), None
    except UnitDistError as exc:
        return None, str(exc)


def cmd_fit(args):
    family = _family(args.dist)
    data = _load(args)
    res = fit(family, data, _fit_config(args))
    g, err = _score(res, data, args.paper_k, args.k)
    entry = ReportEntry(family, res, g, err)
    notes = _fit_warnings(res) + ([f"goodness of fit unavailable: {err}"] if err else [])
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": "fit", "dataset": data.name,
               "report": report_record(entry), "warnings": notes}
        _emit(args, _dump_json(doc))
    else:
        lines = [f"dataset: {data.name} (n = {data.n})",
                 f"converged: {'yes' if res.converged else 'no'} ({res.n_evals} evaluations)"]
        body = export_report([entry], "text").decode("utf-8")
        if res.std_err is not None:
            se = ", ".join(f"{n} {v:.4g}" for n, v in zip(res.spec.param_names, res.std_err))
            body += f"std. errors: {se}\n"
        for k, v in res.identified.items():
            body += f"identified {k}: {v:.6f}\n"
        body += "".join(f"warning: {n}\n" for n in notes)
        _emit(args, "\n".join(lines) + "\n" + body)
    return EXIT_OK if res.converged else EXIT_NOCONV


def cmd_compare(args):
    if not args.dists:
        raise UsageError("--dists is required")
    families = [_family(name) for name in args.dists.split(",") if name.strip()]
    data = _load(args)
    config = _fit_config(args)
    entries = []
    for family in families:
        try:
            res = fit(family, data, config)
        except UnitDistError as exc:
            entries.append(ReportEntry(family, error=str(exc)))
            continue
        g, err = _score(res, data, args.paper_k, None)
        if not res.converged:
            err = "; ".join(filter(None, [err, "not converged: " + (res.message or "optimizer")]))
        entries.append(ReportEntry(family, res, g, err))
    if args.sort_aic:
        entries.sort(key=lambda e: e.gof.aic if e.gof is not None else math.inf)
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": "compare", "dataset": data.name,
               "paper_k": bool(args.paper_k), "reports": [report_record(e) for e in entries]}
        _emit(args, _dump_json(doc))
    else:
        _emit(args, export_report(entries, args.format))
    ok = any(e.fit is not None and e.fit.converged for e in entries)
    return EXIT_OK if ok else EXIT_NOCONV


def cmd_sample(args):
    spec = _spec(args)
    if args.n < 1:
        raise UsageError("--n must be a positive integer")
    seed = _seed(args)
    values = sample(SampleRequest(spec, args.n, seed))
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": "sample", "family": spec.family,
               "params": spec.as_dict(), "seed": seed, "values": values}
        _emit(args, _dump_json(doc))
    else:
        _emit(args, "".join(f"{v!r}\n" for v in values))
    return EXIT_OK


def curve_table(spec, grid=1000):
    """Arrays ``(y, pdf, cdf, hazard)`` on the interior grid ``k / (grid + 1)``."""
    y = np.arange(1, grid + 1) / (grid + 1.0)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        dens = np.asarray(pdf(spec, y))
        surv = np.asarray(sf(spec, y))
        haz = np.where(surv > 0.0, dens / np.where(surv > 0.0, surv, 1.0), np.inf)
    return y, dens, np.asarray(cdf(spec, y)), haz


def cmd_curve(args):
    spec = _spec(args)
    if args.grid < 1:
        raise UsageError("--grid must be a positive integer")
    y, dens, dist, haz = curve_table(spec, args.grid)
    if args.format == "json":
        def col(a):
            return [float(v) if math.isfinite(v) else None for v in a]

        doc = {"schema_version": SCHEMA_VERSION, "command": "curve", "family": spec.family,
               "params": spec.as_dict(), "y": col(y), "pdf": col(dens), "cdf": col(dist),
               "hazard": col(haz)}
        _emit(args, _dump_json(doc))
    else:
        rows = ["y,pdf,cdf,hazard"]
        rows += [f"{a!r},{b!r},{c!r},{d!r}" for a, b, c, d in
                 zip(y.tolist(), dens.tolist(), dist.tolist(), haz.tolist())]
        _emit(args, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_list_dists(args):
    aliases = {v: k for k, v in ALIASES.items()}
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": "list-dists",
               "families": [{"name": f, "params": list(PARAM_NAMES[f]),
                             "aliases": [a for a, t in ALIASES.items() if t == f]}
                            for f in FAMILY_NAMES]}
        _emit(args, _dump_json(doc))
    else:
        lines = []
        for f in FAMILY_NAMES:
            extra = f"  (alias: {aliases[f]})" if f in aliases else ""
            lines.append(f"{f:<14} {', '.join(PARAM_NAMES[f])}{extra}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_source(p):
    g = p.add_argument_group("data source")
    g.add_argument("--builtin", metavar="NAME", help=f"embedded dataset ({', '.join(builtin_names())})")
    g.add_argument("--data", metavar="PATH", help="file with one value per line; '-' reads stdin")
    g.add_argument("--values", metavar="LIST", help="comma-separated observations")


def _add_fit_config(p):
    g = p.add_argument_group("optimizer")
    g.add_argument("--init", metavar="P1,P2,...", help="starting parameters")
    g.add_argument("--max-iter", type=int, dest="max_iter")
    g.add_argument("--x-tol", type=float, dest="x_tol")
    g.add_argument("--f-tol", type=float, dest="f_tol")
    g.add_argument("--multi-start", type=int, dest="multi_start")
    g.add_argument("--restart-seed", type=int, dest="restart_seed")


def build_parser():
    parser = _Parser(prog="unitdist", description="Unit-interval distributions: fit, compare, sample.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("describe", help="descriptive statistics of a dataset")
    _add_source(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("fit", help="maximum-likelihood fit of one family")
    _add_source(p)
    p.add_argument("--dist", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--paper-k", action="store_true", dest="paper_k",
                   help="use the published tables' parameter counts in the criteria")
    p.add_argument("--k", type=int, help="parameter count for the information criteria")
    p.add_argument("--out")
    _add_fit_config(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("compare", help="fit several families and tabulate them")
    _add_source(p)
    p.add_argument("--dists", required=True, help="comma-separated family names")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--paper-k", action="store_true", dest="paper_k")
    p.add_argument("--sort-aic", action="store_true", dest="sort_aic")
    p.add_argument("--out")
    _add_fit_config(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sample", help="draw random variates")
    p.add_argument("--dist", required=True)
    p.add_argument("--params")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, help=f"defaults to ${SEED_ENV}, else 0")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("curve", help="pdf, cdf and hazard on a grid (csv)")
    p.add_argument("--dist", required=True)
    p.add_argument("--params")
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--format", choices=("csv", "text", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("list-dists", help="registered family names and parameters")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_list_dists)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"unitdist {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, DomainError) as exc:
        print(f"unitdist {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except UnitDistError as exc:
        print(f"unitdist {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_NOCONV
    except OSError as exc:
        print(f"unitdist {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
