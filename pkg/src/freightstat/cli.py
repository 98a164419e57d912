"""``freightstat`` command line interface.

Exit status: 0 on success, 1 on a domain/data error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
import warnings
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import crosstab as xt
from . import datasets, fuzzy, gof, lp, regression
from .distributions import FAMILIES, fit_mle
from .errors import DomainError
from .io import CATEGORICAL, NUMERIC, Dataset, load_csv
from .report import Report, gnuplot_block
from .stats import BinSpec, bin_sample, summarize

TESTS = {"chi2": "chi_square", "ks": "ks", "ad": "ad"}


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")


def _name_list(text: str) -> list[str]:
    names = [v.strip() for v in text.split(",") if v.strip()]
    if not names:
        raise argparse.ArgumentTypeError("expected at least one column name")
    return names


def _assignments(text: str) -> dict[str, float]:
    out = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        try:
            if not sep:
                raise ValueError
            out[name.strip()] = float(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected name=value pairs, got {item!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("csv", help="input CSV file, or the name of a bundled dataset (e.g. example_11_1.csv)")
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--delimiter", default=",", help="field delimiter (default ',')")
    common.add_argument("--no-header", action="store_true", help="first row is data; columns are col1, col2, ...")
    common.add_argument("--na", default="NA", help="missing-value marker (default NA)")
    common.add_argument("--numeric", type=_name_list, default=[], metavar="COLS", help="force columns numeric")
    common.add_argument("--categorical", type=_name_list, default=[], metavar="COLS", help="force columns categorical")
    common.add_argument("--plot", metavar="PATH", help="also render a figure to PATH (format from extension)")

    parser = argparse.ArgumentParser(prog="freightstat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summary", parents=[common], help="descriptive statistics and histogram")
    p.add_argument("--col", required=True)
    p.add_argument("--bins", type=_float_list, help="bin edges; a final open-ended bin is appended")
    p.add_argument("--gnuplot", action="store_true", help="print the histogram as a plain data block")
    p.add_argument("--closed", choices=("right", "left"), default="right", help="closed side of each bin")

    p = sub.add_parser("fit", parents=[common], help="maximum likelihood distribution fit")
    p.add_argument("--col", required=True)
    p.add_argument("--family", choices=FAMILIES, default="lognormal")

    p = sub.add_parser("gof", parents=[common], help="goodness-of-fit test against a fitted distribution")
    p.add_argument("--col", required=True)
    p.add_argument("--fit", dest="family", choices=FAMILIES, default="lognormal")
    p.add_argument("--test", choices=sorted(TESTS), default="chi2")
    p.add_argument("--bins", type=_float_list, help="bin edges for chi2; a final open-ended bin is appended")
    p.add_argument("--closed", choices=("right", "left"), default="right", help="closed side of each bin")
    p.add_argument("--alpha", type=float, default=0.05)

    p = sub.add_parser("crosstab", parents=[common], help="cross-tabulation and chi-square independence test")
    p.add_argument("--rows", required=True)
    p.add_argument("--cols", required=True)
    p.add_argument("--alpha", type=float, default=0.05)

    p = sub.add_parser("regress", parents=[common], help="least-squares linear regression")
    p.add_argument("--y", required=True)
    p.add_argument("--x", type=_name_list, required=True)
    p.add_argument("--predict", type=_assignments, help="name=value list for a point prediction")

    for name, helptext in (("fuzzy", "fuzzy linear regression"), ("lp-debug", "dump the fuzzy regression LP")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--y", required=True)
        p.add_argument("--x", type=_name_list, required=True)
        p.add_argument("--h", type=float, default=fuzzy.DEFAULT_H, help="certainty factor in [0, 1)")
        if name == "fuzzy":
            p.add_argument("--predict", type=_assignments, help="name=value list for an interval prediction")
        else:
            p.add_argument("--solve", action="store_true", help="append the solver result")
    return parser


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    try:
        return datasets.fixture_path(p.name)
    except KeyError:
        return p


def _load(args) -> Dataset:
    types = {n: NUMERIC for n in args.numeric}
    types.update({n: CATEGORICAL for n in args.categorical})
    return load_csv(_resolve(args.csv), delimiter=args.delimiter, header=not args.no_header, missing=args.na, types=types)


def _numeric_values(ds: Dataset, name: str, warns: list) -> list[float]:
    values = ds.numeric(name).values
    kept = [v for v in values if v is not None]
    if len(kept) < len(values):
        warns.append(f"{len(values) - len(kept)} missing value(s) in {name!r} ignored")
    return kept


def _matrix(ds: Dataset, y: str, xs: Sequence[str], warns: list):
    for name in [y, *xs]:
        ds.numeric(name)
    rows, dropped = ds.complete_rows([y, *xs])
    if dropped:
        warns.append(f"{dropped} row(s) with missing values dropped")
    if not rows:
        raise DomainError("empty sample")
    arr = np.asarray(rows, dtype=float)
    return arr[:, 1:], arr[:, 0]


def _digest(ds: Dataset, used: Sequence[str], n: int) -> dict:
    return {"source": Path(ds.source).name, "columns": list(used), "n": n}


def _cmd_summary(args, ds, warns):
    if args.gnuplot and not args.bins:
        raise UsageError("--gnuplot needs --bins")
    x = _numeric_values(ds, args.col, warns)
    stats = summarize(x)
    result = {"summary": stats.as_dict()}
    hist = None
    if args.bins:
        hist = bin_sample(x, BinSpec.open_ended(args.bins), args.closed)
        result["histogram"] = _hist_dict(hist)
        if args.gnuplot:
            return gnuplot_block(hist.spec.edges, hist.counts)
    if args.plot:
        from . import plotting

        hist = hist or bin_sample(x, _auto_bins(x), args.closed)
        plotting.histogram(hist.spec.edges, hist.counts, args.plot, xlabel=args.col)
        result["figure"] = args.plot
    return Report("summary", _digest(ds, [args.col], len(x)), result, warns)


def _auto_bins(x) -> BinSpec:
    edges = np.histogram_bin_edges(x, "sturges")
    return BinSpec.open_ended([float(e) for e in edges[:-1]])


def _hist_dict(hist) -> dict:
    return {
        "edges": list(hist.spec.edges),
        "labels": hist.spec.labels(),
        "counts": list(hist.counts),
        "below": hist.below,
        "above": hist.above,
    }


def _cmd_fit(args, ds, warns):
    x = _numeric_values(ds, args.col, warns)
    res = fit_mle(x, args.family)
    return Report("fit", _digest(ds, [args.col], len(x)), res.as_dict(), warns)


def _cmd_gof(args, ds, warns):
    x = _numeric_values(ds, args.col, warns)
    res = fit_mle(x, args.family)
    result = {"fit": res.as_dict()}
    if args.test == "chi2":
        if not args.bins:
            raise UsageError("--test chi2 needs --bins")
        hist = bin_sample(x, BinSpec.open_ended(args.bins), args.closed)
        if hist.uncovered:
            warns.append(f"{hist.uncovered} observation(s) fall outside the bins")
        expected = gof.expected_frequencies(res.spec, hist.spec, len(x))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rep = gof.chi_square_gof(hist, expected, res.n_params, args.alpha)
        result["histogram"] = _hist_dict(hist)
        result["expected"] = expected
    elif args.test == "ks":
        rep = gof.ks_test(x, res.spec, args.alpha)
    else:
        rep = gof.ad_test(x, res.spec, args.alpha)
    if args.plot:
        from . import plotting

        hist = bin_sample(x, BinSpec.open_ended(args.bins) if args.bins else _auto_bins(x), args.closed)
        expected = gof.expected_frequencies(res.spec, hist.spec, len(x))
        plotting.histogram(hist.spec.edges, hist.counts, args.plot, expected=expected, xlabel=args.col)
        result["figure"] = args.plot
    result["test"] = rep.as_dict()
    warns.extend(rep.warnings)
    return Report("gof", _digest(ds, [args.col], len(x)), result, warns)


def _cmd_crosstab(args, ds, warns):
    rows, dropped = ds.complete_rows([args.rows, args.cols])
    if dropped:
        warns.append(f"{dropped} row(s) with missing values dropped")
    pairs = [(_label(r), _label(c)) for r, c in rows]
    table = xt.tabulate(pairs)
    rep = xt.independence_test(table, args.alpha)
    result = {"table": table.as_dict(), "expected": xt.expected_table(table).tolist(), "test": rep.as_dict()}
    if args.plot:
        from . import plotting

        plotting.crosstab(table.row_labels, table.col_labels, table.counts, args.plot, args.rows, args.cols)
        result["figure"] = args.plot
    warns.extend(rep.warnings)
    return Report("crosstab", _digest(ds, [args.rows, args.cols], table.grand_total), result, warns)


def _label(v) -> str:
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    return str(v)


def _cmd_regress(args, ds, warns):
    x, y = _matrix(ds, args.y, args.x, warns)
    if len(args.x) == 1:
        model = regression.simple_ols(x[:, 0], y, name=args.x[0])
    else:
        model = regression.general_ols(x, y, names=args.x)
    result = {"model": model.as_dict()}
    if len(args.x) == 1:
        result["pearson_r"] = regression.pearson_r(x[:, 0], y)
    if args.predict is not None:
        result["prediction"] = {"point": args.predict, "value": regression.predict(model, args.predict)}
    if args.plot:
        from . import plotting

        fitted = [regression.predict(model, row) for row in x]
        plotting.regression(x[:, 0] if len(args.x) == 1 else x, y, fitted, args.plot, args.x[0], args.y)
        result["figure"] = args.plot
    return Report("regress", _digest(ds, [args.y, *args.x], len(y)), result, warns)


def _cmd_fuzzy(args, ds, warns):
    x, y = _matrix(ds, args.y, args.x, warns)
    model = fuzzy.fit(x, y, args.h, names=args.x)
    result = {"model": model.as_dict()}
    if args.predict is not None:
        iv = fuzzy.predict_interval(model, args.predict)
        result["prediction"] = {"point": args.predict, **iv._asdict()}
    if args.plot:
        from . import plotting

        ivs = [fuzzy.predict_interval(model, row) for row in x]
        plotting.fuzzy_bands(y, [i.lower for i in ivs], [i.upper for i in ivs], [i.midpoint for i in ivs], args.plot, args.y)
        result["figure"] = args.plot
    return Report("fuzzy", _digest(ds, [args.y, *args.x], len(y)), result, warns)


def _cmd_lp_debug(args, ds, warns):
    x, y = _matrix(ds, args.y, args.x, warns)
    problem = fuzzy.build_lp(x, y, args.h, names=args.x)
    text = lp.format_lp(problem)
    if args.json:
        result = {"lp": text}
        if args.solve:
            result["solution"] = lp.solve(problem).as_dict()
        return Report("lp-debug", _digest(ds, [args.y, *args.x], len(y)), result, warns)
    if args.solve:
        sol = lp.solve(problem)
        text += f"# status {sol.status}\n# objective {sol.objective_value!r}\n"
        text += "".join(f"# {n} = {v!r}\n" for n, v in zip(sol.names, sol.variable_values))
    return text


COMMANDS = {
    "summary": _cmd_summary,
    "fit": _cmd_fit,
    "gof": _cmd_gof,
    "crosstab": _cmd_crosstab,
    "regress": _cmd_regress,
    "fuzzy": _cmd_fuzzy,
    "lp-debug": _cmd_lp_debug,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        ds = _load(args)
        out = COMMANDS[args.command](args, ds, [])
    except UsageError as exc:
        parser.print_usage(stderr)
        stderr.write(f"freightstat: error: {exc}\n")
        return 2
    except DomainError as exc:
        if args.json:
            stdout.write(json.dumps({"error": {"kind": type(exc).__name__, "message": str(exc)}}, sort_keys=True) + "\n")
        stderr.write(f"freightstat: error: {exc}\n")
        return 1
    if isinstance(out, Report):
        stdout.write(out.to_json() if args.json else out.to_text())
    else:
        stdout.write(out)
    return 0


def main() -> None:
    sys.exit(run())
