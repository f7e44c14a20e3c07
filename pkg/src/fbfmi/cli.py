"""Command-line entry point.

Exit codes: 0 success, 2 input or parse error, 3 numerical failure, 4 IO error.
"""

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path

from .errors import InputError, NumericalError
from .fbf import MODEL_PRIORS, select
from .harness.experiment import ExperimentSpec, emit_results, run_experiment
from .harness.io import ingest_csv, read_summary
from .harness.plot import emit_boxplot_svg
from .impute import DEFAULT_BURN_IN, DEFAULT_M, DEFAULT_SPACING, GibbsConfig, impute, listwise_delete
from .linmodel import FractionConfig
from .mifbf import mi_select

EXIT_INPUT, EXIT_NUMERIC, EXIT_IO = 2, 3, 4


def bundled_fixture():
    """Path of the synthetic Ozone-style CSV shipped with the package."""
    return str(resources.files("fbfmi") / "data" / "ozone_surrogate.csv")


def _names(text):
    return [s.strip() for s in text.split(",") if s.strip()] if text else None


def _fraction_arg(text):
    if text == "minimal":
        return text
    try:
        b = float(text)
        FractionConfig(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'minimal' or a number in (0, 1], got {text!r}")
    return b


def _fraction(value):
    return None if value == "minimal" else FractionConfig(float(value))


def _add_data_args(p):
    p.add_argument("--data", default=None, help="input CSV (default: bundled Ozone-style fixture)")
    p.add_argument("--response", default="y", help="response column (default: y)")
    p.add_argument("--predictors", default=None,
                   help="comma-separated predictor columns (default: all but the response)")
    p.add_argument("--prior", choices=MODEL_PRIORS, default="uniform",
                   help="model prior (default: uniform)")
    p.add_argument("--fraction", type=_fraction_arg, default="minimal",
                   help="'minimal' for b=(k+1)/n, or an explicit b (default: minimal)")


def _add_gibbs_args(p):
    p.add_argument("--m", type=int, default=DEFAULT_M, help=f"imputations (default: {DEFAULT_M})")
    p.add_argument("--burn-in", type=int, default=DEFAULT_BURN_IN,
                   help=f"burn-in sweeps (default: {DEFAULT_BURN_IN})")
    p.add_argument("--spacing", type=int, default=DEFAULT_SPACING,
                   help=f"sweeps between kept imputations (default: {DEFAULT_SPACING})")
    p.add_argument("--seed", type=int, default=0, help="base seed (default: 0)")


def build_parser():
    parser = argparse.ArgumentParser(prog="fbfmi", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("select", help="complete-data variable selection")
    _add_data_args(p)
    p.add_argument("--listwise", action="store_true",
                   help="drop incomplete rows first instead of failing on them")
    p.add_argument("--out", default=None, help="write the full result as JSON here")

    p = sub.add_parser("impute-select", help="variable selection on incomplete data")
    _add_data_args(p)
    _add_gibbs_args(p)
    p.add_argument("--out", default=None, help="write the full result as JSON here")

    p = sub.add_parser("experiment", help="missingness-injection study")
    _add_data_args(p)
    _add_gibbs_args(p)
    p.add_argument("--miss-cols", default="x6,x7,x8,x9,x10",
                   help="comma-separated columns to corrupt (default: x6,x7,x8,x9,x10)")
    p.add_argument("--rates", default="0.1,0.2,0.3", help="missing proportions (default: 0.1,0.2,0.3)")
    p.add_argument("--reps", type=int, default=30, help="repetitions per rate (default: 30)")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default: 1)")
    p.add_argument("--out-dir", default="results", help="output directory (default: results)")

    p = sub.add_parser("plot", help="render boxplot SVGs from a summary file")
    p.add_argument("summary", help="summary JSON written by 'experiment'")
    p.add_argument("--out-dir", default=None, help="output directory (default: next to the summary)")
    return parser


def _load(args):
    return ingest_csv(args.data or bundled_fixture(), args.response, _names(args.predictors))


def _report(res, names, out):
    width = max(len(n) for n in names)
    for name, prob in zip(names, res.inclusion):
        print(f"{name:<{width}}  {prob:.4f}")
    if out:
        payload = {
            "names": list(names),
            "model_prior": res.model_prior,
            "inclusion": res.inclusion.tolist(),
            "log_fbf": res.log_fbf.tolist(),
            "post_prob": res.post_prob.tolist(),
        }
        Path(out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def cmd_select(args):
    d = _load(args)
    if args.listwise:
        d = listwise_delete(d)
    elif not d.is_complete:
        raise InputError("data contain missing cells; use impute-select or --listwise")
    res = select(d.X, d.y, _fraction(args.fraction), args.prior)
    _report(res, d.names, args.out)


def cmd_impute_select(args):
    d = _load(args)
    imps = impute(d, GibbsConfig(args.burn_in, args.spacing, args.m, args.seed))
    res = mi_select(imps, _fraction(args.fraction), args.prior)
    _report(res, d.names, args.out)


def cmd_experiment(args):
    d = _load(args)
    spec = ExperimentSpec(
        data=args.data or bundled_fixture(),
        response=args.response,
        predictors=list(d.names),
        miss_cols=_names(args.miss_cols),
        rates=[float(r) for r in args.rates.split(",")],
        reps=args.reps,
        m=args.m,
        seed=args.seed,
        model_prior=args.prior,
        fraction=args.fraction,
        burn_in=args.burn_in,
        spacing=args.spacing,
    )
    records = run_experiment(spec, workers=args.workers, dataset=d)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    summary = emit_results(records, out / "results.csv", out / "summary.json", d.names, spec.miss_cols)
    failed = len(summary["failures"])
    print(f"{len(records)} records ({failed} failed) written to {out}")


def cmd_plot(args):
    path = Path(args.summary)
    for svg in emit_boxplot_svg(read_summary(path), args.out_dir or path.parent):
        print(svg)


COMMANDS = {
    "select": cmd_select,
    "impute-select": cmd_impute_select,
    "experiment": cmd_experiment,
    "plot": cmd_plot,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (InputError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
