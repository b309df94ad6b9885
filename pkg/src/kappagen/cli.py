"""Command line interface.

Subcommands: kappa (score a table or ratings file), bounds (feasible kappa
range for a marginal pair), validate (check a generation config), generate
(write a synthetic dataset), reproduce (rerun a packaged experiment).

Exit codes: 0 success, 1 usage or unreadable input, 2 invalid or
out-of-range inputs, 3 failed method (a target a method cannot reach, a
jointly unreachable kappa matrix, or an LP iteration limit). Every failure
prints one machine-parsable line to stderr:
"kappagen: error: <code>: <message>".
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import experiments
from .bounds import (cohen_upper_bound, exact_lower_bound, p0_zero_lower_bound,
                     sorting_based_bounds)
from .errors import (InfeasibleTargetError, IterationLimitError, JointInfeasibleError,
                     MethodFailureError, SizeCapError, UndefinedKappaError,
                     ValidationError)
from .generation import (empirical_kappa_matrix, generate_multivariate,
                         sorting_generate_bivariate)
from .metrics import kappa_from_ratings, kappa_from_table
from .types import GenerationSpec, KappaMatrix
from .validation import validate_generation_spec


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this CLI reserves 2 for validation.
    def error(self, message):
        self.exit(1, f"{self.prog}: error: usage: {message}\n")


def _fail(code: str, exc) -> None:
    msg = " ".join(str(exc).split())
    print(f"kappagen: error: {code}: {msg}", file=sys.stderr)


def _parse_prob_list(text: str) -> list:
    return [float(tok) for tok in text.split(",") if tok.strip() != ""]


def _read_csv_cells(path: str) -> list:
    with open(path, newline="") as fh:
        return [row for row in csv.reader(fh) if any(cell.strip() for cell in row)]


def _is_float(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def _load_config(path: str) -> GenerationSpec:
    with open(path) as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict) or "pmat" not in raw or "kmat" not in raw:
        raise ValueError('config must be a JSON object with "pmat" and "kmat"')
    kmat = KappaMatrix(np.asarray(raw["kmat"], dtype=float))
    return GenerationSpec(pmat=tuple(raw["pmat"]), kmat=kmat)


def cmd_kappa(args) -> int:
    rows = _read_csv_cells(args.input)
    if not rows:
        raise ValueError(f"{args.input} is empty")
    has_header = not all(_is_float(c) for c in rows[0])
    kind = args.format
    if kind == "auto":
        if has_header:
            kind = "ratings"
        elif len(rows) == 2 and len(rows[0]) == 2:
            raise ValueError("headerless 2x2 input is ambiguous; pass --format")
        elif len(rows) == len(rows[0]):
            kind = "table"
        elif len(rows[0]) == 2:
            kind = "ratings"
        else:
            raise ValueError("cannot tell table from ratings; pass --format")

    if kind == "table":
        if has_header:
            rows = rows[1:]
        cells = np.array([[float(c) for c in row] for row in rows])
        summary = kappa_from_table(cells)
    else:
        if has_header:
            rows = rows[1:]
        data = np.array([[int(float(c)) for c in row] for row in rows])
        if data.shape[1] != 2:
            raise ValidationError("ratings input must have exactly two columns")
        summary = kappa_from_ratings(data[:, 0], data[:, 1], args.categories)

    print(f"p0 = {summary.p0:.6f}")
    print(f"pc = {summary.pc:.6f}")
    print(f"kappa = {summary.kappa:.6f}")
    return 0


def cmd_bounds(args) -> int:
    pa = _parse_prob_list(args.pa)
    pb = _parse_prob_list(args.pb)
    if args.family == "exact":
        lower = exact_lower_bound(pa, pb, args.eps)
        upper = cohen_upper_bound(pa, pb)
    elif args.family == "p0zero":
        lower = p0_zero_lower_bound(pa, pb)
        upper = cohen_upper_bound(pa, pb)
    else:
        est = sorting_based_bounds(pa, pb, args.n, seed=args.seed)
        lower, upper = est.lower, est.upper
    print(f"lower = {lower:.6f}")
    print(f"upper = {upper:.6f}")
    return 0


def cmd_validate(args) -> int:
    spec = _load_config(args.config)
    validate_generation_spec(spec)
    print(f"ok: {spec.d} variables, categories {list(spec.cats)}")
    return 0


def cmd_generate(args) -> int:
    spec = _load_config(args.config)
    if args.method == "sorting":
        if spec.d != 2:
            raise ValidationError("method 'sorting' supports exactly 2 variables")
        result = sorting_generate_bivariate(spec.pmat[0], spec.pmat[1],
                                            float(spec.kmat.values[0, 1]),
                                            args.n, args.seed)
    else:
        result = generate_multivariate(spec, args.n, args.seed,
                                       pc_source=args.pc_source,
                                       max_cells=args.max_cells)
    dataset = result.dataset

    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"v{j + 1}" for j in range(dataset.d)])
        writer.writerows(dataset.values.tolist())

    summary = {
        "n": dataset.n,
        "seed": result.seed,
        "method": result.method,
        "pc_source": args.pc_source if result.method == "lp" else None,
        "out": args.out,
        "cats": list(dataset.cats),
        "specified_pmat": [list(p.probs) for p in spec.pmat],
        "specified_kmat": [list(r) for r in spec.kmat.values],
        "generated_pmat": [list(p) for p in dataset.empirical_marginals()],
        "generated_kmat": [list(r) for r in empirical_kappa_matrix(dataset)],
        "clamp_adjustments": [
            {"pair": list(c.pair), "requested": c.requested, "clamped": c.clamped}
            for c in result.clamps],
        "retries": result.retries,
    }
    text = json.dumps(summary, indent=2, sort_keys=True)
    if args.summary:
        with open(args.summary, "w", newline="") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_reproduce(args) -> int:
    # Omitted --seed falls through to each experiment's own default.
    seed = {} if args.seed is None else {"seed": args.seed}
    if args.table == "1":
        report = experiments.run_table1(eps=args.eps, n_sort=args.n_sort, **seed)
    elif args.table == "2":
        report = experiments.run_table2(n_sort=args.n_sort, **seed)
    elif args.table == "3":
        report = experiments.run_table3(reps=args.reps, **seed)
    elif args.table == "4":
        report = experiments.run_table4(n=args.n, **seed)
    else:
        report = experiments.run_pathology(n_sort=args.n_sort, **seed)
    print(report.render())
    if args.out:
        with open(args.out, "w", newline="") as fh:
            json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kappagen",
                     description="Kappa agreement bounds and kappa-targeted data generation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kappa", help="kappa of a joint table or two-column ratings CSV")
    p.add_argument("input", help="CSV file: K x K table or two label columns")
    p.add_argument("--format", choices=("auto", "table", "ratings"), default="auto")
    p.add_argument("--categories", type=int, default=None,
                   help="category count for ratings input (default: inferred)")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("bounds", help="feasible kappa range for a marginal pair")
    p.add_argument("--pa", required=True, help="comma-separated marginal, e.g. 0.8,0.2")
    p.add_argument("--pb", required=True)
    p.add_argument("--family", choices=("exact", "p0zero", "sorting"), default="exact")
    p.add_argument("--eps", type=float, default=1e-5,
                   help="bisection tolerance for the exact lower bound")
    p.add_argument("--n", type=int, default=1_000_000, help="sample size for --family sorting")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("validate", help="validate a generation config")
    p.add_argument("config", help='JSON file {"pmat": [[...], ...], "kmat": [[...], ...]}')
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("generate", help="generate a dataset from a config")
    p.add_argument("config")
    p.add_argument("--n", type=int, required=True, help="number of rows")
    p.add_argument("--seed", type=int, default=None,
                   help="64-bit seed (default: drawn from entropy, echoed in summary)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--summary", default=None,
                   help="summary JSON path (default: print to stdout)")
    p.add_argument("--method", choices=("lp", "sorting"), default="lp")
    p.add_argument("--pc-source", choices=("specified", "generated"),
                   default="specified", dest="pc_source")
    p.add_argument("--max-cells", type=int, default=None, dest="max_cells",
                   help="override the table size cap")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reproduce", help="rerun a packaged experiment")
    p.add_argument("--table", choices=("1", "2", "3", "4", "pathology"), required=True)
    p.add_argument("--seed", type=int, default=None,
                   help="experiment seed (default: the experiment's fixed default)")
    p.add_argument("--eps", type=float, default=1e-5)
    p.add_argument("--n-sort", type=int, default=1_000_000, dest="n_sort")
    p.add_argument("--reps", type=int, default=10_000)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--out", default=None, help="write the structured report as JSON")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (ValidationError, UndefinedKappaError, InfeasibleTargetError, SizeCapError) as e:
        _fail("validation", e)
        return 2
    except (MethodFailureError, JointInfeasibleError, IterationLimitError) as e:
        _fail("infeasible", e)
        return 3
    except (OSError, ValueError) as e:
        _fail("parse", e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
