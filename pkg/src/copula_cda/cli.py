"""Command line front end.

::

    copula-cda ce  --input data.csv --cols a,b [--k 3] [--seed 1]
    copula-cda ci  --input data.csv --x a --y b --z c
    copula-cda cda --input data.csv --context ctx --outcome y [--perms 200] [--alpha 0.05]
    copula-cda sim exp1|exp2 [--perms 0]

Every command accepts ``--output json|csv`` and ``--out PATH``. Exit codes:
0 success, 1 usage error, 2 data or parse error, 3 numeric or config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

import numpy as np

from .causal_da import CiReport, DomainDataset, ci_strengths, permutation_pvalues, select_features
from .errors import CopulaCDAError, DomainError, InvalidDataError, ParseError, UsageError
from .estimator import EstimatorConfig, SampleMatrix, ci_measure, copula_entropy
from .experiments import EXPERIMENT_PARAMETERS, ExperimentSpec, derive_seeds, run_experiment

__all__ = ["cmd_cda", "cmd_ce", "cmd_ci", "cmd_sim", "ingest", "main"]


def ingest(path) -> tuple[SampleMatrix, dict]:
    """Read a comma-separated file with a header row.

    Columns holding any non-numeric token are encoded as integers 1, 2, ...
    in order of first appearance. Returns the sample and a codebook mapping
    each categorical column name to its ``{token: code}`` dict.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ParseError(f"{path}: empty file, expected a header row")
    header = [h.strip() for h in rows[0]]
    if len(set(header)) != len(header):
        raise ParseError(f"{path}: duplicate column names in header")
    body = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise ParseError(f"{path}: line {lineno} has {len(row)} fields, header has {len(header)}")
        for name, tok in zip(header, row):
            if not tok.strip():
                raise InvalidDataError(f"{path}: missing value in column {name!r} at line {lineno}")
        body.append([tok.strip() for tok in row])
    if not body:
        raise InvalidDataError(f"{path}: no data rows")

    cols, codebook = [], {}
    for j, name in enumerate(header):
        tokens = [r[j] for r in body]
        try:
            col = np.array([float(t) for t in tokens])
        except ValueError:
            codes = {}
            for t in tokens:
                codes.setdefault(t, len(codes) + 1)
            codebook[name] = codes
            col = np.array([codes[t] for t in tokens], dtype=np.float64)
        else:
            if not np.all(np.isfinite(col)):
                raise InvalidDataError(f"{path}: non-finite value in column {name!r}")
        cols.append(col)
    return SampleMatrix(np.column_stack(cols), tuple(header)), codebook


def _require(table: SampleMatrix, names):
    for n in names:
        if n not in table.column_names:
            raise UsageError(f"unknown column {n!r}; available: {', '.join(table.column_names)}")


def cmd_ce(table: SampleMatrix, cols: Sequence[str], cfg: EstimatorConfig) -> dict:
    cols = list(cols)
    if len(cols) < 2:
        raise UsageError("ce needs at least two columns")
    if len(set(cols)) != len(cols):
        raise UsageError("ce columns must be distinct")
    _require(table, cols)
    h = copula_entropy(table.select(cols).values, cfg)
    return {"columns": cols, "h_c": h, "k": cfg.k, "seed": cfg.tie_seed}


def cmd_ci(table: SampleMatrix, x: str, y: str, z: str, cfg: EstimatorConfig) -> dict:
    if "," in z:
        raise UsageError("conditioning on several columns is not supported; give a single --z")
    _require(table, [x, y, z])
    h = ci_measure(table.column(x), table.column(y), table.column(z), cfg)
    return {"x": x, "y": y, "z": z, "h_ci": h, "k": cfg.k, "seed": cfg.tie_seed}


def domain_dataset(table: SampleMatrix, context_col: str, outcome_col: str) -> DomainDataset:
    """Build a dataset whose domains are the distinct values of ``context_col``.

    Rows are regrouped stably by ascending context value and the context is
    relabelled 1..D; every other column except the outcome is a feature.
    """
    _require(table, [context_col, outcome_col])
    if context_col == outcome_col:
        raise UsageError("context and outcome must be different columns")
    ctx = table.column(context_col)
    levels = np.unique(ctx)
    if levels.size < 2:
        raise DomainError(f"context column {context_col!r} has a single value; need >= 2 domains")
    feature_names = [n for n in table.column_names if n not in (context_col, outcome_col)]
    if not feature_names:
        raise UsageError("no feature columns left after removing context and outcome")
    label = np.searchsorted(levels, ctx) + 1
    order = np.argsort(label, kind="stable")
    sizes = tuple(int(c) for c in np.bincount(label)[1:])
    return DomainDataset(
        SampleMatrix(table.select(feature_names).values[order], tuple(feature_names)),
        table.column(outcome_col)[order],
        label[order].astype(np.float64),
        sizes,
    )


def _report_rows(report: CiReport, alpha: Optional[float]) -> list:
    selected = set(select_features(report, alpha=alpha)) if report.B > 0 and alpha is not None else None
    rows = []
    for e in report.ranked():
        row = {"name": e.name, "h_ci": e.h_ci}
        if e.p_value is not None:
            row["p_value"] = e.p_value
        if selected is not None:
            row["selected"] = e.name in selected
        rows.append(row)
    return rows


def cmd_cda(
    table: SampleMatrix,
    context_col: str,
    outcome_col: str,
    cfg: EstimatorConfig,
    perms: int = 0,
    alpha: Optional[float] = 0.05,
) -> tuple[CiReport, list]:
    """Score every feature column against the outcome given the context.

    Returns the report and its rows sorted by descending ``h_ci``. The
    permutation seed is derived from ``cfg.tie_seed`` the same way the
    simulation commands derive it from their master seed.
    """
    ds = domain_dataset(table, context_col, outcome_col)
    if perms > 0:
        report = permutation_pvalues(ds, cfg, perms, derive_seeds(cfg.tie_seed)["perm"])
    else:
        report = ci_strengths(ds, cfg)
    return report, _report_rows(report, alpha)


def cmd_sim(exp_id: str, cfg: EstimatorConfig, perms: int = 0, alpha: Optional[float] = 0.05):
    if exp_id not in EXPERIMENT_PARAMETERS:
        raise UsageError(f"unknown experiment {exp_id!r}; expected one of {', '.join(EXPERIMENT_PARAMETERS)}")
    report = run_experiment(ExperimentSpec(exp_id, cfg.tie_seed, cfg, perms))
    return report, _report_rows(report, alpha)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(UsageError.exit_code, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=3, help="neighbour count (default 3)")
    common.add_argument("--seed", type=int, default=1, help="seed for every random step (default 1)")
    common.add_argument("--output", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="output path (default stdout)")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--input", required=True, help="comma-separated file with a header row")

    parser = _Parser(prog="copula-cda", description="Copula entropy based conditional independence tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ce", parents=[common, data], help="copula entropy of two or more columns")
    p.add_argument("--cols", required=True, help="comma-separated column names")

    p = sub.add_parser("ci", parents=[common, data], help="conditional independence strength")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", required=True)

    p = sub.add_parser("cda", parents=[common, data], help="rank features by CI strength given a context")
    p.add_argument("--context", required=True)
    p.add_argument("--outcome", required=True)
    p.add_argument("--perms", type=int, default=0, help="permutations for p-values (default 0 = none)")
    p.add_argument("--alpha", type=float, default=0.05)

    p = sub.add_parser("sim", parents=[common], help="run a simulation experiment")
    p.add_argument("id", help="exp1 or exp2")
    p.add_argument("--perms", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.05)
    return parser


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return ";".join(map(str, v))
    return str(v)


def _render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, allow_nan=True) + "\n"
    results = doc["results"]
    if isinstance(results, dict):
        results = [results]
    fields = []
    for r in results:
        fields.extend(f for f in r if f not in fields)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in results:
        w.writerow([_fmt(r[f]) if f in r else "" for f in fields])
    return buf.getvalue()


def run(argv: Optional[Sequence[str]] = None) -> tuple[dict, argparse.Namespace]:
    """Parse ``argv`` and execute the command; returns the output document and the parsed args."""
    args = _build_parser().parse_args(argv)
    if args.k < 1:
        raise UsageError(f"--k must be >= 1, got {args.k}")
    if args.seed < 0:
        raise UsageError(f"--seed must be >= 0, got {args.seed}")
    cfg = EstimatorConfig(k=args.k, tie_seed=args.seed)
    params = {"k": args.k}
    if args.command in ("ce", "ci", "cda"):
        table, codebook = ingest(args.input)
        params["input"] = args.input
        if codebook:
            params["codebook"] = codebook
    if args.command == "ce":
        cols = [c.strip() for c in args.cols.split(",") if c.strip()]
        params["cols"] = cols
        results = cmd_ce(table, cols, cfg)
    elif args.command == "ci":
        params.update(x=args.x, y=args.y, z=args.z)
        results = cmd_ci(table, args.x, args.y, args.z, cfg)
    elif args.command == "cda":
        if args.perms < 0:
            raise UsageError("--perms must be >= 0")
        params.update(context=args.context, outcome=args.outcome, perms=args.perms, alpha=args.alpha)
        _, results = cmd_cda(table, args.context, args.outcome, cfg, args.perms, args.alpha)
    else:
        if args.perms < 0:
            raise UsageError("--perms must be >= 0")
        params.update(experiment=args.id, perms=args.perms, alpha=args.alpha)
        _, results = cmd_sim(args.id, cfg, args.perms, args.alpha)
        params["parameters"] = EXPERIMENT_PARAMETERS[args.id]
    return {"command": args.command, "params": params, "results": results, "seed": args.seed}, args


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        doc, args = run(argv)
    except CopulaCDAError as exc:
        print(f"copula-cda: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"copula-cda: error: {exc}", file=sys.stderr)
        return UsageError.exit_code
    except UnicodeDecodeError as exc:
        print(f"copula-cda: error: input is not UTF-8: {exc}", file=sys.stderr)
        return ParseError.exit_code
    text = _render(doc, args.output)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
