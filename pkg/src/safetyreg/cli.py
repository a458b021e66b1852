"""Command-line entry point: ``safetyreg <subcommand> [flags]``.

Exit codes: 0 success, 1 a probe or oracle check failed, 2 usage or config error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys

from . import analysis, heatmap
from .bargaining import CRITERIA, BargainSpec, bargain, bargained_sweep
from .config import ConfigError, RunConfig, load_config
from .csvio import SchemaError, fmt_num, read_sweep_csv, round12, write_sweep_csv
from .game import EquilibriumOutcome, GameParams, Regulation
from .oracle import GridCapExceeded, GridSpec
from .probes import check_against_oracle, oracle_check_batch, probe_batch, theorem1_probe, theorem2_probe
from .solver import solve_spe
from .sweep import enumerate_grid, run_sweep

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _num(x):
    """JSON-safe number at 12 significant digits; non-finite values become null."""
    x = round12(x)
    return x if math.isfinite(x) else None


def outcome_json(o: EquilibriumOutcome) -> dict:
    return {
        "abstained": o.abstained,
        "alpha0": _num(o.gamma0.alpha),
        "beta0": _num(o.gamma0.beta),
        "alpha1": _num(o.gamma1.alpha),
        "beta1": _num(o.gamma1.beta),
        "u_g": _num(o.u_g),
        "u_d": _num(o.u_d),
        "g_candidate": o.g_candidate,
        "d_candidate": o.d_candidate,
    }


def params_json(p: GameParams) -> dict:
    return {
        "c0": {"c_aa": _num(p.c0.c_aa), "c_bb": _num(p.c0.c_bb), "c_ab": _num(p.c0.c_ab)},
        "c1": {"c_aa": _num(p.c1.c_aa), "c_bb": _num(p.c1.c_bb), "c_ab": _num(p.c1.c_ab)},
        "r": [_num(p.r_a), _num(p.r_b)],
        "delta": _num(p.delta),
    }


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror or exc}", EXIT_IO) from None


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _config(args, required: bool = True) -> RunConfig | None:
    if args.config is None:
        if required:
            raise CliError("--config is required for this subcommand", EXIT_USAGE)
        return None
    try:
        return load_config(args.config)
    except OSError as exc:
        raise CliError(f"cannot read {args.config}: {exc.strerror or exc}", EXIT_IO) from None
    except ConfigError as exc:
        raise CliError(f"config error: {exc}", EXIT_USAGE) from None


def _threads(args, cfg: RunConfig | None) -> int:
    n = args.threads if args.threads is not None else (cfg.threads if cfg else 1)
    if n < 1:
        raise CliError("--threads must be >= 1", EXIT_USAGE)
    return n


def _regulation(args) -> Regulation:
    tg = 0.0 if args.theta_g is None else args.theta_g
    td = 0.0 if args.theta_d is None else args.theta_d
    for name, v in (("--theta-g", tg), ("--theta-d", td)):
        if not (math.isfinite(v) and v >= 0):
            raise CliError(f"{name} must be a finite nonnegative number", EXIT_USAGE)
    return Regulation(tg, td)


def _read_rows(path: str | None) -> list[dict]:
    if path is None:
        raise CliError("--in is required for this subcommand", EXIT_USAGE)
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            rows = read_sweep_csv(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_IO) from None
    except SchemaError as exc:
        raise CliError(f"{path}: {exc}", EXIT_USAGE) from None
    if not rows:
        raise CliError(f"{path}: no data rows", EXIT_USAGE)
    return rows


def _out(args, cfg: RunConfig | None, key: str) -> str | None:
    if args.out is not None:
        return args.out
    return cfg.output.get(key) if cfg else None


# subcommands ----------------------------------------------------------------

def cmd_solve(args) -> int:
    cfg = _config(args)
    reg = _regulation(args)
    out = solve_spe(cfg.game, reg)
    doc = {"theta_g": _num(reg.theta_g), "theta_d": _num(reg.theta_d), "delta": _num(cfg.game.delta)}
    doc.update(outcome_json(out))
    _emit(_dumps(doc), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _config(args)
    workers = _threads(args, cfg)
    if not enumerate_grid(cfg.grid):
        _warn("grid is empty; writing header only")
    records = run_sweep(cfg.game, cfg.grid, cfg.sweep_deltas, workers)
    buf = io.StringIO()
    write_sweep_csv(records, buf)
    errors = sum(r.outcome is None for r in records)
    if errors:
        _warn(f"{errors} cell(s) failed to solve and are marked class=error")
    _emit(buf.getvalue(), _out(args, cfg, "sweep"))
    return EXIT_OK


def _bargain_cell(reg: Regulation, res) -> dict:
    return {
        "theta_g": _num(reg.theta_g),
        "theta_d": _num(reg.theta_d),
        "delta": _num(res.delta),
        "score": _num(res.score),
        "viable": res.viable,
        "message": res.message,
        "outcome": outcome_json(res.outcome),
    }


def cmd_bargain(args) -> int:
    cfg = _config(args)
    criterion = args.criterion or cfg.bargaining.criterion
    spec = BargainSpec(criterion, cfg.bargaining.delta_values)
    if args.theta_g is not None or args.theta_d is not None:
        reg = _regulation(args)
        doc = {"criterion": criterion}
        doc.update(_bargain_cell(reg, bargain(cfg.game, reg, spec)))
        _emit(_dumps(doc), _out(args, cfg, "report"))
        return EXIT_OK
    # no single cell given: bargain every cell of the configured grid
    workers = _threads(args, cfg)
    base = bargain(cfg.game, Regulation(0.0, 0.0), spec)
    records = bargained_sweep(cfg.game, cfg.grid, spec, workers)
    cells = []
    for r in records:
        row = {"theta_g": _num(r.regulation.theta_g), "theta_d": _num(r.regulation.theta_d),
               "delta": _num(r.delta), "score": _num(r.score if r.score is not None else math.nan),
               "class": r.classification, "viable": r.error is None}
        row["outcome"] = outcome_json(r.outcome) if r.outcome is not None else None
        cells.append(row)
    doc = {
        "criterion": criterion,
        "baseline": _bargain_cell(Regulation(0.0, 0.0), base),
        "cells": cells,
        "mutualism_cells": sum(r.mutualism for r in records),
        "backfire_cells": sum(r.backfire for r in records),
    }
    _emit(_dumps(doc), _out(args, cfg, "report"))
    return EXIT_OK


def _probe_json(report) -> dict:
    doc = {
        "hypothesis_met": report.hypothesis_met,
        "passed": report.passed,
        "degenerate": report.degenerate,
        "message": report.message,
        "epsilon": _num(report.epsilon),
        "beta0_a": _num(report.beta0_a),
        "beta1_a": _num(report.beta1_a),
        "u_g_a": _num(report.u_g_a),
        "u_d_a": _num(report.u_d_a),
        "checks": len(report.checks),
    }
    w = report.witness
    doc["witness"] = None if w is None else {
        "theta_g": _num(w.theta_g), "theta_d": _num(w.theta_d), "beta1": _num(w.beta1),
        "u_g": _num(w.u_g), "u_d": _num(w.u_d)}
    return doc


def cmd_probe(args) -> int:
    if args.theorem is None:
        raise CliError("--theorem is required", EXIT_USAGE)
    cfg = _config(args, required=False)
    eps = 1e-3 if args.epsilon is None else args.epsilon
    if not (math.isfinite(eps) and eps >= 0):
        raise CliError("--epsilon must be a finite nonnegative number", EXIT_USAGE)
    if cfg is not None and args.trials is None:
        # single configured game, absolute epsilon
        fn = theorem1_probe if args.theorem == 1 else theorem2_probe
        report = fn(cfg.game, eps)
        doc = {"theorem": args.theorem, "mode": "config", "params": params_json(cfg.game)}
        doc.update(_probe_json(report))
        _emit(_dumps(doc), _out(args, cfg, "report"))
        failed = report.hypothesis_met and not report.degenerate and not report.passed
        return EXIT_CHECK if failed else EXIT_OK
    trials = 100 if args.trials is None else args.trials
    if trials < 1:
        raise CliError("--trials must be >= 1", EXIT_USAGE)
    seed = args.seed if args.seed is not None else (cfg.seed if cfg else 0)
    batch = probe_batch(args.theorem, eps, trials, seed)
    results = []
    for params, rep in batch.trials:
        row = {"params": params_json(params)}
        row.update(_probe_json(rep))
        results.append(row)
    doc = {"theorem": args.theorem, "mode": "random", "epsilon_relative": _num(eps), "seed": seed,
           "trials": trials, "passed": batch.passed, "all_passed": batch.all_passed, "results": results}
    _emit(_dumps(doc), _out(args, cfg, "report"))
    return EXIT_OK if batch.all_passed else EXIT_CHECK


def _check_json(c) -> dict:
    doc = {
        "params": params_json(c.params),
        "theta_g": _num(c.regulation.theta_g),
        "theta_d": _num(c.regulation.theta_d),
        "grid": {"gamma_max": _num(c.grid.gamma_max), "step": _num(c.grid.step)},
        "passed": c.passed,
        "error": c.error,
        "analytic": outcome_json(c.analytic),
        "oracle": outcome_json(c.oracle) if c.oracle is not None else None,
        "on_box_edge": c.on_box_edge,
    }
    if c.comparison is not None:
        doc["comparison"] = {k: (_num(v) if isinstance(v, float) else v)
                             for k, v in c.comparison.as_dict().items()}
    return doc


def cmd_oracle_check(args) -> int:
    cfg = _config(args, required=False)
    step = cfg.oracle.step if cfg else 0.005
    if cfg is not None and args.trials is None:
        reg = _regulation(args)
        grid = None
        if cfg.oracle.gamma_max is not None:
            grid = GridSpec(cfg.oracle.gamma_max, step, cfg.oracle.max_points)
        try:
            checks = [check_against_oracle(cfg.game, reg, step, grid)]
        except GridCapExceeded as exc:
            raise CliError(f"oracle grid too large: {exc}", EXIT_USAGE) from None
        seed = None
    else:
        trials = 20 if args.trials is None else args.trials
        if trials < 1:
            raise CliError("--trials must be >= 1", EXIT_USAGE)
        seed = args.seed if args.seed is not None else (cfg.seed if cfg else 2024)
        checks = oracle_check_batch(trials, seed, step=step)
    passed = sum(c.passed for c in checks)
    doc = {"seed": seed, "checks": len(checks), "passed": passed,
           "all_passed": passed == len(checks), "results": [_check_json(c) for c in checks]}
    _emit(_dumps(doc), _out(args, cfg, "report"))
    for c in checks:
        if c.error:
            _warn(c.error)
    return EXIT_OK if passed == len(checks) else EXIT_CHECK


def cmd_pareto(args) -> int:
    rows = _read_rows(args.inp)
    points = {k: [] for k in analysis.REGIMES}
    for r in rows:
        if r["class"] == "error" or not (math.isfinite(r["u_g"]) and math.isfinite(r["u_d"])):
            continue
        regime = analysis.regime_of(r["theta_g"], r["theta_d"])
        points[regime].append(analysis.UtilityPoint(r["u_g"], r["u_d"], (r["theta_g"], r["theta_d"], r["delta"])))
    lines = ["regime,u_g,u_d,theta_g,theta_d,delta"]
    for regime in analysis.REGIMES:
        if not points[regime]:
            _warn(f"no points for regime {regime}")
            continue
        for v in analysis.pareto_hull(points[regime]):
            tg, td, d = v.provenance
            lines.append(",".join([regime, fmt_num(v.u_g), fmt_num(v.u_d), fmt_num(tg), fmt_num(td), fmt_num(d)]))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_heatmap(args) -> int:
    if args.metric is None:
        raise CliError("--metric is required", EXIT_USAGE)
    rows = _read_rows(args.inp)
    if len({r["delta"] for r in rows}) > 1:
        _warn(f"rows span several deltas; plotting delta={fmt_num(heatmap.select_delta(rows))}")
    _emit(heatmap.render(rows, args.metric), args.out)
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "bargain": cmd_bargain,
    "probe": cmd_probe,
    "oracle-check": cmd_oracle_check,
    "pareto": cmd_pareto,
    "heatmap": cmd_heatmap,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="safetyreg", description="Safety regulation game solver and sweeps.")
    p.add_argument("command", choices=list(COMMANDS))
    p.add_argument("--config", help="JSON run configuration")
    p.add_argument("--theta-g", type=float, dest="theta_g")
    p.add_argument("--theta-d", type=float, dest="theta_d")
    p.add_argument("--criterion", choices=CRITERIA)
    p.add_argument("--theorem", type=int, choices=(1, 2))
    p.add_argument("--epsilon", type=float)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--in", dest="inp", help="input sweep CSV")
    p.add_argument("--out", help="output path (default: standard output)")
    p.add_argument("--metric", choices=heatmap.METRICS)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
