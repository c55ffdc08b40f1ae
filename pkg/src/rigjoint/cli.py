"""Command line surface: exact pmf tables, moments, Monte Carlo, verification.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments, 3 size
cap exceeded. Output is CSV by default or JSON with --format json; identical
invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .bipartite import ENUMERATION_CAP, empirical_joint, exhaustive_joint
from .exact import Mode, SizeCapError, parse_probability
from .pgf import (
    ModelParams,
    Side,
    eval_joint_pgf,
    joint_pmf,
    marginal_pmf,
    moment_table,
    recombination_check,
)
from .stats import chi_square, moments, tv_distance

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_TOO_LARGE = 3

ENV_EXACT_CAP = "RIGJOINT_EXACT_CAP"
DEFAULT_EXACT_CAP = 40

# Fixed nonzero rational probes for the verify command's transform identity.
_VERIFY_POINTS = [
    (Fraction(2, 3), Fraction(3, 5)),
    (Fraction(-1, 2), Fraction(5, 4)),
    (Fraction(7, 4), Fraction(-2, 3)),
    (Fraction(1, 3), Fraction(1, 3)),
    (Fraction(5, 2), Fraction(9, 7)),
]


def _exact_cap() -> int:
    raw = os.environ.get(ENV_EXACT_CAP)
    if raw is None:
        return DEFAULT_EXACT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_EXACT_CAP} must be an integer, got {raw!r}")
    if cap < 1:
        raise ValueError(f"{ENV_EXACT_CAP} must be positive, got {cap}")
    return cap


def _dec(value) -> str:
    return f"{float(value):.17g}"


def _frac(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _json_frac(value: Fraction) -> dict:
    return {"num": str(value.numerator), "den": str(value.denominator)}


def _params_json(params: ModelParams) -> dict:
    return {"n": params.n, "m": params.m, "p": _json_frac(params.p)}


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build_params(args) -> ModelParams:
    if args.n < 1 or args.m < 1:
        raise ValueError("--n and --m must be at least 1")
    return ModelParams(args.n, args.m, parse_probability(args.p))


def _require_exact(args, command: str) -> None:
    if args.mode == "float":
        raise ValueError(f"{command} requires exact mode; float pmf extraction is unsupported")


def cmd_pmf(args) -> int:
    _require_exact(args, "pmf")
    params = _build_params(args)
    cap = _exact_cap()
    if params.n > cap or params.m > cap:
        raise SizeCapError(
            f"exact pmf capped at n, m <= {cap} (override with {ENV_EXACT_CAP})"
        )
    dist = joint_pmf(params)
    active = marginal_pmf(params, Side.ACTIVE)
    passive = marginal_pmf(params, Side.PASSIVE)

    if args.format == "json":
        payload = {
            "params": _params_json(params),
            "mode": "exact",
            "result": {
                "joint": [
                    {"a": a, "b": b, "prob": _json_frac(dist.pmf[a][b])}
                    for a in range(params.n)
                    for b in range(params.m)
                ],
                "marginal_active": [
                    {"degree": a, "prob": _json_frac(v)} for a, v in enumerate(active.pmf)
                ],
                "marginal_passive": [
                    {"degree": b, "prob": _json_frac(v)} for b, v in enumerate(passive.pmf)
                ],
            },
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
        return EXIT_OK

    lines = ["a,b,prob_rational,prob_decimal"]
    for a in range(params.n):
        for b in range(params.m):
            v = dist.pmf[a][b]
            lines.append(f"{a},{b},{_frac(v)},{_dec(v)}")
    lines.append("")
    lines.append("side,degree,prob_rational,prob_decimal")
    for side_name, marg in (("active", active), ("passive", passive)):
        for degree, v in enumerate(marg.pmf):
            lines.append(f"{side_name},{degree},{_frac(v)},{_dec(v)}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_moments(args) -> int:
    params = _build_params(args)
    mode = Mode.EXACT if args.mode == "exact" else Mode.FLOAT
    summary = moments(params, mode)
    fields = [
        ("mean_x", summary.mean_x),
        ("mean_y", summary.mean_y),
        ("var_x", summary.var_x),
        ("var_y", summary.var_y),
        ("cov", summary.cov),
    ]

    if args.format == "json":
        result = {
            name: _json_frac(value) if mode is Mode.EXACT else float(value)
            for name, value in fields
        }
        result["corr"] = "undefined" if summary.corr is None else summary.corr
        payload = {"params": _params_json(params), "mode": mode.value, "result": result}
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
        return EXIT_OK

    lines = ["quantity,value_rational,value_decimal"]
    for name, value in fields:
        rational = _frac(value) if mode is Mode.EXACT else ""
        lines.append(f"{name},{rational},{_dec(value)}")
    corr = "undefined" if summary.corr is None else _dec(summary.corr)
    lines.append(f"corr,,{corr}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_simulate(args) -> int:
    params = _build_params(args)
    if args.trials < 1:
        raise ValueError("--trials must be at least 1")
    emp = empirical_joint(params, args.trials, args.seed)

    cap = _exact_cap()
    metrics = None
    if params.n <= cap and params.m <= cap:
        dist = joint_pmf(params)
        tv = tv_distance(dist, emp)
        try:
            statistic, dof = chi_square(dist, emp)
            metrics = (tv, _dec(statistic), str(dof))
        except ValueError:
            metrics = (tv, "undefined", "undefined")

    if args.format == "json":
        result = {
            "counts": [list(row) for row in emp.counts],
            "trials": emp.trials,
            "seed": emp.seed,
        }
        if metrics is not None:
            tv, stat, dof = metrics
            result["tv_distance"] = tv
            result["chi_square_statistic"] = stat
            result["chi_square_dof"] = dof
        payload = {"params": _params_json(params), "mode": "exact", "result": result}
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
        return EXIT_OK

    lines = ["x,y,count"]
    for x in range(params.n):
        for y in range(params.m):
            lines.append(f"{x},{y},{emp.counts[x][y]}")
    lines.append("")
    lines.append("metric,value")
    lines.append(f"trials,{emp.trials}")
    lines.append(f"seed,{emp.seed}")
    if metrics is not None:
        tv, stat, dof = metrics
        lines.append(f"tv_distance,{_dec(tv)}")
        lines.append(f"chi_square_statistic,{stat}")
        lines.append(f"chi_square_dof,{dof}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    _require_exact(args, "verify")
    params = _build_params(args)
    if params.n * params.m > ENUMERATION_CAP:
        raise SizeCapError(
            f"verify enumerates all graphs and needs n*m <= {ENUMERATION_CAP}"
        )

    checks = []

    dist = joint_pmf(params)
    oracle = exhaustive_joint(params)
    checks.append(("enumeration_vs_formula", dist.pmf == oracle.pmf))

    recomb_ok = True
    for k in range(params.n):
        for l in range(params.m):
            lhs, rhs = recombination_check(params, k, l)
            if lhs != rhs:
                recomb_ok = False
    checks.append(("edge_split_recombination", recomb_ok))

    table = moment_table(params)
    transform_ok = True
    for x, y in _VERIFY_POINTS:
        direct = eval_joint_pgf(params, x, y)
        via_table = (
            x ** (params.n - 1)
            * y ** (params.m - 1)
            * sum(
                table.entries[k][l] * (1 / x - 1) ** k * (1 / y - 1) ** l
                for k in range(params.n)
                for l in range(params.m)
            )
        )
        if direct != via_table:
            transform_ok = False
    checks.append(("pgf_transform_identity", transform_ok))

    all_ok = all(ok for _, ok in checks)
    if args.format == "json":
        payload = {
            "params": _params_json(params),
            "mode": "exact",
            "checks": [
                {"name": name, "status": "PASS" if ok else "FAIL"} for name, ok in checks
            ],
            "result": "PASS" if all_ok else "FAIL",
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
    else:
        lines = ["check,status"]
        for name, ok in checks:
            lines.append(f"{name},{'PASS' if ok else 'FAIL'}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def _parse_grid(text: str) -> list:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"--p-grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (Fraction(part) for part in parts)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"--p-grid has a non-numeric component: {text!r}")
    if step <= 0:
        raise ValueError("--p-grid step must be positive")
    if start > stop:
        raise ValueError("--p-grid start must not exceed stop")
    if start < 0 or stop > 1:
        raise ValueError("--p-grid must stay within [0, 1]")
    values = []
    value = start
    while value <= stop:
        values.append(value)
        value += step
    return values


def cmd_scan(args) -> int:
    if args.n < 1 or args.m < 1:
        raise ValueError("--n and --m must be at least 1")
    grid = _parse_grid(args.p_grid)
    mode = Mode.EXACT if args.mode == "exact" else Mode.FLOAT
    rows = []
    for p in grid:
        summary = moments(ModelParams(args.n, args.m, p), mode)
        rows.append((p, summary))

    if args.format == "json":
        result = []
        for p, s in rows:
            entry = {"p": _json_frac(p)}
            for name in ("mean_x", "mean_y", "cov"):
                value = getattr(s, name)
                entry[name] = _json_frac(value) if mode is Mode.EXACT else float(value)
            entry["corr"] = "undefined" if s.corr is None else s.corr
            result.append(entry)
        payload = {
            "params": {"n": args.n, "m": args.m, "p_grid": args.p_grid},
            "mode": mode.value,
            "result": result,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
        return EXIT_OK

    lines = ["p,mean_x,mean_y,cov,corr"]
    for p, s in rows:
        corr = "undefined" if s.corr is None else _dec(s.corr)
        lines.append(f"{_dec(p)},{_dec(s.mean_x)},{_dec(s.mean_y)},{_dec(s.cov)},{corr}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _add_common(parser, with_p=True, with_mode=True):
    parser.add_argument("--n", type=int, required=True, help="number of vertices")
    parser.add_argument("--m", type=int, required=True, help="number of objects")
    if with_p:
        parser.add_argument("--p", required=True, help="edge probability, 'a/b' or decimal")
    if with_mode:
        parser.add_argument("--mode", choices=["exact", "float"], default="exact")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--output", default=None, help="write to file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigjoint",
        description="Exact joint degree law of the two projections of a random bipartite graph",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_pmf = sub.add_parser("pmf", help="exact joint pmf with both marginals")
    _add_common(p_pmf)
    p_pmf.set_defaults(func=cmd_pmf)

    p_mom = sub.add_parser("moments", help="means, variances, covariance, correlation")
    _add_common(p_mom)
    p_mom.set_defaults(func=cmd_moments)

    p_sim = sub.add_parser("simulate", help="seeded Monte Carlo tallies plus fit metrics")
    _add_common(p_sim, with_mode=False)
    p_sim.add_argument("--trials", type=int, required=True)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.set_defaults(func=cmd_simulate)

    p_ver = sub.add_parser("verify", help="check the formulas against full enumeration")
    _add_common(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    p_scan = sub.add_parser("scan", help="sweep moments over a grid of p values")
    _add_common(p_scan, with_p=False)
    p_scan.add_argument("--p-grid", required=True, help="start:stop:step, e.g. 0:1:0.05")
    p_scan.set_defaults(func=cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the diagnostic
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
