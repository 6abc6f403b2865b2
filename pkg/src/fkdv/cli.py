"""Command-line front end: balance, derive, solve, verify, reproduce.

Exit codes: 0 success, 1 failed verification verdicts, 2 usage or balance
failure, 3 fixture mismatch, 4 inconclusive sampling, 5 internal invariant
breach.  JSON documents embed the run manifest and are byte-stable for a
fixed manifest and seed (the timestamp field stays null unless supplied).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, closedform, fixtures, pre, tanh
from .equation import EquationSpec, ito
from .errors import BalanceError, FkdvError, InternalInvariantError
from .reproduce import (
    PRE_UNKNOWNS,
    TANH_UNKNOWNS,
    branch_json,
    system_json,
    derive_pre_system,
    derive_tanh_system,
    run_reproduce,
    solve_pre,
    solve_tanh,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_FIXTURE = 3
EXIT_INCONCLUSIVE = 4
EXIT_INTERNAL = 5


def _say(args, text: str) -> None:
    """Human-readable line; moves to stderr when the JSON goes to stdout."""
    stream = sys.stderr if getattr(args, "json", None) == "-" else sys.stdout
    print(text, file=stream)


def _spec_from_args(args) -> EquationSpec:
    if args.preset == "ito":
        return ito()
    vals = {}
    for name in ("alpha", "beta", "gamma", "omega"):
        raw = getattr(args, name)
        if raw is None:
            raise BalanceError(f"--{name} is required without --preset ito")
        vals[name] = Fraction(raw)
    return EquationSpec(**vals)


def _manifest(args, command: str, method: str | None, lambdas: list[str], seed=None):
    spec = _spec_from_args(args) if hasattr(args, "preset") else ito()
    return {
        "command": command,
        "equation": {
            "alpha": str(spec.alpha),
            "beta": str(spec.beta),
            "gamma": str(spec.gamma),
            "omega": str(spec.omega),
        },
        "method": method,
        "lambda_values": lambdas,
        "seed": seed,
        "tool_version": __version__,
        "timestamp": getattr(args, "timestamp", None),
    }


def _emit_json(args, doc: dict) -> None:
    if not getattr(args, "json", None):
        return
    text = json.dumps(doc, indent=2) + "\n"
    if args.json == "-":
        sys.stdout.write(text)
    else:
        _out_path(args, args.json).write_text(text)


def _out_path(args, name: str) -> Path:
    path = Path(name)
    out_dir = getattr(args, "out_dir", None)
    if out_dir and not path.is_absolute():
        path = Path(out_dir) / path
        path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _emit_latex(args, text: str) -> None:
    if not getattr(args, "latex", None):
        return
    if args.latex == "-":
        sys.stdout.write(text)
    else:
        _out_path(args, args.latex).write_text(text)


def cmd_balance(args) -> int:
    spec = _spec_from_args(args)
    terms = tanh.balance_terms_for(spec)
    for t in terms:
        _say(args, f"  {t.label:<14} order {t.order_str()}")
    m = tanh.balance_M(terms)
    _say(args, f"balanced ansatz order M = {m}")
    doc = {"schema": 1, "manifest": _manifest(args, "balance", None, []), "M": m,
           "orders": [{"term": t.label, "order": t.order_str()} for t in terms]}
    _emit_json(args, doc)
    return EXIT_OK


def cmd_derive(args) -> int:
    spec = _spec_from_args(args)
    if args.method == "tanh":
        order = args.order if args.order is not None else tanh.balance_M(
            tanh.balance_terms_for(spec)
        )
        system = tanh.extract_system(tanh.ode_residual(spec, tanh.build_ansatz(order)))
        label = "phi"
    else:
        order = args.order if args.order is not None else 1
        system = pre.extract_pre_system(
            pre.pre_ode_residual(spec, pre.build_pre_ansatz(order))
        )
        label = "sigma/tau"
    _say(args, f"{args.method} system at order {order}: {len(system)} equations")
    for eq in system:
        tag = f"phi^{eq.power}" if eq.tau_degree is None else (
            f"sigma^{eq.power}*tau^{eq.tau_degree}"
        )
        _say(args, f"  [{tag}] {eq.poly.ascii()} = 0")
    doc = {
        "schema": 1,
        "manifest": _manifest(args, "derive", args.method, []),
        "order": order,
        "systems": system_json(system),
    }
    latex_lines = [r"\begin{align*}"]
    for eq in system:
        head = (
            rf"\varphi^{{{eq.power}}}"
            if eq.tau_degree is None
            else rf"\sigma^{{{eq.power}}}\tau^{{{eq.tau_degree}}}"
        )
        latex_lines.append(rf"{head}:\quad & {eq.poly.latex()} = 0 \\")
    latex_lines.append(r"\end{align*}")
    _emit_latex(args, "\n".join(latex_lines) + "\n")

    if args.check_fixture:
        if spec != ito() or order != (2 if args.method == "tanh" else 1):
            print("no transcription exists for this equation/order", file=sys.stderr)
            return EXIT_USAGE
        diffs = fixtures.compare_systems(system, fixtures.load_fixture(args.method))
        doc["fixture"] = {
            "checked": True,
            "ok": not diffs,
            "diffs": [d.describe() for d in diffs],
        }
        _emit_json(args, doc)
        if diffs:
            print("fixture mismatch:", file=sys.stderr)
            for d in diffs:
                print("  " + d.describe(), file=sys.stderr)
            return EXIT_FIXTURE
        _say(args, "fixture check: derived system matches the transcription")
        return EXIT_OK
    _emit_json(args, doc)
    return EXIT_OK


def cmd_solve(args) -> int:
    lam = Fraction(args.lam)
    if args.method == "tanh":
        _, system = derive_tanh_system()
        branches = solve_tanh(system, lam, args.budget)
        unknowns = TANH_UNKNOWNS
    else:
        system = derive_pre_system(1)
        branches = solve_pre(system, lam, e=args.e, rho=args.rho, budget=args.budget)
        unknowns = PRE_UNKNOWNS
    counts: dict[str, int] = {}
    for br in branches:
        counts[br.status] = counts.get(br.status, 0) + 1
    _say(
        args,
        f"{args.method} solve at lambda = {lam}: {len(branches)} branches "
        + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())),
    )
    for br in branches:
        binds = ", ".join(f"{s.name}={v}" for s, v in br.assignment.items())
        extra = ""
        if br.free_symbols:
            extra = " free: " + ",".join(s.name for s in br.free_symbols)
        if br.witness is not None:
            extra += f" witness: {br.witness.ascii()}"
        _say(args, f"  [{br.status}] {{{binds}}}{extra}")
    doc = {
        "schema": 1,
        "manifest": _manifest(
            args, "solve", args.method, [str(lam)], seed=None
        ),
        "unknowns": [s.name for s in unknowns],
        "branches": [branch_json(br) for br in branches],
    }
    if args.method == "pre":
        doc["signs"] = {"e": args.e, "rho": args.rho}
    _emit_json(args, doc)
    return EXIT_OK


def cmd_verify(args) -> int:
    known = [rec.id for rec in closedform.catalog()]
    ids = known if args.all else args.ids
    if not ids:
        print("give solution ids (u1..u10) or --all", file=sys.stderr)
        return EXIT_USAGE
    bad = [sid for sid in ids if sid not in known]
    if bad:
        print(f"unknown solution ids: {', '.join(bad)} (u1..u10)", file=sys.stderr)
        return EXIT_USAGE
    lambdas = [float(v) for v in args.lam] if args.lam else [-6.0]
    if any(v >= 0 for v in lambdas):
        print("verification requires lambda < 0", file=sys.stderr)
        return EXIT_USAGE
    plan = closedform.SamplePlan(seed=args.seed, count=args.samples)
    reports = []
    worst_exit = EXIT_OK
    for lam in lambdas:
        for sid in ids:
            rep = closedform.sample_report(sid, lam, plan)
            reports.append(rep.as_json())
            mr = "n/a" if rep.max_relative_residual is None else f"{rep.max_relative_residual:.3e}"
            _say(
                args,
                f"  {sid:>4} lambda={lam:<8g} verdict={rep.verdict:<12} "
                f"max-rel-residual={mr} rejected={rep.rejected_samples}",
            )
            if rep.verdict == "inconclusive":
                worst_exit = EXIT_INCONCLUSIVE
            elif rep.verdict == "fail" and worst_exit == EXIT_OK:
                worst_exit = EXIT_FAILED
    doc = {
        "schema": 1,
        "manifest": _manifest(args, "verify", None, [str(v) for v in lambdas], args.seed),
        "reports": reports,
    }
    if args.compare:
        if len(ids) != 2:
            print("--compare needs exactly two solution ids", file=sys.stderr)
            return EXIT_USAGE
        comparisons = []
        for lam in lambdas:
            d, n = closedform.pointwise_compare(ids[0], ids[1], lam, plan)
            comparisons.append(
                {"pair": ids, "lambda": lam, "max_rel_diff": d, "samples": n}
            )
            note = "pointwise equal" if d <= 1e-10 else "pointwise DIFFERENT"
            _say(args, f"  {ids[0]} vs {ids[1]} at lambda={lam:g}: {note} (max diff {d:.3e})")
        doc["comparisons"] = comparisons
    _emit_json(args, doc)
    return worst_exit


def cmd_reproduce(args) -> int:
    result = run_reproduce(
        grid_depth=args.lambda_grid_depth,
        seed=args.seed,
        timestamp=args.timestamp,
        tool_version=__version__,
        budget=args.budget,
    )
    for s in result.doc["stages"]:
        mark = "ok " if s["ok"] else "FAIL"
        _say(args, f"  [{mark}] {s['stage']}: {s['detail']}")
    _say(args, "reproduction " + ("succeeded" if result.exit_code == 0 else "FAILED"))
    _emit_json(args, result.doc)
    _emit_latex(args, result.latex)
    return result.exit_code


def _add_spec_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=["ito"], help="named coefficient set")
    p.add_argument("--alpha", help="coefficient of u^2*u_x (rational)")
    p.add_argument("--beta", help="coefficient of u_x*u_xx (rational)")
    p.add_argument("--gamma", help="coefficient of u*u_xxx (rational)")
    p.add_argument("--omega", help="coefficient of u_xxxxx (rational, nonzero)")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", metavar="PATH", help="write a JSON report ('-' = stdout)")
    p.add_argument("--out-dir", metavar="DIR", help="directory for relative output paths")
    p.add_argument("--timestamp", help="manifest timestamp (omitted = null, keeps output reproducible)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fkdv",
        description="Exact tanh / projective-Riccati traveling-wave engine "
        "for the fifth-order KdV family.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("balance", help="resolve the ansatz order M")
    _add_spec_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("derive", help="expand the residual and extract the system")
    p.add_argument("--method", choices=["tanh", "pre"], required=True)
    _add_spec_flags(p)
    p.add_argument("--order", "--m", "--M", dest="order", type=int,
                   help="ansatz order (default: balanced M for tanh, 1 for pre)")
    p.add_argument("--check-fixture", action="store_true",
                   help="compare against the shipped transcription")
    p.add_argument("--latex", metavar="PATH", help="write LaTeX ('-' = stdout)")
    _add_output_flags(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("solve", help="branch-solve a derived system at rational lambda")
    p.add_argument("--method", choices=["tanh", "pre"], required=True)
    p.add_argument("--lambda", dest="lam", required=True, help="rational wave speed")
    p.add_argument("--e", type=int, choices=[-1, 1], default=1)
    p.add_argument("--rho", type=int, choices=[-1, 1], default=-1)
    p.add_argument("--budget", type=int, default=10000)
    _add_output_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="sample PDE residuals of catalog solutions")
    p.add_argument("ids", nargs="*", help="solution ids u1..u10")
    p.add_argument("--all", action="store_true")
    p.add_argument("--lambda", dest="lam", action="append", help="negative wave speed (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--compare", action="store_true",
                   help="also compare two ids pointwise")
    _add_output_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="run the full end-to-end reproduction")
    p.add_argument("--lambda-grid-depth", type=int, default=3)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--budget", type=int, default=10000)
    p.add_argument("--latex", metavar="PATH", help="write the LaTeX appendix")
    _add_output_flags(p)
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BalanceError as exc:
        print(f"balance error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInvariantError as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (FkdvError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
