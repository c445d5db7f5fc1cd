"""Command-line interface.

Subcommands::

    ipsupport analyze FILE
    ipsupport sparsify FILE [--solution FILE|INLINE] [--mode optimal|feasible]
    ipsupport generate --kind primorial --k K --m M [--n N] [--out F]
    ipsupport generate --kind random --m M --n N --amax A --seed S [--out F]
    ipsupport verify FILE [--box B] [--any-sign]
    ipsupport bench --count C --m M --n N --amax A --seed S [--out F]

Reports are JSON on stdout unless ``--out`` is given.  Exit status is 0 when
every verdict passes, 1 when some verdict fails and 2 on input errors.
Reports are byte-identical across runs unless ``--timing`` is given.
The oracle enumeration budget defaults to 10**8 points and can be
overridden with ``--budget`` or the ``IPSUPPORT_BUDGET`` environment variable.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import sys
import time
from collections import Counter
from pathlib import Path
from typing import Sequence

from . import __version__
from .bounds import (
    feasibility_support_bound,
    lower_bound_formula,
    mixed_integer_support_bound,
    optimality_support_bound,
    simplified_bound_holds,
    support_within_bound,
    vertex_count_bound,
)
from .errors import IPSupportError, RankDeficient
from .instances import corpus_parameters, primorial_instance, random_instance
from .io import dump_instance, dumps, load_instance, parse_solution_arg
from .linalg import rank, remove_dependent_rows
from .model import Instance
from .oracle import (
    brute_force_min_support_any_sign,
    brute_force_optimize,
    budget_from_env,
    check_nonoptimal_start,
    verify_support_bound,
)
from .sparsifier import DEFAULT_SIGN_BUDGET, Mode, Outcome, sparsify

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _error_report(command: dict, exc: Exception, **extra) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    for attr in ("row", "column", "size", "budget"):
        val = getattr(exc, attr, None)
        if val is not None:
            err[attr] = val if isinstance(val, int) and val < 2**53 else str(val)
    return {"command": command, "passed": False, "error": err, **extra}


def _bounds_section(A) -> dict:
    opt = optimality_support_bound(A)
    d = {
        "optimality": opt.to_dict(),
        "feasibility": feasibility_support_bound(A).to_dict(),
        "mixed_integer": mixed_integer_support_bound(A).to_dict(),
        "vertex_count_bound": str(vertex_count_bound(A)),
        "simplified_bound_holds": simplified_bound_holds(A),
        "float_fields_are_approximate": True,
    }
    return d


def cmd_analyze(args) -> tuple[dict, int]:
    command = {"name": "analyze", "file": args.file, "epsilon": args.epsilon}
    inst, solution, _ = load_instance(args.file)
    try:
        bounds = _bounds_section(inst.A)
    except RankDeficient as exc:
        extra = {"rank": rank(inst.A), "m": inst.m, "n": inst.n}
        try:
            A_red, _ = remove_dependent_rows(inst.A, inst.b)
            extra["row_reduced_bounds"] = _bounds_section(A_red)
        except IPSupportError as inner:
            extra["row_reduction_error"] = {"type": type(inner).__name__, "message": str(inner)}
        return _error_report(command, exc, **extra), EXIT_FAIL
    a = inst.A.max_abs()
    report = {
        "command": command,
        "m": inst.m,
        "n": inst.n,
        "bounds": bounds,
        "lower_bound_formula": (
            lower_bound_formula(inst.m, a, args.epsilon) if a >= 2 else None
        ),
        "passed": bounds["simplified_bound_holds"],
    }
    if solution is not None:
        report["solution"] = {
            "support_size": solution.support_size,
            "feasible": inst.is_feasible(solution.x),
            "within_optimality_bound": support_within_bound(solution.support_size, inst.A),
        }
    return report, EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_sparsify(args) -> tuple[dict, int]:
    command = {"name": "sparsify", "file": args.file, "mode": args.mode,
               "solution": args.solution, "sign_budget": args.sign_budget}
    inst, file_solution, _ = load_instance(args.file)
    z = parse_solution_arg(args.solution) if args.solution else file_solution
    if z is None:
        raise IPSupportError("no solution given: pass --solution or include one in the file")
    out = sparsify(inst, z, args.mode, args.sign_budget)
    report = {
        "command": command,
        "input": {"support_size": z.support_size, "objective": str(inst.objective(z.x))},
        "outcome": out.to_dict(inst),
    }
    passed = False
    if out.tag is Outcome.SPARSIFIED:
        bound_fn = optimality_support_bound if Mode(args.mode) is Mode.OPTIMAL else feasibility_support_bound
        b = bound_fn(out.restricted)
        holds = support_within_bound(out.solution.support_size, out.restricted)
        report["final_bound"] = {
            "restricted_rows": out.restricted.rows,
            "bound_floor": b.opt_bound_floor,
            "within_bound": holds,
        }
        passed = holds and out.exhaustive
    report["passed"] = passed
    return report, EXIT_OK if passed else EXIT_FAIL


def cmd_generate(args) -> tuple[str, int]:
    if args.kind == "primorial":
        if args.k is None or args.m is None:
            raise IPSupportError("primorial generation needs --k and --m")
        p = primorial_instance(args.k, args.m, args.n)
        text = dump_instance(p.instance, p.witness, p.metadata())
    else:
        missing = [f for f in ("m", "n", "seed") if getattr(args, f) is None]
        if missing:
            raise IPSupportError(f"random generation needs --{', --'.join(missing)}")
        inst, x0 = random_instance(args.m, args.n, args.amax, args.seed)
        meta = {"generator": "random", "m": args.m, "n": args.n,
                "amax": args.amax, "seed": args.seed}
        text = dump_instance(inst, x0, meta)
    return text, EXIT_OK


def _default_box(inst: Instance, metadata: dict, any_sign: bool) -> int | None:
    if any_sign:
        lam = metadata.get("lambda")
        if lam:
            return 5 * max(abs(int(v)) for v in lam)
        return None
    # smallest box holding every feasible point, certified by a positive row
    best = None
    for i in range(inst.m):
        row, rhs = inst.A.row(i), inst.b[i]
        if all(a < 0 for a in row):
            row, rhs = [-a for a in row], -rhs
        if all(a > 0 for a in row):
            box = max(max(rhs, 0) // a for a in row)
            best = box if best is None else min(best, box)
    return best


def cmd_verify(args) -> tuple[dict, int]:
    inst, _, metadata = load_instance(args.file)
    box = args.box if args.box is not None else _default_box(inst, metadata, args.any_sign)
    command = {"name": "verify", "file": args.file, "box": box, "any_sign": args.any_sign}
    if box is None:
        raise IPSupportError("no --box given and none can be derived from the instance")
    budget = args.budget if args.budget is not None else budget_from_env()
    if args.any_sign:
        s = brute_force_min_support_any_sign(inst.A, inst.b, box, budget)
        report = {"command": command, "min_support_any_sign": s}
        if "k" in metadata and "m" in metadata:
            expected = int(metadata["k"]) * int(metadata["m"])
            report["expected_min_support"] = expected
            passed = s == expected
        else:
            passed = s is not None
        report["passed"] = passed
        return report, EXIT_OK if passed else EXIT_FAIL
    v = verify_support_bound(inst, box, budget, args.sign_budget)
    report = {"command": command, "support_bound": v.to_dict(), "passed": v.passed}
    return report, EXIT_OK if v.passed else EXIT_FAIL


CSV_FIELDS = [
    "index", "seed", "m", "n", "a_inf", "box", "feasible_count", "optimal_value",
    "min_support", "bound_floor", "slack", "sparsified_support", "sparsified_bound_floor",
    "bound_passed", "nonoptimal_applicable", "nonoptimal_tag", "nonoptimal_passed",
]


def run_bench(count: int, m: int, n: int, amax: int, seed: int, budget: int,
              sign_budget: int = DEFAULT_SIGN_BUDGET) -> tuple[dict, list[dict]]:
    """Corpus run behind ``bench``; returns the JSON report and CSV rows."""
    rows: list[dict] = []
    failures = []
    slack_hist: Counter = Counter()
    n_bound = n_no = n_no_app = 0
    for index, mi, ni, sub in corpus_parameters(count, seed, m, n):
        try:
            inst, _ = random_instance(mi, ni, amax, sub)
        except IPSupportError as exc:
            failures.append({"index": index, "seed": sub, "error": type(exc).__name__,
                             "message": str(exc)})
            continue
        box = inst.b[0]
        res = brute_force_optimize(inst, box, budget)
        v = verify_support_bound(inst, box, budget, sign_budget, oracle=res)
        chk = check_nonoptimal_start(inst, res, sign_budget)
        n_bound += v.passed
        n_no_app += chk.applicable
        n_no += chk.applicable and chk.passed
        if v.slack is not None:
            slack_hist[v.slack] += 1
        if not (v.passed and chk.passed):
            failures.append({"index": index, "seed": sub, "reason": v.reason,
                             "nonoptimal": chk.to_dict()})
        rows.append({
            "index": index, "seed": sub, "m": inst.m, "n": inst.n,
            "a_inf": inst.A.max_abs(), "box": box, "feasible_count": v.feasible_count,
            "optimal_value": v.optimal_value, "min_support": v.min_support,
            "bound_floor": v.bound_floor, "slack": v.slack,
            "sparsified_support": v.sparsify_support,
            "sparsified_bound_floor": v.sparsify_bound_floor,
            "bound_passed": v.passed, "nonoptimal_applicable": chk.applicable,
            "nonoptimal_tag": chk.tag, "nonoptimal_passed": chk.passed,
        })
    report = {
        "count": count,
        "bound_passed": n_bound,
        "bound_pass_rate": (n_bound / count) if count else 1.0,
        "nonoptimal_applicable": n_no_app,
        "nonoptimal_passed": n_no,
        "nonoptimal_pass_rate": (n_no / n_no_app) if n_no_app else 1.0,
        "slack_histogram": {str(k): slack_hist[k] for k in sorted(slack_hist)},
        "failures": failures,
        "passed": not failures,
    }
    return report, rows


def rows_to_csv(rows: Sequence[dict]) -> str:
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def cmd_bench(args) -> tuple[dict, int]:
    command = {"name": "bench", "count": args.count, "m": args.m, "n": args.n,
               "amax": args.amax, "seed": args.seed}
    budget = args.budget if args.budget is not None else budget_from_env()
    summary, rows = run_bench(args.count, args.m, args.n, args.amax, args.seed,
                              budget, args.sign_budget)
    csv_path = args.csv
    if csv_path is None and args.out:
        csv_path = str(Path(args.out).with_suffix(".csv"))
    if csv_path:
        Path(csv_path).write_text(rows_to_csv(rows))
    report = {"command": command, **summary, "csv": csv_path}
    return report, EXIT_OK if summary["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ipsupport", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out=True):
        if out:
            sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--timing", action="store_true",
                        help="add wall-clock timing (makes reports non-reproducible)")

    sp = sub.add_parser("analyze", help="compute every support bound for an instance")
    sp.add_argument("file")
    sp.add_argument("--epsilon", type=float, default=1.0,
                    help="epsilon for the lower-bound formula (default 1.0)")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("sparsify", help="reduce the support of a feasible point")
    sp.add_argument("file")
    sp.add_argument("--solution", help="solution file or inline list such as 1,1,0")
    sp.add_argument("--mode", choices=[m.value for m in Mode], default="optimal")
    sp.add_argument("--sign-budget", type=int, default=DEFAULT_SIGN_BUDGET,
                    help=f"max columns for exhaustive sign-vector search (default {DEFAULT_SIGN_BUDGET})")
    common(sp)
    sp.set_defaults(func=cmd_sparsify)

    sp = sub.add_parser("generate", help="write an instance file")
    sp.add_argument("--kind", choices=["primorial", "random"], required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--amax", type=int, default=3)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out", help="write the instance here instead of stdout")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("verify", help="check the support bounds against brute force")
    sp.add_argument("file")
    sp.add_argument("--box", type=int,
                    help="enumeration box (default: derived from a positive row, "
                         "or 5*max|lambda| with --any-sign)")
    sp.add_argument("--any-sign", action="store_true",
                    help="minimum support over all integer solutions of Az=b")
    sp.add_argument("--budget", type=int, help="enumeration budget (default 1e8 or $IPSUPPORT_BUDGET)")
    sp.add_argument("--sign-budget", type=int, default=DEFAULT_SIGN_BUDGET)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="verify a seeded random corpus")
    sp.add_argument("--count", type=int, default=500)
    sp.add_argument("--m", type=int, default=3, help="largest row count (default 3)")
    sp.add_argument("--n", type=int, default=7, help="largest column count (default 7)")
    sp.add_argument("--amax", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--csv", help="CSV path (default: --out with .csv suffix)")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--sign-budget", type=int, default=DEFAULT_SIGN_BUDGET)
    common(sp)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    command = {"name": args.command}
    start = time.perf_counter()
    try:
        result, code = args.func(args)
    except IPSupportError as exc:
        result, code = _error_report(command, exc), EXIT_ERROR
    if isinstance(result, str):
        _emit(result, getattr(args, "out", None))
        return code
    if getattr(args, "timing", False):
        result["timing_seconds"] = time.perf_counter() - start
    _emit(dumps(result), getattr(args, "out", None))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
