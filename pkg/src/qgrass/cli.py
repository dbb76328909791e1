"""Command-line front end: ``qgrass <subcommand> [flags]``.

Exit codes: 0 when every requested check passes, 1 on a failed check,
2 on bad flags (including a non-prime ``q`` for geometric commands) and
3 when an enumeration would exceed the point budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any

from .errors import BudgetExceeded, DimensionError
from .exact import QuadExt, format_quad, format_rat
from .geometry import grassmann_space, is_prime
from .kernels import FORMS, mu_eigenvalue, n_max, qhahn_kernel, rodrigues_eval
from .laplacians import graph_laplacian, group_laplacian, spectrum_multiplicities, valence
from .qcomb import QContext, count_pairs_at_distance, dim_irrep, index_range, q_binomial
from .suites import FORMULA_SUITES, SUITES, Check

PRIME_MESSAGE = "q must be prime for geometric commands"


class UsageError(Exception):
    pass


def serialize(value: Any) -> Any:
    """Exact values become strings; containers are converted element-wise."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, Fraction)):
        return format_rat(Fraction(value))
    if isinstance(value, QuadExt):
        return format_quad(value)
    if isinstance(value, dict):
        return {str(k): serialize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [serialize(v) for v in value]
    return str(value)


def _check_dict(check: Check, prefix: str | None = None) -> dict:
    out = {
        "name": f"{prefix}/{check.name}" if prefix else check.name,
        "params": {k: serialize(v) if not isinstance(v, str) else v for k, v in check.params.items()},
        "status": "pass" if check.status else "fail",
        "lhs": serialize(check.lhs),
        "rhs": serialize(check.rhs),
    }
    if check.constant is not None:
        out["constant"] = serialize(check.constant)
    if check.note:
        out["note"] = check.note
    return out


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def emit_rows(header: list[str], rows: list[list], fmt: str, meta: dict, stream) -> None:
    rows = [[serialize(v) for v in row] for row in rows]
    if fmt == "json":
        payload = dict(meta)
        payload["rows"] = [dict(zip(header, row)) for row in rows]
        stream.write(json.dumps(payload, indent=2) + "\n")
    elif fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([[_cell(v) for v in row] for row in rows])
    else:
        cells = [header] + [[_cell(v) for v in row] for row in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
        for r in cells:
            stream.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def emit_report(report: dict, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(report, indent=2) + "\n")
        return
    header = ["name", "params", "status", "lhs", "rhs", "constant"]
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for c in report["checks"]:
            writer.writerow([_cell(c.get(h)) for h in header])
        return
    passed = sum(c["status"] == "pass" for c in report["checks"])
    for c in report["checks"]:
        params = ",".join(f"{k}={v}" for k, v in c["params"].items())
        line = f"{c['status'].upper():4}  {c['name']}({params})"
        if "constant" in c:
            line += f"  constant={_cell(c['constant'])}"
        if c["status"] == "fail":
            line += f"  lhs={_cell(c['lhs'])} rhs={_cell(c['rhs'])}"
        stream.write(line + "\n")
    timing = "" if report["elapsed_ms"] is None else f" in {report['elapsed_ms']} ms"
    stream.write(
        f"suite {report['suite']} q={report['q']} n={report['n']}: {passed}/{len(report['checks'])} passed{timing}\n"
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _ctx(args) -> QContext:
    try:
        return QContext(args.q, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _require_prime(q: int):
    if not is_prime(q):
        raise UsageError(f"{PRIME_MESSAGE} (got {q})")


def _level(args, name: str, n: int) -> int:
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required")
    if not 0 <= value <= n:
        raise UsageError(f"--{name}={value} outside 0..{n}")
    return value


def cmd_qbinom(args, out) -> int:
    if args.q < 2:
        raise UsageError("q must be >= 2")
    value = q_binomial(args.m, args.k, args.q)
    if args.format == "table":
        out.write(format_rat(value) + "\n")
    else:
        emit_rows(["m", "k", "value"], [[args.m, args.k, value]], args.format, {"q": args.q}, out)
    return 0


def cmd_counts(args, out) -> int:
    ctx = _ctx(args)
    n = ctx.n
    rows = []
    pairs = [(args.r1, args.r2)] if args.r1 is not None and args.r2 is not None else [
        (a, b) for a in range(n + 1) for b in range(n + 1)
    ]
    for r1, r2 in pairs:
        if not (0 <= r1 <= n and 0 <= r2 <= n):
            raise UsageError("levels outside 0..n")
        for t in index_range(n, r1, r2):
            rows.append([r1, r2, t, count_pairs_at_distance(r1, r2, t, ctx)])
    emit_rows(["r1", "r2", "t", "pairs"], rows, args.format, {"q": ctx.q, "n": n}, out)
    return 0


def cmd_enumerate(args, out) -> int:
    _require_prime(args.q)
    ctx = _ctx(args)
    r = _level(args, "r", ctx.n)
    space = grassmann_space(ctx.q, ctx.n, r)
    rows = [[i, ";".join("".join(str(v) for v in row) for row in x.rows)] for i, x in enumerate(space.points)]
    emit_rows(["index", "rref"], rows, args.format, {"q": ctx.q, "n": ctx.n, "r": r, "size": len(space)}, out)
    return 0


def cmd_laplacian(args, out) -> int:
    _require_prime(args.q)
    ctx = _ctx(args)
    r = _level(args, "r", ctx.n)
    space = grassmann_space(ctx.q, ctx.n, r)
    mat = group_laplacian(space) if args.group else graph_laplacian(space)
    header = ["x"] + [str(j) for j in range(len(space))]
    rows = [[i] + list(mat.row(i)) for i in range(len(space))]
    meta = {"q": ctx.q, "n": ctx.n, "r": r, "kind": "group" if args.group else "graph", "valence": format_rat(valence(r, ctx))}
    emit_rows(header, rows, args.format, meta, out)
    return 0


def cmd_spectrum(args, out) -> int:
    _require_prime(args.q)
    ctx = _ctx(args)
    r = _level(args, "r", ctx.n)
    space = grassmann_space(ctx.q, ctx.n, r)
    top = min(r, ctx.n - r)
    eig = [-mu_eigenvalue(ctx, s) for s in range(top + 1)]
    mult = spectrum_multiplicities(space, eig)
    rows = [[s, e, dim_irrep(s, ctx), m] for s, (e, m) in enumerate(zip(eig, mult))]
    emit_rows(["s", "eigenvalue", "predicted", "nullity"], rows, args.format, {"q": ctx.q, "n": ctx.n, "r": r}, out)
    ok = all(row[2] == row[3] for row in rows) and sum(mult) == len(space)
    return 0 if ok else 1


def cmd_kernel(args, out) -> int:
    ctx = _ctx(args)
    r1, r2 = _level(args, "r1", ctx.n), _level(args, "r2", ctx.n)
    s = args.s
    if s is None or not 0 <= s <= n_max(ctx, r1, r2):
        raise UsageError(f"--s must lie in 0..{n_max(ctx, r1, r2)}")
    if args.form == "oracle":
        _require_prime(ctx.q)
        from .intertwiners import lambda_oracle_kernel

        kernel = lambda_oracle_kernel(ctx, r1, r2, s)
    elif args.form == "rodrigues":
        kernel = rodrigues_eval(ctx, r1, r2, s)
    else:
        kernel = qhahn_kernel(ctx, r1, r2, s, int(args.form))
    rows = [[t, kernel[t]] for t in kernel.index]
    meta = {"q": ctx.q, "n": ctx.n, "r1": r1, "r2": r2, "s": s, "form": args.form}
    emit_rows(["t", "value"], rows, args.format, meta, out)
    return 0


def cmd_radon(args, out) -> int:
    _require_prime(args.q)
    ctx = _ctx(args)
    r1, r2 = _level(args, "r1", ctx.n), _level(args, "r2", ctx.n)
    if r1 > r2:
        raise UsageError("radon needs r1 <= r2")
    from .intertwiners import canonical_operator, radon_decomposition, radon_subset
    from .exact import Mat

    src, dst = grassmann_space(ctx.q, ctx.n, r1), grassmann_space(ctx.q, ctx.n, r2)
    rad = radon_subset(src, dst).matrix
    weights = radon_decomposition(ctx, r1, r2)
    total = Mat.zeros(*rad.shape)
    for s, w in enumerate(weights):
        total = total + canonical_operator(ctx, r1, r2, s).matrix * w
    rows = [[s, w] for s, w in enumerate(weights)]
    meta = {"q": ctx.q, "n": ctx.n, "r1": r1, "r2": r2, "decomposition_holds": total == rad}
    emit_rows(["s", "weight"], rows, args.format, meta, out)
    return 0 if total == rad else 1


def _run_named(name: str, q: int, n: int) -> list[Check]:
    return SUITES[name](q, n)


def cmd_verify(args, out) -> int:
    ctx = _ctx(args)
    q, n = ctx.q, ctx.n
    if args.suite == "all":
        names = list(SUITES) if is_prime(q) else list(FORMULA_SUITES)
    elif args.suite in SUITES:
        names = [args.suite]
        if args.suite not in FORMULA_SUITES:
            _require_prime(q)
    else:
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    start = time.perf_counter()
    threads = max(1, args.threads)
    if threads > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda nm: _run_named(nm, q, n), names))
    else:
        results = [_run_named(nm, q, n) for nm in names]
    elapsed = round((time.perf_counter() - start) * 1000)
    prefix = len(names) > 1
    checks = [_check_dict(c, nm if prefix else None) for nm, res in zip(names, results) for c in res]
    report = {
        "suite": args.suite,
        "q": q,
        "n": n,
        "checks": checks,
        "elapsed_ms": None if args.no_timing else elapsed,
    }
    if args.suite == "all" and not is_prime(q):
        report["skipped"] = [nm for nm in SUITES if nm not in FORMULA_SUITES]
    emit_report(report, args.format, out)
    return 0 if all(c["status"] == "pass" for c in checks) else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, levels=()):
    p.add_argument("--q", "--p", dest="q", type=int, default=2, help="field size (default 2)")
    p.add_argument("--n", type=int, default=4, help="ambient dimension (default 4)")
    for name in levels:
        p.add_argument(f"--{name}", type=int, default=None)
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--budget", type=int, default=None, help="override the enumeration point budget")
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qgrass", description="Exact intertwiner computations on Grassmann graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qbinom", help="Gaussian binomial [m k]_q")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.set_defaults(func=cmd_qbinom)

    p = sub.add_parser("counts", help="pair counts by distance class")
    _common(p, ("r1", "r2"))
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("enumerate", help="list the r-subspaces of F_q^n")
    _common(p, ("r",))
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("laplacian", help="graph (or group) Laplacian matrix on X_r")
    _common(p, ("r",))
    p.add_argument("--group", action="store_true", help="use the transvection-group Laplacian")
    p.set_defaults(func=cmd_laplacian)

    p = sub.add_parser("spectrum", help="eigenvalue multiplicities of the graph Laplacian")
    _common(p, ("r",))
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("kernel", help="values of the intertwiner kernel lam_s^{r1,r2}")
    _common(p, ("r1", "r2", "s"))
    p.add_argument("--form", choices=[str(f) for f in FORMS] + ["rodrigues", "oracle"], default="1")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("radon", help="spectral weights of the subset Radon transform")
    _common(p, ("r1", "r2"))
    p.set_defaults(func=cmd_radon)

    p = sub.add_parser("verify", help="run an identity-verification suite")
    p.add_argument("suite", help=f"one of: all, {', '.join(SUITES)}")
    _common(p)
    p.add_argument("--no-timing", action="store_true", help="report elapsed_ms as null for reproducible output")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None, stdout=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    budget = getattr(args, "budget", None)
    if budget is not None and budget < 1:
        print("qgrass: --budget must be positive", file=sys.stderr)
        return 2
    if getattr(args, "threads", 1) < 1:
        print("qgrass: --threads must be positive", file=sys.stderr)
        return 2
    saved = os.environ.get("QGRASS_BUDGET")
    if budget is not None:
        os.environ["QGRASS_BUDGET"] = str(budget)
    buffer = io.StringIO()
    try:
        code = args.func(args, buffer)
    except UsageError as exc:
        print(f"qgrass: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"qgrass: budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (DimensionError, ValueError) as exc:
        print(f"qgrass: {exc}", file=sys.stderr)
        return 2
    finally:
        if budget is not None:
            if saved is None:
                os.environ.pop("QGRASS_BUDGET", None)
            else:
                os.environ["QGRASS_BUDGET"] = saved
    out.write(buffer.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
