"""Command-line entry point.

    millergood table                       # published comparison table
    millergood figure --from 0.01 --to 0.1 --step 0.005
    millergood solve --lambda 0.02
    millergood exact --lambda 0.035 -k 2
    millergood diagnose --lambda 0.02
    millergood wavefunction --lambda 0.02 --grid 101

Exit codes: 0 all checks pass, 1 numeric tolerance violated, 2 domain or
usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__, published
from .diagnostics import validity_report
from .doublewell import lambda_max, solve_z
from .errors import AccuracyError, MillerGoodError
from .exactsolver import cross_validate
from .mgcore import AuxiliaryProblem, mapping_s0, wavefunction
from .potential import OscillatorParams, Potential1D, turning_points

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2
BACKEND_TOL = 1e-6


class UsageError(Exception):
    pass


# -- formatting -----------------------------------------------------------

def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return "nan"
        return f"{float(value):.6g}"
    return str(value)


def to_csv(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def to_json(payload) -> str:
    return json.dumps(payload, indent=2, allow_nan=True) + "\n"


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error_payload(exc) -> dict:
    out = {"error": type(exc).__name__, "message": str(exc)}
    best = getattr(exc, "best", None)
    if best is not None:
        out["best"] = np.asarray(best).tolist()
    return out


# -- row builders (module level so worker processes can pickle them) ------

def table_row(lam: float, tol: float = 1e-8, n: int = 4096) -> dict:
    ref = published.row(lam)
    out = {"lambda_prime": lam}
    try:
        sol = solve_z(lam)
        out.update(z_squared=sol.z_squared, e_over_hw=sol.e_over_hw, e_over_umin=sol.e_over_umin)
    except MillerGoodError as exc:
        out.update(z_squared=None, e_over_hw=None, e_over_umin=None, error=str(exc))
    try:
        fd, nu, diff = cross_validate(lam, 1, tol, n)
        out.update(e_oracle=fd.ground, e_oracle_numerov=nu.ground, backend_diff=diff)
    except AccuracyError as exc:
        out.update(e_oracle=None, e_oracle_numerov=None, backend_diff=None, error=str(exc))
    if ref is not None:
        out.update(z_squared_published=ref.z_squared, e_published=ref.e_over_hw,
                   e_published_exact=ref.exact, e_published_reference=ref.reference_method)
    ok_z = ok_e = ok_x = None
    if out.get("z_squared") is not None and ref is not None:
        ok_z = abs(out["z_squared"] - ref.z_squared) <= published.z2_tolerance(lam)
        ok_e = abs(out["e_over_hw"] - ref.e_over_hw) <= published.ENERGY_TOL
    if out.get("e_oracle") is not None and ref is not None and ref.exact is not None:
        ok_x = abs(out["e_oracle"] - ref.exact) <= published.EXACT_TOL
    ok_b = out.get("backend_diff") is not None and out["backend_diff"] <= BACKEND_TOL
    out.update(z_squared_ok=ok_z, e_ok=ok_e, exact_ok=ok_x, backends_ok=ok_b)
    out["row_ok"] = all(flag is not False for flag in (ok_z, ok_e, ok_x)) and ok_b and "error" not in out
    return out


def figure_row(lam: float, tol: float = 1e-8, n: int = 4096) -> dict:
    umin = -1.0 / (16.0 * lam)
    sol = solve_z(lam)
    fd, _, _ = cross_validate(lam, 1, tol, n)
    ref = published.row(lam)
    reference = None
    if ref is not None and ref.reference_method is not None:
        reference = ref.reference_method / umin
    return {"lambda_prime": lam, "e_over_umin": sol.e_over_umin,
            "e_over_umin_oracle": fd.ground / umin, "e_over_umin_reference": reference,
            "note": None}


def _map(func, items, jobs, **kw):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(func, item, **kw) for item in items]
            return [f.result() for f in futures]
    return [func(item, **kw) for item in items]


# -- commands -------------------------------------------------------------

TABLE_COLUMNS = [
    "lambda_prime", "z_squared", "z_squared_published", "e_over_hw", "e_published", "e_oracle",
    "e_oracle_numerov", "backend_diff", "e_published_exact", "e_published_reference",
    "z_squared_ok", "e_ok", "exact_ok", "backends_ok", "row_ok",
]
FIGURE_COLUMNS = ["lambda_prime", "e_over_umin", "e_over_umin_oracle", "e_over_umin_reference", "note"]


def cmd_table(args) -> int:
    lambdas = list(args.lambdas) if args.lambdas else list(published.LAMBDAS)
    rows = _map(table_row, lambdas, args.jobs, tol=args.tol, n=args.grid or 4096)
    all_ok = all(r["row_ok"] for r in rows)
    if args.format == "json":
        _emit(args, to_json({"table_version": published.TABLE_VERSION, "all_pass": all_ok,
                             "rows": rows}))
    else:
        _emit(args, to_csv(rows, TABLE_COLUMNS))
    return EXIT_OK if all_ok else EXIT_NUMERIC


def lambda_grid(start: float, stop: float, step: float) -> list:
    if step <= 0 or start <= 0 or stop < start:
        raise UsageError("need 0 < --from <= --to and --step > 0")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def cmd_figure(args) -> int:
    lambdas = lambda_grid(args.start, args.stop, args.step)
    cap = lambda_max()
    inside = [lam for lam in lambdas if lam <= cap]
    rows = _map(figure_row, inside, args.jobs, tol=args.tol, n=args.grid or 4096)
    if len(inside) < len(lambdas):
        rows.append({"lambda_prime": None, "note": f"truncated: lambda' above lambda_max={cap:.6g}"})
    if args.format == "json":
        _emit(args, to_json({"lambda_max": cap, "rows": rows}))
    else:
        _emit(args, to_csv(rows, FIGURE_COLUMNS))
    return EXIT_OK


def _single(args, record: dict):
    if args.format == "json":
        _emit(args, to_json(record))
    else:
        scalars = {k: v for k, v in record.items() if not isinstance(v, (list, dict))}
        _emit(args, to_csv([scalars], list(scalars)))


def cmd_solve(args) -> int:
    _single(args, solve_z(_need_lambda(args)).to_dict())
    return EXIT_OK


def cmd_exact(args) -> int:
    lam = _need_lambda(args)
    fd, nu, diff = cross_validate(lam, args.levels, args.tol, args.grid or 4096)
    ok = diff <= args.tol
    record = {"lambda_prime": lam, "eigenvalues": list(fd.eigenvalues),
              "eigenvalues_numerov": list(nu.eigenvalues), "parities": list(nu.parities),
              "ground": fd.ground, "backend_diff": diff, "half_width": fd.half_width,
              "convergence": fd.convergence, "backends_ok": ok}
    if args.format == "json":
        _emit(args, to_json(record))
    else:
        rows = [{"index": i, "energy": e, "energy_numerov": en, "parity": p}
                for i, (e, en, p) in enumerate(zip(fd.eigenvalues, nu.eigenvalues, nu.parities))]
        _emit(args, to_csv(rows, ["index", "energy", "energy_numerov", "parity"]))
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_diagnose(args) -> int:
    _single(args, validity_report(_need_lambda(args), args.grid or 257))
    return EXIT_OK


def cmd_wavefunction(args) -> int:
    lam = _need_lambda(args)
    sol = solve_z(lam)
    v = Potential1D.quartic(OscillatorParams.natural(lam))
    tp = turning_points(v, sol.e_over_hw)
    aux = AuxiliaryProblem(0)
    table = mapping_s0(v, sol.e_over_hw, aux, grid=args.grid or 201, interval=(tp[-2], tp[-1]))
    psi, valid = wavefunction(v, sol.e_over_hw, aux, table, table.x, normalize=True)
    rows = [{"x": float(x), "s0": float(s), "ds0": float(d), "psi": float(p), "valid": bool(ok)}
            for x, s, d, p, ok in zip(table.x, table.s, table.ds, psi, valid)]
    if args.format == "json":
        _emit(args, to_json({"lambda_prime": lam, "energy": sol.e_over_hw, "rows": rows}))
    else:
        _emit(args, to_csv(rows, ["x", "s0", "ds0", "psi", "valid"]))
    return EXIT_OK


def _need_lambda(args) -> float:
    if args.lam is None:
        raise UsageError("--lambda is required")
    return args.lam


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--tol", type=float, default=1e-8, help="oracle tolerance")
    common.add_argument("--grid", type=int, default=None, help="grid size for the command")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")

    lam = argparse.ArgumentParser(add_help=False)
    lam.add_argument("--lambda", dest="lam", type=float, help="dimensionless coupling lambda'")

    parser = argparse.ArgumentParser(prog="millergood", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="compare against the published ground-level table")
    p.add_argument("--lambdas", type=float, nargs="+", help="override the built-in lambda' list")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("figure", parents=[common], help="E/U_min against lambda'")
    p.add_argument("--from", dest="start", type=float, default=0.01)
    p.add_argument("--to", dest="stop", type=float, default=0.1)
    p.add_argument("--step", type=float, default=0.005)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("solve", parents=[common, lam], help="solve for z at one coupling")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", parents=[common, lam], help="reference eigenvalues")
    p.add_argument("-k", "--levels", type=int, default=1)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("diagnose", parents=[common, lam], help="validity of the approximation")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("wavefunction", parents=[common, lam],
                       help="Miller-Good wavefunction in the right-hand well")
    p.set_defaults(func=cmd_wavefunction)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        lam = getattr(args, "lam", None)
        if lam is not None and not (math.isfinite(lam) and lam > 0):
            raise UsageError("--lambda must be positive")
        return args.func(args)
    except AccuracyError as exc:
        code = EXIT_NUMERIC
        err = exc
    except (MillerGoodError, UsageError) as exc:
        code = EXIT_USAGE
        err = exc
    payload = _error_payload(err)
    if getattr(args, "format", "csv") == "json":
        _emit(args, to_json(payload))
    else:
        sys.stderr.write(f"error: {payload['error']}: {payload['message']}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
