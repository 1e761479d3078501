"""Command-line interface: ``polyadd {eval,theta,verify,table}``.

Exit codes: 0 success, 1 property violation, 2 domain or usage error,
3 solver failure.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .config import EvalConfig
from .errors import DomainError, PolygammaOverflowError, PreconditionError, SolverError
from .kernels import BACKEND
from .oracle import oracle_polygamma
from .polygamma_core import abs_polygamma, digamma, polygamma, polygamma_exp_array
from .report import dumps_csv, dumps_json
from .threshold import solve_theta, theta_table
from .verifier import (
    Region,
    SampleSpec,
    boundary_defect,
    check_additivity,
    check_case_inequalities,
    check_derivative_fd,
    check_derivative_sign,
    check_limit_report,
    check_monotone_report,
    check_positivity,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_DOMAIN = 2
EXIT_SOLVER = 3

THETA_HEADER = ("i", "theta_lo", "theta_hi", "theta_mid", "residual", "certified", "iterations")


def manifest(command, params):
    return {"command": command, "parameters": params, "version": __version__}


def _cfg():
    return EvalConfig.from_env()


# -- eval ---------------------------------------------------------------------


def cmd_eval(args):
    cfg = _cfg()
    k, x = args.order, args.point
    if k < 0:
        raise DomainError(f"order must be >= 0, got {k}")
    signed = digamma(x, cfg) if k == 0 else polygamma(k, x, cfg)
    row = {"k": k, "x": x, "value": signed, "abs_value": abs(signed)}
    if args.oracle:
        if k == 0:
            raise DomainError("the oracle covers orders k >= 1 only")
        o = oracle_polygamma(k, x, args.digits)
        row["oracle_value"] = o.value
        row["oracle_bound"] = o.abs_error_bound
        row["difference"] = abs_polygamma(k, x, cfg) - o.value
    params = {"order": k, "point": x, "oracle": args.oracle, "digits": args.digits,
              "rel_tol": cfg.rel_tol, "format": args.format}
    if args.format == "json":
        return dumps_json({"manifest": manifest("eval", params), "results": [row]}), EXIT_OK
    if args.format == "csv":
        return dumps_csv(list(row), [list(row.values())]), EXIT_OK
    lines = [f"psi^({k})({x!r}) = {signed!r}", f"|psi^({k})({x!r})| = {abs(signed)!r}"]
    if args.oracle:
        lines.append(f"oracle = {row['oracle_value']!r} +/- {row['oracle_bound']:.3g}")
        lines.append(f"fast - oracle = {row['difference']!r}")
    lines.append(f"# rel_tol={cfg.rel_tol!r} backend={BACKEND}")
    return "\n".join(lines) + "\n", EXIT_OK


# -- theta --------------------------------------------------------------------


def cmd_theta(args):
    cfg = _cfg()
    if not 1 <= args.max_order <= 12:
        raise DomainError(f"--max-order must be in [1, 12], got {args.max_order}")
    results = theta_table(args.max_order, args.tol, cfg)
    rows = [[r.order, r.lo, r.hi, r.mid, r.residual, r.certified, r.iterations] for r in results]
    params = {"max_order": args.max_order, "tol": args.tol, "rel_tol": cfg.rel_tol,
              "format": args.format}
    if args.format == "json":
        body = {"manifest": manifest("theta", params),
                "results": [dict(zip(THETA_HEADER, row)) for row in rows]}
        return dumps_json(body), EXIT_OK
    return dumps_csv(THETA_HEADER, rows), EXIT_OK


# -- verify -------------------------------------------------------------------


def _child_seeds(seed, n):
    return [int(s.generate_state(1, np.uint64)[0]) for s in np.random.SeedSequence(seed).spawn(n)]


def _entry(report, name=None):
    return {
        "check": name or report.check,
        "samples": report.samples,
        "violations": [list(v) for v in report.violations],
        "worst_margin": report.worst_margin,
    }


def run_verify(i, seed, n, tol, cfg):
    """Full verification suite for order ``i``; returns (threshold, [(name, report)])."""
    theta = solve_theta(i, tol, cfg)
    if not theta.certified:
        raise SolverError("oracle could not certify the bracket", order=i)
    seeds = _child_seeds(seed, 7)
    out = []
    for region, s in zip(Region, seeds[:3]):
        rep = check_additivity(i, theta, SampleSpec(region, n, s), cfg)
        out.append((f"additivity_{region.value}", rep))
    out.append(("case_inequalities", check_case_inequalities(i, SampleSpec(Region.SUB, n, seeds[3]), cfg)))
    out.append(("monotone_alpha", check_monotone_report(i, cfg=cfg)))
    out.append(("limit", check_limit_report(i, cfg=cfg)))
    out.append(("positivity_y_gt_1", check_positivity(i, n, seeds[4], cfg)))
    if i < 12:
        out.append(("derivative_sign", check_derivative_sign(i, n, seeds[5], cfg)))
        out.append(("derivative_fd", check_derivative_fd(i, n, seeds[6], cfg)))
    return theta, out


def cmd_verify(args):
    cfg = _cfg()
    if not 1 <= args.order <= 12:
        raise DomainError(f"--order must be in [1, 12], got {args.order}")
    if args.samples < 1:
        raise DomainError(f"--samples must be >= 1, got {args.samples}")
    theta, checks = run_verify(args.order, args.seed, args.samples, args.tol, cfg)
    failed = any(rep.violations for _, rep in checks)
    params = {"order": args.order, "seed": args.seed, "samples": args.samples, "tol": args.tol,
              "rel_tol": cfg.rel_tol, "format": args.format}
    th = {"order": theta.order, "theta_lo": theta.lo, "theta_hi": theta.hi,
          "theta_mid": theta.mid, "certified": theta.certified,
          "boundary_defect": boundary_defect(args.order, theta, cfg)}
    if args.format == "json":
        body = {"manifest": manifest("verify", params), "threshold": th,
                "results": [_entry(rep, name) for name, rep in checks]}
        text = dumps_json(body)
    else:
        rows = [[name, rep.samples, len(rep.violations), rep.worst_margin, rep.slack,
                 "pass" if rep.ok else "FAIL"] for name, rep in checks]
        text = dumps_csv(("check", "samples", "violations", "worst_margin", "slack", "status"), rows)
    return text, EXIT_VIOLATION if failed else EXIT_OK


# -- table --------------------------------------------------------------------


def cmd_table(args):
    cfg = _cfg()
    if args.num < 2 or not args.tmin < args.tmax:
        raise DomainError("table needs --num >= 2 and --tmin < --tmax")
    t = np.linspace(args.tmin, args.tmax, args.num)
    f = polygamma_exp_array(args.order, t, cfg)
    rows = [[float(a), math.exp(a), float(b)] for a, b in zip(t, f)]
    header = ("t", "x", "abs_polygamma")
    params = {"order": args.order, "tmin": args.tmin, "tmax": args.tmax, "num": args.num,
              "rel_tol": cfg.rel_tol, "format": args.format}
    if args.format == "json":
        body = {"manifest": manifest("table", params),
                "results": [dict(zip(header, r)) for r in rows]}
        return dumps_json(body), EXIT_OK
    return dumps_csv(header, rows), EXIT_OK


# -- entry point --------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="polyadd", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, default_format):
        sp.add_argument("--format", choices=("csv", "json") if default_format else ("text", "csv", "json"),
                        default=default_format or "text")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    e = sub.add_parser("eval", help="evaluate psi^(k)(x)")
    e.add_argument("-k", "--order", type=int, required=True)
    e.add_argument("-x", "--point", type=float, required=True)
    e.add_argument("--oracle", action="store_true", help="add the double-double reference value")
    e.add_argument("--digits", type=int, default=30)
    common(e, None)
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("theta", help="tabulate thresholds theta_i")
    t.add_argument("-n", "--max-order", type=int, default=8)
    t.add_argument("--tol", type=float, default=1e-12)
    common(t, "csv")
    t.set_defaults(func=cmd_theta)

    v = sub.add_parser("verify", help="run the verification suite for one order")
    v.add_argument("-i", "-k", "--order", type=int, required=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("-n", "--samples", type=int, default=10_000)
    v.add_argument("--tol", type=float, default=1e-12)
    common(v, "json")
    v.set_defaults(func=cmd_verify)

    tb = sub.add_parser("table", help="tabulate |psi^(k)(e^t)| on a uniform t grid")
    tb.add_argument("-k", "--order", type=int, required=True)
    tb.add_argument("--tmin", type=float, default=-5.0)
    tb.add_argument("--tmax", type=float, default=5.0)
    tb.add_argument("--num", type=int, default=101)
    common(tb, "csv")
    tb.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = args.func(args)
    except SolverError as exc:
        print(f"polyadd: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (DomainError, PolygammaOverflowError, PreconditionError) as exc:
        print(f"polyadd: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
