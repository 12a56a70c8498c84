"""Command-line front door: one subcommand per public operation.

Exit codes: 0 success, 1 verification failure (a check ran and missed its
tolerance), 2 usage error, 3 numerical error (module exceptions, printed
verbatim).  Output is JSON on stdout; ``--out DIR`` additionally writes the
artifacts (CSV/JSON) plus a run manifest.  Long flags only.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import ZetaconvError
from .fourier import Spectrum, forward_ft, inverse_ft, read_function_json
from .kernels import (KernelInstance, KernelKind, QuadratureConfig, calibrate_conventions,
                      kernel_eval, symbol_eval, symbol_numeric)
from .manifest import RunManifest, sha256_file, write_outputs
from .numtheory import (ei_mellin_check, mertens, mertens_csv, mertens_evaluator,
                        verify_example)
from .solver import (NoRegularization, SolveConfig, SpectralCutoff, Tikhonov,
                     fit_translates, forward_apply, residual, solve)
from .stripscan import ScanGrid, scan_symbol, wiener_report

_KINDS = {k.value: k for k in KernelKind}


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _sigma_in_unit(parser: argparse.ArgumentParser, sigma: float) -> None:
    if not (0.0 < sigma < 1.0):
        parser.error("sigma must lie in (0,1)")


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _kernel_from(args, parser) -> KernelInstance:
    _sigma_in_unit(parser, args.sigma)
    strict = not getattr(args, "no_strict", False)
    if strict and not (0.5 < args.sigma < 1.0):
        parser.error("sigma must lie in (1/2,1) unless --no-strict is given")
    return KernelInstance(_KINDS[args.kernel], args.sigma, strict=strict)


def _manifest(args, command: str, inputs: dict) -> RunManifest:
    params = {k: v for k, v in vars(args).items() if k not in ("func", "out") and v is not None}
    for key, val in params.items():
        if isinstance(val, (np.floating, np.integer)):
            params[key] = val.item()
    return RunManifest(
        command=command,
        parameters=params,
        input_digests={name: sha256_file(path) for name, path in inputs.items()},
        tool_version=__version__,
        seed=getattr(args, "seed", 0),
    )


# --------------------------------------------------------------------------
# subcommand handlers (each returns the process exit code)
# --------------------------------------------------------------------------

def _cmd_kernel_eval(args, parser) -> int:
    inst = _kernel_from(args, parser)
    value = kernel_eval(inst, args.u)
    _emit({"kernel": args.kernel, "sigma": args.sigma, "u": args.u, "value": value})
    return 0


def _cmd_symbol(args, parser) -> int:
    inst = _kernel_from(args, parser)
    val = symbol_eval(inst, args.y)
    _emit({"kernel": args.kernel, "sigma": args.sigma, "y": args.y,
           "re": val.real, "im": val.imag})
    return 0


def _cmd_symbol_check(args, parser) -> int:
    points = []
    worst = 0.0
    quad = QuadratureConfig(rel_tol=min(1e-10, 0.01 * args.tol))
    for sigma in args.sigmas:
        _sigma_in_unit(parser, sigma)
        inst = KernelInstance(_KINDS[args.kernel], sigma, strict=False)
        for y in args.ys:
            analytic = symbol_eval(inst, y)
            numeric = symbol_numeric(inst, y, quad)
            gap = abs(analytic - numeric) / abs(analytic)
            worst = max(worst, gap)
            points.append({"sigma": sigma, "y": y,
                           "analytic": [analytic.real, analytic.imag],
                           "numeric": [numeric.real, numeric.imag],
                           "rel_gap": gap})
    report = {"kernel": args.kernel, "points": points, "max_rel_gap": worst,
              "tol": args.tol, "pass": worst <= args.tol}
    _emit(report)
    if args.out:
        write_outputs(args.out, {"symbol_check.json": json.dumps(report, sort_keys=True, indent=2) + "\n"},
                      _manifest(args, "symbol-check", {}))
    return 0 if report["pass"] else 1


def _cmd_ft(args, parser) -> int:
    text = open(args.input, encoding="utf-8").read()
    window = not args.no_window
    if args.direction == "forward":
        spec = forward_ft(read_function_json(text), window=window)
        payload = spec.to_json_obj()
        csv_text = spec.to_csv()
    else:
        out = inverse_ft(Spectrum.from_json_obj(json.loads(text)), window=window)
        payload = out.to_json_obj()
        csv_text = out.to_csv()
    _emit(payload)
    if args.out:
        write_outputs(args.out,
                      {"result.json": json.dumps(payload, sort_keys=True) + "\n",
                       "result.csv": csv_text},
                      _manifest(args, "ft", {"input": args.input}))
    return 0


def _cmd_apply(args, parser) -> int:
    inst = _kernel_from(args, parser)
    phi = read_function_json(open(args.phi, encoding="utf-8").read())
    h = forward_apply(inst, phi)
    payload = h.to_json_obj()
    _emit(payload)
    if args.out:
        write_outputs(args.out,
                      {"h.json": json.dumps(payload, sort_keys=True) + "\n", "h.csv": h.to_csv()},
                      _manifest(args, "apply", {"phi": args.phi}))
    return 0


def _make_config(args, parser) -> SolveConfig:
    if args.reg == "cutoff":
        reg = SpectralCutoff(args.tau)
    elif args.reg == "tikhonov":
        reg = Tikhonov(args.alpha if args.alpha is not None else 1e-6)
    else:
        reg = NoRegularization()
    return SolveConfig(lambda1=args.lambda1, lambda2=args.lambda2, regularization=reg)


def _cmd_solve(args, parser) -> int:
    inst = _kernel_from(args, parser)
    h = read_function_json(open(args.h, encoding="utf-8").read())
    report = solve(inst, h, _make_config(args, parser))
    payload = report.to_json_obj()
    _emit(payload)
    if args.out:
        write_outputs(args.out,
                      {"report.json": json.dumps(payload, sort_keys=True, indent=2) + "\n",
                       "phi.json": json.dumps(report.phi.to_json_obj(), sort_keys=True) + "\n",
                       "phi.csv": report.phi.to_csv()},
                      _manifest(args, "solve", {"h": args.h}))
    return 0


def _cmd_residual(args, parser) -> int:
    inst = _kernel_from(args, parser)
    phi = read_function_json(open(args.phi, encoding="utf-8").read())
    h = read_function_json(open(args.h, encoding="utf-8").read())
    l2, sup = residual(inst, phi, h, _make_config(args, parser))
    _emit({"residual_l2": l2, "residual_sup": sup})
    return 0


def _cmd_fit_translates(args, parser) -> int:
    inst = _kernel_from(args, parser)
    g = read_function_json(open(args.g, encoding="utf-8").read())
    coeffs, res = fit_translates(inst, g, args.nodes, p=args.p)
    payload = {"coeffs": [float(c) for c in coeffs], "residual_p": res, "p": args.p}
    _emit(payload)
    if args.out:
        write_outputs(args.out,
                      {"fit.json": json.dumps(payload, sort_keys=True, indent=2) + "\n"},
                      _manifest(args, "fit-translates", {"g": args.g}))
    return 0


def _cmd_mertens(args, parser) -> int:
    ev = mertens_evaluator(args.limit)
    payload = {"limit": args.limit}
    if args.x is not None:
        payload["x"] = args.x
        payload["M"] = mertens(args.x, ev)
    _emit(payload)
    if args.out:
        upto = args.csv_upto if args.csv_upto is not None else min(args.limit, 10000)
        write_outputs(args.out, {"mertens.csv": mertens_csv(ev, upto)},
                      _manifest(args, "mertens", {}))
    return 0


def _cmd_verify_example(args, parser) -> int:
    _sigma_in_unit(parser, args.sigma)
    if not (0.5 < args.sigma < 1.0):
        parser.error("sigma must lie in (1/2,1) for the worked example")
    xs = args.xs if args.xs else None
    report = verify_example(args.sigma, xs=xs, y_trunc=args.y_trunc,
                            tol=args.tol, limit=args.limit)
    payload = report.to_json_obj()
    _emit(payload)
    if args.out:
        write_outputs(args.out,
                      {"verify_example.json": json.dumps(payload, sort_keys=True, indent=2) + "\n"},
                      _manifest(args, "verify-example", {}))
    return 0 if report.passed else 1


def _cmd_ei_mellin_check(args, parser) -> int:
    rep = ei_mellin_check(args.beta, complex(args.s_re, args.s_im), tol=args.tol)
    _emit(rep.to_json_obj())
    return 0 if rep.passed else 1


def _cmd_scan(args, parser) -> int:
    grid = ScanGrid(args.sigma_lo, args.sigma_hi, args.t_lo, args.t_hi,
                    args.d_sigma, args.dt)
    result = scan_symbol(_KINDS[args.kernel], grid,
                         min_threshold=args.min_threshold)
    report = wiener_report(result, args.delta)
    payload = report.to_json_obj()
    _emit(payload)
    if args.out:
        write_outputs(args.out,
                      {"scan.csv": result.to_csv(),
                       "summary.json": json.dumps(payload, sort_keys=True, indent=2) + "\n"},
                      _manifest(args, "scan", {}))
    return 0


def _cmd_calibrate(args, parser) -> int:
    rep = calibrate_conventions()
    payload = rep.to_json_obj()
    _emit(payload)
    fits_ok = (rep.fracpart_stable
               and abs(rep.fracpart_constant - rep.fracpart_choice) <= 1e-6 * rep.fracpart_choice
               and abs(rep.digamma_scale - 1.0) <= 1e-6)
    if args.out:
        manifest = RunManifest(
            command="calibrate",
            parameters={"fracpart_constant": rep.fracpart_choice,
                        "digamma_sine": rep.digamma_sine},
            tool_version=__version__,
            seed=getattr(args, "seed", 0),
        )
        write_outputs(args.out,
                      {"calibration.json": json.dumps(payload, sort_keys=True, indent=2) + "\n"},
                      manifest)
    return 0 if fits_ok else 1


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetaconv",
        description="Zeta-bearing convolution kernels: symbols, solver, worked example, scans.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, formatter_class=argparse.ArgumentDefaultsHelpFormatter,
                           **kwargs)
        p.set_defaults(func=handler)
        p.add_argument("--seed", type=int, default=0, help="recorded in the manifest")
        p.add_argument("--out", type=str, default=None, help="directory for artifacts + manifest")
        return p

    def add_kernel_flags(p):
        p.add_argument("--kernel", choices=sorted(_KINDS), required=True,
                       help="kernel family")
        p.add_argument("--sigma", type=float, required=True, help="strip abscissa")
        p.add_argument("--no-strict", action="store_true",
                       help="admit sigma anywhere in (0,1) instead of (1/2,1)")

    p = add("kernel-eval", _cmd_kernel_eval, help="evaluate k_sigma(u) pointwise")
    add_kernel_flags(p)
    p.add_argument("--u", type=float, required=True, help="kernel offset")

    p = add("symbol", _cmd_symbol, help="analytic symbol K(sigma+iy)")
    add_kernel_flags(p)
    p.add_argument("--y", type=float, required=True, help="symbol height")

    p = add("symbol-check", _cmd_symbol_check, help="analytic symbol vs quadrature oracle")
    p.add_argument("--kernel", choices=sorted(_KINDS), required=True, help="kernel family")
    p.add_argument("--sigmas", type=_floats, default=[0.55, 0.75, 0.95], help="comma-separated abscissas")
    p.add_argument("--ys", type=_floats, default=[0.0, 1.0, -1.0, 5.0, -5.0, 10.0, -10.0, 20.0, -20.0], help="comma-separated heights")
    p.add_argument("--tol", type=float, default=1e-6, help="max relative gap")

    p = add("ft", _cmd_ft, help="forward/inverse transform of a sampled function")
    p.add_argument("--input", required=True, help="function JSON envelope")
    p.add_argument("--direction", choices=["forward", "inverse"], default="forward", help="transform direction")
    p.add_argument("--no-window", action="store_true", help="skip the edge taper")

    p = add("apply", _cmd_apply, help="forward map h = k_sigma * phi")
    add_kernel_flags(p)
    p.add_argument("--phi", required=True, help="input function JSON")

    p = add("solve", _cmd_solve, help="regularized deconvolution")
    add_kernel_flags(p)
    p.add_argument("--h", required=True, help="right-hand side JSON")
    p.add_argument("--lambda1", type=float, default=0.0, help="equation coefficient")
    p.add_argument("--lambda2", type=float, default=-1.0, help="equation coefficient")
    p.add_argument("--reg", choices=["cutoff", "tikhonov", "none"], default="cutoff", help="regularization")
    p.add_argument("--tau", type=float, default=1e-8, help="cutoff level relative to max|K|")
    p.add_argument("--alpha", type=float, default=None, help="tikhonov level relative to max|K|")

    p = add("residual", _cmd_residual, help="residual of a candidate solution")
    add_kernel_flags(p)
    p.add_argument("--phi", required=True, help="candidate solution JSON")
    p.add_argument("--h", required=True, help="right-hand side JSON")
    p.add_argument("--lambda1", type=float, default=0.0, help="equation coefficient")
    p.add_argument("--lambda2", type=float, default=-1.0, help="equation coefficient")
    p.add_argument("--reg", choices=["cutoff", "tikhonov", "none"], default="cutoff", help="regularization")
    p.add_argument("--tau", type=float, default=1e-8, help="cutoff level relative to max|K|")
    p.add_argument("--alpha", type=float, default=None, help="tikhonov level relative to max|K|")

    p = add("fit-translates", _cmd_fit_translates, help="least-squares fit by kernel translates")
    add_kernel_flags(p)
    p.add_argument("--g", required=True, help="target function JSON")
    p.add_argument("--nodes", type=_floats, required=True,
                   help="comma-separated translate nodes (use --nodes=-2,0,2 for negatives)")
    p.add_argument("--p", type=int, choices=[1, 2], default=2, help="residual norm")

    p = add("mertens", _cmd_mertens, help="Moebius sieve and Mertens values")
    p.add_argument("--limit", type=int, required=True, help="sieve length")
    p.add_argument("--x", type=float, default=None, help="report M(x)")
    p.add_argument("--csv-upto", type=int, default=None, help="rows in the CSV export")

    p = add("verify-example", _cmd_verify_example, help="end-to-end check of the worked example")
    p.add_argument("--sigma", type=float, required=True, help="strip abscissa in (1/2,1)")
    p.add_argument("--limit", type=int, default=10 ** 6, help="sieve length")
    p.add_argument("--tol", type=float, default=1e-4, help="pass threshold on max abs error")
    p.add_argument("--y-trunc", type=float, default=None, help="truncation depth Y (default log(limit))")
    p.add_argument("--xs", type=_floats, default=None, help="evaluation points (default 11 points on [-3,3])")

    p = add("ei-mellin-check", _cmd_ei_mellin_check, help="Ei Mellin-transform identity")
    p.add_argument("--beta", type=float, required=True, help="scale in Ei(-beta y)")
    p.add_argument("--s-re", type=float, required=True, help="Re s")
    p.add_argument("--s-im", type=float, default=0.0, help="Im s")
    p.add_argument("--tol", type=float, default=1e-8, help="pass threshold on relative gap")

    p = add("scan", _cmd_scan, help="magnitude scan over a strip rectangle")
    p.add_argument("--kernel", choices=sorted(_KINDS), required=True, help="kernel family")
    p.add_argument("--sigma-lo", type=float, required=True, help="band lower abscissa")
    p.add_argument("--sigma-hi", type=float, required=True, help="band upper abscissa")
    p.add_argument("--t-lo", type=float, required=True, help="band lower height")
    p.add_argument("--t-hi", type=float, required=True, help="band upper height")
    p.add_argument("--d-sigma", type=float, default=1.0, help="abscissa step")
    p.add_argument("--dt", type=float, default=0.01, help="height step")
    p.add_argument("--delta", type=float, default=1e-4, help="non-vanishing threshold")
    p.add_argument("--min-threshold", type=float, default=math.inf, help="collect dips below this")

    p = add("calibrate", _cmd_calibrate, help="measure the printed-formula conventions")

    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    try:
        return args.func(args, parser)
    except SystemExit as exc:  # parser.error inside handlers
        return int(exc.code) if exc.code is not None else 2
    except ZetaconvError as exc:
        print(str(exc), file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
