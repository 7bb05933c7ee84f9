"""Command-line front end.

Subcommands: eval ml / eval wright (point evaluations), kernel, solution,
invade (trajectory experiments with CSV/JSON export), thresholds, verify.
Exit codes: 0 success, 1 usage error, 2 computation failure, 3 verify-suite
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

from .errors import DomainError, FracFrontError
from .invasion import (
    ExperimentConfig,
    ProfileKind,
    SpeedProfile,
    run_experiment,
    thresholds,
)
from .kernels import (
    BoundEnvelope,
    FracParams,
    cauchy_density,
    gaussian_density,
    higher_order_kernel_1d,
    stable_envelope,
)
from .logvalue import LogValue
from .specfun import mittag_leffler, wright_neg
from .subordination import subordinate, subordinate_envelope
from . import fourier1d
from .verify import SuiteName, run_suite


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _print_logvalue(label: str, lv: LogValue) -> None:
    print(f"{label} sign={lv.sign:+d} log_abs={_fmt(lv.log_abs)}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="fracfront")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="point evaluation of special functions")
    eval_sub = p_eval.add_subparsers(dest="function", required=True)
    p_ml = eval_sub.add_parser("ml")
    p_ml.add_argument("--alpha", type=float, required=True)
    p_ml.add_argument("--beta", type=float, required=True)
    p_ml.add_argument("--z", type=float, required=True)
    p_wr = eval_sub.add_parser("wright")
    p_wr.add_argument("--nu", type=float, required=True)
    p_wr.add_argument("--mu", type=float, required=True)
    p_wr.add_argument("--z", type=float, required=True)

    p_kernel = sub.add_parser("kernel", help="classical diffusion kernel at (t, r)")
    p_kernel.add_argument("--rho", type=float, required=True)
    p_kernel.add_argument("--dim", type=int, required=True)
    p_kernel.add_argument("--t", type=float, required=True)
    p_kernel.add_argument("--r", type=float, required=True)

    p_sol = sub.add_parser("solution", help="fundamental solution at (t, r)")
    p_sol.add_argument("--alpha", type=float, required=True)
    p_sol.add_argument("--rho", type=float, required=True)
    p_sol.add_argument("--dim", type=int, required=True)
    p_sol.add_argument("--t", type=float, required=True)
    p_sol.add_argument("--r", type=float, required=True)
    p_sol.add_argument(
        "--method",
        choices=["subordination", "fourier1d", "envelope"],
        default="subordination",
    )

    p_inv = sub.add_parser("invade", help="invasion-speed experiment")
    p_inv.add_argument("--config", help="JSON file with ExperimentConfig fields")
    p_inv.add_argument("--alpha", type=float)
    p_inv.add_argument("--rho", type=float)
    p_inv.add_argument("--dim", type=int, default=1)
    p_inv.add_argument("--profile", choices=["power", "exponential"])
    p_inv.add_argument("--m", type=float)
    p_inv.add_argument("--beta", type=float)
    p_inv.add_argument("--t-start", type=float, default=5.0)
    p_inv.add_argument("--t-end", type=float, default=60.0)
    p_inv.add_argument("--n-samples", type=int, default=24)
    p_inv.add_argument(
        "--method",
        choices=["subordination", "fourier1d", "envelope"],
        default="subordination",
    )
    p_inv.add_argument("--output", default="")
    p_inv.add_argument("--format", choices=["csv", "json"], default="csv")

    p_thr = sub.add_parser("thresholds", help="analytic invasion thresholds")
    p_thr.add_argument("--alpha", type=float, required=True)
    p_thr.add_argument("--rho", type=float, required=True)
    p_thr.add_argument("--dim", type=int, required=True)

    p_ver = sub.add_parser("verify", help="run identity/inequality suites")
    p_ver.add_argument(
        "--suite",
        required=True,
        choices=[s.value for s in SuiteName],
    )
    p_ver.add_argument("--json", action="store_true")
    return parser


def _config_from_file(path: str) -> ExperimentConfig:
    with open(path) as fh:
        raw = json.load(fh)
    allowed = {
        "params", "profile", "t_start", "t_end", "n_samples",
        "method", "output_path", "format",
    }
    unknown = set(raw) - allowed
    if unknown:
        raise _UsageError(f"unknown config keys: {sorted(unknown)}")
    params_raw = raw.get("params", {})
    unknown = set(params_raw) - {"alpha", "rho", "dim"}
    if unknown:
        raise _UsageError(f"unknown params keys: {sorted(unknown)}")
    profile_raw = raw.get("profile", {})
    unknown = set(profile_raw) - {"kind", "m", "beta"}
    if unknown:
        raise _UsageError(f"unknown profile keys: {sorted(unknown)}")
    try:
        params = FracParams(**params_raw)
        profile = SpeedProfile(
            ProfileKind(profile_raw["kind"]),
            profile_raw["m"],
            profile_raw["beta"],
        )
        return ExperimentConfig(
            params=params,
            profile=profile,
            t_start=raw.get("t_start", 5.0),
            t_end=raw.get("t_end", 60.0),
            n_samples=raw.get("n_samples", 24),
            method=raw.get("method", "subordination"),
            output_path=raw.get("output_path", ""),
            format=raw.get("format", "csv"),
        )
    except (KeyError, ValueError, TypeError, DomainError) as exc:
        raise _UsageError(f"bad config: {exc}") from exc


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fracfront-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _samples_csv(samples) -> str:
    lines = ["t,theta,sign,log_u,method"]
    for s in sorted(samples, key=lambda s: s.t):
        if s.log_u is None:
            sign, log_u = 0, math.nan
        else:
            sign, log_u = s.log_u.sign, s.log_u.log_abs
        lines.append(
            f"{_fmt(s.t)},{_fmt(s.theta)},{sign},{_fmt(log_u)},{s.method.value}"
        )
    return "\n".join(lines) + "\n"


def _report_json(report) -> str:
    payload = {
        "config": {
            "params": {
                "alpha": report.config.params.alpha,
                "rho": report.config.params.rho,
                "dim": report.config.params.dim,
            },
            "profile": {
                "kind": report.config.profile.kind.value,
                "m": report.config.profile.m,
                "beta": report.config.profile.beta,
            },
            "t_start": report.config.t_start,
            "t_end": report.config.t_end,
            "n_samples": report.config.n_samples,
            "method": report.config.method,
            "output_path": report.config.output_path,
            "format": report.config.format,
        },
        "thresholds": {
            "gamma_alpha": report.thresholds.gamma_alpha,
            "m_alpha": report.thresholds.m_alpha,
            "power_lower": report.thresholds.power_lower,
            "power_upper": report.thresholds.power_upper,
            "exp_lower": report.thresholds.exp_lower,
            "exp_upper": report.thresholds.exp_upper,
        },
        "classification": {
            "verdict": report.classification.verdict.value,
            "slope": report.classification.slope,
            "window": list(report.classification.window),
        },
        "predicted": report.predicted,
        "agreement": report.agreement,
        "samples": [
            {
                "t": s.t,
                "theta": s.theta,
                "sign": 0 if s.log_u is None else s.log_u.sign,
                "log_u": None if s.log_u is None else s.log_u.log_abs,
                "method": s.method.value,
                "failure": s.failure,
            }
            for s in sorted(report.samples, key=lambda s: s.t)
        ],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _cmd_eval(args) -> int:
    if args.function == "ml":
        if not 0.0 < args.alpha <= 1.0 or args.beta <= 0.0:
            raise _UsageError("require 0 < alpha <= 1 and beta > 0")
        res = mittag_leffler(args.alpha, args.beta, args.z)
    else:
        if not 0.0 < args.nu < 1.0:
            raise _UsageError("require 0 < nu < 1")
        if args.z > 0.0:
            raise _UsageError("wright evaluation requires z <= 0")
        res = wright_neg(args.nu, args.mu, args.z)
    print(
        f"value={_fmt(res.value)} abs_error_bound={_fmt(res.abs_error_bound)} "
        f"terms={res.terms_used} regime={res.regime.value}"
    )
    return 0


def _cmd_kernel(args) -> int:
    if args.t <= 0.0 or args.r < 0.0 or args.dim < 1 or args.rho <= 0.0:
        raise _UsageError("require rho > 0, dim >= 1, t > 0 and r >= 0")
    if args.rho == 1.0:
        _print_logvalue("kernel", gaussian_density(args.t, args.r, args.dim))
    elif args.rho == 0.5:
        _print_logvalue("kernel", cauchy_density(args.t, args.r, args.dim))
    elif args.rho > 1.0:
        if args.dim != 1:
            raise _UsageError("rho > 1 kernels are only available in dimension 1")
        _print_logvalue("kernel", higher_order_kernel_1d(args.rho, args.t, args.r))
    else:
        env = stable_envelope(args.rho, args.t, args.r, args.dim)
        _print_logvalue("lower", env.lower)
        _print_logvalue("upper", env.upper)
    return 0


def _cmd_solution(args) -> int:
    if not 0.0 < args.alpha < 1.0:
        raise _UsageError("require 0 < alpha < 1")
    if args.t <= 0.0 or args.r < 0.0 or args.dim < 1 or args.rho <= 0.0:
        raise _UsageError("require rho > 0, dim >= 1, t > 0 and r >= 0")
    params = FracParams(args.alpha, args.rho, args.dim)
    if args.method == "envelope":
        env = subordinate_envelope(
            args.alpha, args.rho, args.dim, args.t, args.r
        )
        _print_logvalue("lower", env.lower)
        _print_logvalue("upper", env.upper)
        return 0
    if args.method == "fourier1d":
        if args.dim != 1 or args.rho < 1.0:
            raise _UsageError("fourier1d requires dim = 1 and rho >= 1")
        if args.r == 0.0:
            res = fourier1d.solution_at_origin(args.alpha, args.rho, args.t)
        else:
            res = fourier1d.solution_series(args.alpha, args.rho, args.t, args.r, 1e-8)
        lv = LogValue.from_float(res.value)
    else:
        lv = subordinate(params, args.t, args.r)
    _print_logvalue("solution", lv)
    if lv.sign != 0 and abs(lv.log_abs) < 700.0:
        print(f"value={_fmt(lv.to_float())}")
    return 0


def _cmd_invade(args) -> int:
    if args.config:
        config = _config_from_file(args.config)
    else:
        missing = [
            flag
            for flag, value in (
                ("--alpha", args.alpha),
                ("--rho", args.rho),
                ("--profile", args.profile),
                ("--m", args.m),
                ("--beta", args.beta),
            )
            if value is None
        ]
        if missing:
            raise _UsageError(f"missing required flags: {' '.join(missing)}")
        try:
            config = ExperimentConfig(
                params=FracParams(args.alpha, args.rho, args.dim),
                profile=SpeedProfile(ProfileKind(args.profile), args.m, args.beta),
                t_start=args.t_start,
                t_end=args.t_end,
                n_samples=args.n_samples,
                method=args.method,
                output_path=args.output,
                format=args.format,
            )
        except DomainError as exc:
            raise _UsageError(str(exc)) from exc
    report = run_experiment(config)
    print(
        f"verdict={report.classification.verdict.value} "
        f"slope={_fmt(report.classification.slope)} "
        f"predicted={report.predicted} "
        f"agreement={report.agreement}"
    )
    if config.output_path:
        if config.format == "csv":
            _atomic_write(config.output_path, _samples_csv(report.samples))
        else:
            _atomic_write(config.output_path, _report_json(report))
        print(f"wrote {config.output_path}")
    return 0


def _cmd_thresholds(args) -> int:
    if not 0.0 < args.alpha < 1.0:
        raise _UsageError("require 0 < alpha < 1")
    if args.rho <= 0.0 or args.dim < 1:
        raise _UsageError("require rho > 0 and dim >= 1")
    rep = thresholds(args.alpha, args.rho, args.dim)
    print(f"gamma_alpha={_fmt(rep.gamma_alpha)}")
    print(f"m_alpha={rep.m_alpha}")
    print(f"power_lower={_fmt(rep.power_lower)}")
    print(f"power_upper={_fmt(rep.power_upper)}")
    print(f"exp_lower={_fmt(rep.exp_lower)}")
    print(f"exp_upper={_fmt(rep.exp_upper)}")
    return 0


def _cmd_verify(args) -> int:
    report = run_suite(args.suite)
    if args.json:
        print(
            json.dumps(
                {
                    "suite_name": report.suite_name,
                    "cases_run": report.cases_run,
                    "cases_passed": report.cases_passed,
                    "worst_rel_error": report.worst_rel_error,
                    "worst_case_inputs": report.worst_case_inputs,
                },
                sort_keys=True,
                indent=2,
            )
        )
    else:
        print(
            f"suite={report.suite_name} passed={report.cases_passed}/"
            f"{report.cases_run} worst_rel_error={_fmt(report.worst_rel_error)} "
            f"worst_case={report.worst_case_inputs}"
        )
    return 0 if report.passed else 3


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "kernel":
            return _cmd_kernel(args)
        if args.command == "solution":
            return _cmd_solution(args)
        if args.command == "invade":
            return _cmd_invade(args)
        if args.command == "thresholds":
            return _cmd_thresholds(args)
        return _cmd_verify(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except FracFrontError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
