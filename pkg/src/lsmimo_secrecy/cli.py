"""Command-line front end.

Powers are given in dB on the command line (``--snr-s``, ``--snr-r``) and
converted to linear internally. Exit status: 0 success, 1 bad parameters or
usage, 2 secrecy infeasible (r_l >= 1) when an optimum is requested,
3 verification failure.
"""

import argparse
import csv
import io
import json
import sys

from . import __version__
from .capacity import closed_form_csoc, csoc_terms, max_csoc, optimal_power
from .config import read_config
from .errors import InfeasibleSecrecyError, InsufficientSamplesError, ParameterError
from .montecarlo import DEFAULT_SAMPLES, estimate_outage_capacity
from .scenarios import BUILTIN_SCENARIOS, MODES, builtin_scenario, rows_to_csv, rows_to_records, run_scenario
from .streams import SEED_ENV_VAR, default_seed
from .system_model import antenna_threshold, db_to_linear, derive_params, reference_params
from .verify import run_checks

EXIT_OK, EXIT_PARAMS, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 1, 2, 3

# dest -> (flag, type, help)
_PARAM_FLAGS = {
    "nr": ("--nr", int, "relay antenna count N_R (default 100)"),
    "rho": ("--rho", float, "CSI correlation coefficient in (0, 1] (default 0.9)"),
    "eps": ("--eps", float, "target outage probability in (0, 1) (default 0.01)"),
    "alpha_sr": ("--alpha-sr", float, "source->relay path loss, linear (default 1)"),
    "alpha_rd": ("--alpha-rd", float, "relay->destination path loss, linear (default 1)"),
    "alpha_re": ("--alpha-re", float, "relay->eavesdropper path loss, linear (default 1)"),
    "snr_s": ("--snr-s", float, "source transmit SNR in dB (default 10)"),
    "snr_r": ("--snr-r", float, "relay transmit SNR in dB"),
    "bandwidth": ("--bandwidth", float, "half spectral bandwidth W in Hz (default 10000)"),
}
_RUN_FLAGS = {
    "samples": ("--samples", int, f"Monte Carlo sample count (default {DEFAULT_SAMPLES})"),
    "seed": ("--seed", int, f"master seed (default ${SEED_ENV_VAR} or a fixed constant)"),
    "workers": ("--workers", int, "parallel workers (default 1)"),
    "out": ("--out", str, "write output to this file instead of stdout"),
    "format": ("--format", str, "output format: text, csv or json"),
    "mode": ("--mode", str, f"sweep evaluation mode: {', '.join(MODES)}"),
}
_TYPES = {dest: spec[1] for dest, spec in {**_PARAM_FLAGS, **_RUN_FLAGS}.items()}
_PARAM_FIELDS = {"nr": "n_r", "rho": "rho", "eps": "epsilon", "alpha_sr": "alpha_sr",
                 "alpha_rd": "alpha_rd", "alpha_re": "alpha_re", "bandwidth": "w"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParameterError("usage", message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key = value file; flags given on the command line win")
    for dest, (flag, typ, help_) in {**_PARAM_FLAGS, **_RUN_FLAGS}.items():
        common.add_argument(flag, dest=dest, type=typ, default=None, help=help_)

    parser = _Parser(prog="lsmimo-secrecy",
                     description="Secrecy outage capacity and optimal relay power for LS-MIMO AF relaying.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="closed-form capacity at the given relay SNR")
    sub.add_parser("optimize", parents=[common], help="optimal relay power and maximum capacity")
    sub.add_parser("simulate", parents=[common], help="Monte Carlo capacity estimate")
    sweep = sub.add_parser("sweep", parents=[common], help="figure data for a built-in scenario")
    sweep.add_argument("scenario", choices=sorted(BUILTIN_SCENARIOS))
    sub.add_parser("verify", parents=[common], help="run the self-check suite")
    return parser


def _merge_config(args):
    if not args.config:
        return args
    for key, text in read_config(args.config).items():
        dest = key.replace("-", "_")
        if dest not in _TYPES:
            raise ParameterError("config", f"unknown key {key!r}")
        if getattr(args, dest) is None:
            try:
                setattr(args, dest, _TYPES[dest](text))
            except ValueError:
                raise ParameterError(key, f"cannot parse {text!r}") from None
    return args


def _param_overrides(args):
    out = {field: getattr(args, dest) for dest, field in _PARAM_FIELDS.items()
           if getattr(args, dest) is not None}
    if args.snr_s is not None:
        out["p_s"] = db_to_linear(args.snr_s)
    if args.snr_r is not None:
        out["p_r"] = db_to_linear(args.snr_r)
    return out


def _emit(args, record, default="text"):
    fmt = args.format or default
    if fmt == "json":
        text = json.dumps(record, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(record.keys())
        writer.writerow(_csv_value(v) for v in record.values())
        text = buf.getvalue()
    elif fmt == "text":
        width = max(len(k) for k in record)
        text = "".join(f"{k:<{width}}  {_csv_value(v)}\n" for k, v in record.items())
    else:
        raise ParameterError("format", f"must be text, csv or json, got {fmt!r}")
    _write(args, text)


def _csv_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return "" if v is None else str(v)


def _write(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_analyze(args):
    params = reference_params(**_param_overrides(args))
    if params.p_r is None:
        raise ParameterError("snr_r", "analyze needs the relay SNR (--snr-r)")
    d = derive_params(params)
    c_d, c_e = csoc_terms(d, params.w, params.p_r)
    _emit(args, {
        "r_l": d.r_l,
        "secrecy_feasible": d.secrecy_feasible,
        "p_r": params.p_r,
        "c_d": c_d,
        "c_e": c_e,
        "c_soc": closed_form_csoc(d, params.w, params.p_r),
    })
    return EXIT_OK


def _cmd_optimize(args):
    params = reference_params(**_param_overrides(args))
    res = max_csoc(params)
    _emit(args, {
        "r_l": derive_params(params).r_l,
        "p_r_star": res.p_r_star,
        "snr_r_star_db": res.snr_r_star_db,
        "c_soc_max": res.c_soc_max,
        "ceiling": res.ceiling,
    })
    return EXIT_OK


def _cmd_simulate(args):
    params = reference_params(**_param_overrides(args))
    d = derive_params(params)
    if params.p_r is None:
        try:
            p_r = optimal_power(d)
        except InfeasibleSecrecyError as exc:
            raise InfeasibleSecrecyError(exc.r_l, antenna_threshold(params)) from None
    else:
        p_r = params.p_r
    seed = default_seed() if args.seed is None else args.seed
    n = args.samples or DEFAULT_SAMPLES
    est = estimate_outage_capacity(params, p_r, n, seed, workers=args.workers or 1)
    exact = closed_form_csoc(d, params.w, p_r)
    _emit(args, {
        "p_r": p_r,
        "n_samples": est.n_samples,
        "seed": seed,
        "c_soc_hat": est.c_soc_hat,
        "ci_low": est.ci_low,
        "ci_high": est.ci_high,
        "c_soc_closed_form": exact,
        "relative_gap": (est.c_soc_hat - exact) / exact if exact != 0 else None,
    })
    return EXIT_OK


def _cmd_sweep(args):
    overrides = _param_overrides(args)
    scenario = builtin_scenario(args.scenario, overrides or None, mode=args.mode,
                                samples=args.samples,
                                seed=default_seed() if args.seed is None else args.seed)
    rows = run_scenario(scenario, workers=args.workers or 1)
    fmt = args.format or "csv"
    if fmt == "csv":
        _write(args, rows_to_csv(scenario, rows))
    elif fmt == "json":
        _write(args, json.dumps(rows_to_records(scenario, rows), indent=2) + "\n")
    else:
        raise ParameterError("format", f"sweep writes csv or json, got {fmt!r}")
    return EXIT_OK


def _cmd_verify(args):
    seed = default_seed() if args.seed is None else args.seed
    results = run_checks(seed, samples=args.samples or 50_000)
    lines = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed (seed {seed})")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


_COMMANDS = {"analyze": _cmd_analyze, "optimize": _cmd_optimize, "simulate": _cmd_simulate,
             "sweep": _cmd_sweep, "verify": _cmd_verify}


def main(argv=None):
    """Run the CLI and return the exit status."""
    try:
        args = _merge_config(build_parser().parse_args(argv))
        return _COMMANDS[args.command](args)
    except InfeasibleSecrecyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ParameterError, InsufficientSamplesError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except SystemExit as exc:  # --help / --version
        return exc.code or 0


def run():
    sys.exit(main())
