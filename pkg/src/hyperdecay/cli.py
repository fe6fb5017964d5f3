"""Command-line entry point: ``hyperdecay <command> [flags]``.

Output is CSV by default; ``--format json`` wraps the payload in an envelope
echoing the resolved parameters. Exit codes: 0 success, 2 invalid input or
parameters (one ``error: <Code>: <message>`` line on stderr), 64 unknown
command, 65 malformed model JSON.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._kernels import BACKEND
from .acvf import DEFAULT_TOL, acvf, aggregate_acvf, fit_decay
from .duality import dual
from .errors import HyperdecayError
from .models import ModelSpec, alpha_of, validate
from .prediction import (
    a_k_diagnostic,
    durbin_levinson,
    exact_loglik,
    gvar_fracnoise,
    gvar_general,
    predict_one_step,
)
from .simulation import SimConfig, simulate
from .spectrum import frequency_grid, sdf
from .weights import check_rate, weights

EXIT_USAGE = 2
EXIT_UNKNOWN_COMMAND = 64
EXIT_BAD_MODEL = 65

TABLE1_D = (-0.4, -0.1, 0.1, 0.4)
TABLE1_N = tuple(10 ** j for j in range(8))


class MalformedModel(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(float(v)) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _window(text: str) -> tuple[int, int]:
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError("window must be 'lo,hi'")
    return vals[0], vals[1]


def load_model(text: str) -> ModelSpec:
    """Parse ``--model``: inline JSON or a path to a JSON file."""
    raw = text
    if not text.lstrip().startswith("{"):
        path = Path(text)
        try:
            raw = path.read_text()
        except OSError as exc:
            raise MalformedModel(f"cannot read model file {text!r}: {exc}") from None
    try:
        return ModelSpec.from_json(raw)
    except (ValueError, TypeError) as exc:
        raise MalformedModel(str(exc)) from None


def read_column(source: str) -> np.ndarray:
    """Single-column CSV from a path (or ``-`` for stdin); a header line is skipped."""
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    values = []
    for i, line in enumerate(text.splitlines()):
        cell = line.split(",")[0].strip()
        if not cell:
            continue
        try:
            values.append(float(cell))
        except ValueError:
            if i == 0:
                continue
            raise ValueError(f"non-numeric value {cell!r} on line {i + 1}") from None
    return np.array(values)


def _series_arg(text: str) -> np.ndarray:
    if Path(text).is_file() or text == "-":
        return read_column(text)
    return np.array(_float_list(text))


def _csv(header: str, rows) -> str:
    lines = [header]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else repr(v) for v in row))
    return "\n".join(lines) + "\n"


class Result:
    def __init__(self, csv: str, data, model: ModelSpec | None = None,
                 params: dict | None = None, metadata: dict | None = None):
        self.csv = csv
        self.data = data
        self.model = model
        self.params = params or {}
        self.metadata = metadata or {}


def _model_params(args) -> dict:
    return {k: v for k, v in vars(args).items()
            if k not in ("command", "format", "model", "func")}


# ---------------------------------------------------------------- commands

def cmd_validate(args):
    spec = validate(args.model)
    return Result(spec.to_json() + "\n", spec.to_dict(), spec)


def cmd_acvf(args):
    seq = acvf(args.model, args.max_lag, args.tol)
    vals = seq.values.tolist()
    return Result(seq.to_csv(), vals, args.model, metadata=seq.metadata())


def cmd_pacf(args):
    seq = acvf(args.model, args.n - 1, args.tol)
    res = durbin_levinson(seq, args.n)
    rows = [(0, "", float(res.sigma2[0]))]
    rows += [(k, float(res.pacf[k - 1]), float(res.sigma2[k])) for k in range(1, args.n)]
    data = {"pacf": res.pacf.tolist(), "sigma2": res.sigma2.tolist(), "log_gvar": res.log_gvar}
    return Result(_csv("k,pacf,sigma2", rows), data, args.model)


def cmd_weights(args):
    w = weights(args.model, args.kind, args.L)
    lo, hi = args.window if args.window else (1, args.L)
    meta = {}
    if args.window:
        fit = check_rate(w, args.window)
        meta["fit"] = {"exponent": fit.alpha_hat, "constant": fit.c_gamma_hat,
                       "expected_exponent": fit.expected_alpha}
    sel = w.values[lo - 1:hi]
    return Result(w.to_csv(lo, hi), sel.tolist(), args.model, metadata=meta)


def cmd_spectrum(args):
    lam = frequency_grid(args.grid, args.num, args.lmin, args.lmax)
    f = sdf(args.model, lam)
    return Result(_csv("lambda,f", zip(lam.tolist(), f.tolist())),
                  {"lambda": lam.tolist(), "f": f.tolist()}, args.model)


def cmd_dual(args):
    out = dual(args.model)
    return Result(out.to_json() + "\n", out.to_dict(), args.model)


def cmd_aggregate(args):
    seq = acvf(args.model, (args.max_lag + 1) * args.m - 1, args.tol)
    agg = aggregate_acvf(seq, args.m, args.max_lag)
    return Result(agg.to_csv(), agg.values.tolist(), args.model, metadata=agg.metadata())


def _gvar_curve(args):
    if args.model is not None:
        spec = validate(args.model)
        if spec.kind.value == "fracnoise":
            return gvar_fracnoise(spec.d, args.n_list)
        seq = acvf(spec, max(args.n_list) - 1, args.tol)
        return gvar_general(seq, args.n_list)
    if args.d is None:
        raise argparse.ArgumentTypeError("gvar needs --d or --model")
    return gvar_fracnoise(args.d, args.n_list)


def cmd_gvar(args):
    curve = _gvar_curve(args)
    data = {"n": curve.n_values.tolist(), "g": curve.g_values.tolist()}
    return Result(curve.to_csv(args.decimals), data, args.model)


def table1_grid() -> list[list[float]]:
    return [gvar_fracnoise(d, TABLE1_N).g_values.tolist() for d in TABLE1_D]


def cmd_table1(args):
    grid = table1_grid()
    header = "d," + ",".join(f"n={n}" for n in TABLE1_N)
    rows = [[f"{d}"] + [f"{g:.4f}" for g in row] for d, row in zip(TABLE1_D, grid)]
    data = {"d": list(TABLE1_D), "n": list(TABLE1_N), "g": grid}
    return Result(_csv(header, rows), data)


def cmd_ak(args):
    a, ka = a_k_diagnostic(args.d, np.asarray(args.k, dtype=float))
    rows = zip(args.k, a.tolist(), ka.tolist())
    return Result(_csv("k,a_k,k_a_k", rows), {"k": args.k, "a_k": a.tolist(),
                                               "k_a_k": ka.tolist()})


def cmd_predict(args):
    hist = _series_arg(args.history)
    seq = acvf(args.model, hist.size, args.tol)
    pred, var = predict_one_step(seq, hist)
    return Result(_csv("prediction,error_variance", [(pred, var)]),
                  {"prediction": pred, "error_variance": var}, args.model)


def cmd_loglik(args):
    data = read_column(args.data)
    seq = acvf(args.model, max(data.size - 1, 0), args.tol)
    ll = exact_loglik(seq, data)
    return Result(_csv("loglik,aic", [(ll.loglik, ll.aic)]),
                  {"loglik": ll.loglik, "aic": ll.aic, "n": int(data.size)}, args.model)


def cmd_simulate(args):
    z = simulate(args.model, SimConfig(args.n, args.seed, args.method, args.stream))
    return Result(_csv("z", ((v,) for v in z.tolist())), z.tolist(), args.model)


def cmd_rates(args):
    spec = validate(args.model)
    alpha = alpha_of(spec)
    rows = []
    lo, hi = args.acvf_window
    fit = fit_decay(acvf(spec, hi, args.tol), args.acvf_window)
    rows.append(("acvf", lo, hi, fit.alpha_hat, alpha))
    if not spec.is_fgn:
        wlo, whi = args.weight_window
        for kind in ("psi", "pi"):
            wf = check_rate(weights(spec, kind, whi), args.weight_window)
            rows.append((kind, wlo, whi, wf.alpha_hat, wf.expected_alpha))
    data = [dict(zip(("quantity", "window_lo", "window_hi", "estimated", "theoretical"), r))
            for r in rows]
    return Result(_csv("quantity,window_lo,window_hi,estimated,theoretical", rows), data, spec)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperdecay", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, model=True, tol=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        if model:
            p.add_argument("--model", required=model == "required" or model is True,
                           help="model JSON (inline or file path)")
        if tol:
            p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                           help="FARMA ACVF truncation tolerance")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "validate a model and echo it", tol=False)
    p = add("acvf", cmd_acvf, "autocovariances γ(0..K)")
    p.add_argument("--max-lag", type=int, default=20)
    p = add("pacf", cmd_pacf, "PACF and prediction-error variances")
    p.add_argument("--n", type=int, default=20)
    p = add("weights", cmd_weights, "ψ or π weights", tol=False)
    p.add_argument("--kind", choices=("psi", "pi"), default="psi")
    p.add_argument("--L", type=int, default=100)
    p.add_argument("--window", type=_window, default=None,
                   help="lo,hi: restrict output and report a log-log rate fit")
    p = add("spectrum", cmd_spectrum, "spectral density on a grid", tol=False)
    p.add_argument("--grid", choices=("log", "linear"), default="log")
    p.add_argument("--num", type=int, default=100)
    p.add_argument("--lmin", type=float, default=None)
    p.add_argument("--lmax", type=float, default=math.pi)
    add("dual", cmd_dual, "dual model", tol=False)
    p = add("aggregate", cmd_aggregate, "ACVF of block means")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-lag", type=int, default=20)
    p = add("gvar", cmd_gvar, "standardized generalized variance g(n)")
    p._actions[[a.dest for a in p._actions].index("model")].required = False
    p.add_argument("--d", type=float, default=None)
    p.add_argument("--n-list", type=_int_list, default=[1, 10, 100, 1000])
    p.add_argument("--decimals", type=int, default=4)
    add("table1", cmd_table1, "generalized-variance grid for d = ±0.1, ±0.4",
        model=False, tol=False)
    p = add("ak", cmd_ak, "Stirling diagnostic a(k) and k·a(k)", model=False, tol=False)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--k", type=_int_list, default=[10, 100, 1000, 10 ** 6])
    p = add("predict", cmd_predict, "one-step predictor from a history")
    p.add_argument("--history", required=True, help="CSV file, '-' or comma list")
    p = add("loglik", cmd_loglik, "exact Gaussian log-likelihood and AIC")
    p.add_argument("--data", required=True, help="single-column CSV file or '-'")
    p = add("simulate", cmd_simulate, "exact Gaussian sample path")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--method", choices=("dl", "dense"), default="dl")
    p = add("rates", cmd_rates, "estimated vs theoretical decay exponents")
    p.add_argument("--acvf-window", type=_window, default=(1000, 10000))
    p.add_argument("--weight-window", type=_window, default=(1000, 100000))
    return parser


COMMANDS = ("validate", "acvf", "pacf", "weights", "spectrum", "dual", "aggregate", "gvar",
            "table1", "ak", "predict", "loglik", "simulate", "rates")


def _jsonable(value):
    if isinstance(value, ModelSpec):
        return value.to_dict()
    if isinstance(value, tuple):
        return list(value)
    return value


def _envelope(args, res: Result) -> str:
    params = {k: _jsonable(v) for k, v in _model_params(args).items()}
    meta = {"version": __version__, "backend": BACKEND}
    if "tol" in params:
        meta["tolerances"] = {"tol": params["tol"]}
    meta.update(res.metadata)
    env = {
        "command": args.command,
        "model": res.model.to_dict() if res.model else None,
        "params": params,
        "data": res.data,
        "metadata": meta,
    }
    return json.dumps(env) + "\n"


def _fail(code: str, message: str, status: int) -> int:
    first = str(message).splitlines()[0] if str(message) else ""
    print(f"error: {code}: {first}", file=sys.stderr)
    return status


def run(argv) -> int:
    """Execute one command; returns the process exit code."""
    argv = list(argv)
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        return _fail("UnknownCommand", f"unknown command {argv[0]!r}", EXIT_UNKNOWN_COMMAND)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "model", None) is not None:
            args.model = load_model(args.model)
        res = args.func(args)
    except MalformedModel as exc:
        return _fail("MalformedModel", str(exc), EXIT_BAD_MODEL)
    except HyperdecayError as exc:
        return _fail(exc.code, str(exc), EXIT_USAGE)
    except (ValueError, OSError, argparse.ArgumentTypeError) as exc:
        return _fail("InvalidInput", str(exc), EXIT_USAGE)
    out = _envelope(args, res) if args.format == "json" else res.csv
    sys.stdout.write(out)
    return 0


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
