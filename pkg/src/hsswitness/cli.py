"""Command-line front end: simulate, witness, compare and sweep.

Exit status 0 on success (for ``compare``: full sign agreement), 1 on runtime
failure or disagreement, 2 on configuration errors. Nothing is written to
standard output unless the command succeeds.
"""

from __future__ import annotations

import argparse
import io
import math
import os
import sys

from . import __version__
from . import tolerances as tol
from .errors import ConfigError, HSSError, UnknownParameter
from .runs import (
    ADAPTERS,
    BASE_COLUMNS,
    RESERVED,
    Run,
    RunConfig,
    adapter_for,
    compare,
    parse_config_text,
    sweep,
    sweep_values,
    witness_summary,
)
from .witness import phi_grid

EXIT_OK, EXIT_RUNTIME, EXIT_CONFIG = 0, 1, 2


def _model_epilog() -> str:
    lines = ["models, parameter keys and time units:"]
    for a in ADAPTERS.values():
        keys = ", ".join(k.name + ("" if k.required else f"={k.default}") for k in a.keys)
        lines.append(f"  {a.name:<16} time: {a.time_unit}")
        lines.append(f"  {'':<16} keys: {keys}")
    lines.append("")
    lines.append("rate keys accept 0.5, const(c), cos(a,b,w) = a + b cos(w t), tanh(s) = -s tanh(t),")
    lines.append("pwl(t0:v0,t1:v1,...); --phi accepts a number, pi/2-style multiples of pi, or grid:N")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=sorted(ADAPTERS), help="model name")
    common.add_argument("--set", dest="sets", action="append", default=[], metavar="KEY=VALUE", help="model parameter (repeatable)")
    common.add_argument("--config", metavar="FILE", help="file of 'key = value' lines; flags override it")
    common.add_argument("--t-max", type=float, help="end of the time window (default 10)")
    common.add_argument("--dt", type=float, help=f"time step (default {tol.DEFAULT_DT:g})")
    common.add_argument("--phi", help="probe phase: number, pi expression or grid:N")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="hsswitness",
        description="Hilbert-Schmidt speed witnesses of non-Markovian dynamics.",
        epilog=_model_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.RawDescriptionHelpFormatter
    p = sub.add_parser("simulate", parents=[common], help="CSV time series", epilog=_model_epilog(), formatter_class=fmt)
    p.add_argument("--columns", help="comma-separated column subset (default: all)")

    for name, text in (("witness", "HSS witness report"), ("compare", "HSS vs trace-distance witness")):
        p = sub.add_parser(name, parents=[common], help=text, epilog=_model_epilog(), formatter_class=fmt)
        p.add_argument("--tol", type=float, default=tol.WITNESS_TOL, help="witness threshold (default 1e-8)")
        if name == "witness":
            p.add_argument("--machine", action="store_true", help="append a key=value block")

    p = sub.add_parser("sweep", parents=[common], help="n_hss over a parameter range", epilog=_model_epilog(), formatter_class=fmt)
    p.add_argument("--param", required=True, help="parameter to sweep")
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--tol", type=float, default=tol.WITNESS_TOL)
    return parser


def _split_set(item: str) -> tuple[str, str]:
    if "=" not in item:
        raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
    key, value = (s.strip() for s in item.split("=", 1))
    if not key:
        raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
    return key, value


def _float_setting(settings: dict, key: str, default: float) -> float:
    value = settings.get(key)
    if value is None:
        return default
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {value!r} as a number") from None


def config_from_args(args) -> RunConfig:
    settings: dict = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                settings.update(parse_config_text(fh.read(), args.config))
        except OSError as exc:
            raise ConfigError(f"config: cannot read {args.config}: {exc.strerror}") from None
    for item in args.sets:
        key, value = _split_set(item)
        settings[key] = value
    for key, value in (("model", args.model), ("t_max", args.t_max), ("dt", args.dt), ("phi", args.phi)):
        if value is not None:
            settings[key] = value
    params = {k: str(v) for k, v in settings.items() if k not in RESERVED}
    columns = None
    if getattr(args, "columns", None):
        columns = tuple(c.strip() for c in args.columns.split(",") if c.strip())
    return RunConfig(
        model=settings.get("model"),
        params=params,
        t_max=_float_setting(settings, "t_max", 10.0),
        dt=_float_setting(settings, "dt", tol.DEFAULT_DT),
        phi=None if settings.get("phi") is None else str(settings["phi"]),
        columns=columns,
    )


def _num(x: float) -> str:
    return repr(float(x))


def write_csv(buf, header, rows) -> None:
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_num(x) for x in row) + "\n")


# commands ----------------------------------------------------------------------


def cmd_simulate(cfg: RunConfig, buf, err) -> int:
    run = Run(cfg, default_phis=[0.0])
    if len(run.probes) != 1:
        raise ConfigError("phi: simulate needs a single probe state (for pauli pick one parametrization)")
    available = BASE_COLUMNS + run.adapter.extras
    columns = cfg.columns or available
    unknown = [c for c in columns if c not in available]
    if unknown:
        raise ConfigError(f"columns: unknown {', '.join(unknown)} (available: {', '.join(available)})")
    table = run.table()
    _warn(run, err)
    write_csv(buf, columns, zip(*(table[c] for c in columns)))
    return EXIT_OK


def _interval_lines(intervals) -> list[str]:
    if not intervals:
        return ["  (none)"]
    lines = [f"  {'t_start':>14} {'t_end':>14} {'peak':>14}"]
    lines += [f"  {i.t_start:>14.6g} {i.t_end:>14.6g} {i.peak:>14.6g}" for i in intervals]
    return lines


def _header(run: Run) -> list[str]:
    params = ", ".join(f"{k}={v}" for k, v in run.values.items())
    g = run.grid
    return [
        f"model      {run.adapter.name}",
        f"params     {params}",
        f"grid       t in [{_num(g.t0)}, {_num(g.t_end)}] step {_num(g.dt)} ({g.n} samples; {run.adapter.time_unit})",
    ]


def cmd_witness(cfg: RunConfig, buf, err, tol_: float = tol.WITNESS_TOL, machine: bool = False) -> int:
    run = Run(cfg, default_phis=list(phi_grid(tol.DEFAULT_PHI_GRID)))
    s = witness_summary(run, tol_)
    _warn(run, err)
    best = s.best.parametrization if s.best.parametrization else _num(s.best.phi)
    lines = _header(run) + [
        f"probes     {len(run.probes)}",
        f"n_hss      {_num(s.n_hss)}",
        f"phi_star   {best}",
        f"intervals  chi > {tol_:g} at phi_star:",
        *_interval_lines(s.intervals),
        f"verdict    {s.verdict}",
    ]
    if machine:
        lines += [
            "",
            "[result]",
            f"model={run.adapter.name}",
            f"verdict={s.verdict}",
            f"n_hss={_num(s.n_hss)}",
            f"phi_star={best}",
            f"interval_count={len(s.intervals)}",
        ]
        lines += [
            f"interval.{k}={_num(i.t_start)},{_num(i.t_end)},{_num(i.peak)}" for k, i in enumerate(s.intervals, 1)
        ]
    buf.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_compare(cfg: RunConfig, buf, err, tol_: float = tol.WITNESS_TOL) -> int:
    adapter = ADAPTERS.get(cfg.model) if cfg.model else None
    defaults = list(adapter.canonical_phis) if adapter else [0.0]
    run = Run(cfg, default_phis=defaults)
    results = compare(run, tol_)
    _warn(run, err)
    lines = _header(run)
    ok = True
    for c in results:
        a = c.agreement
        ok &= a.all_match
        lines += [
            "",
            f"probe      {c.probe.label}",
            f"agreement  samples_compared={a.samples_compared} sign_matches={a.sign_matches} "
            f"excluded_below_tol={a.excluded_below_tol} ({100.0 * a.fraction:.4f}%)",
        ]
        if c.ratio_range is not None:
            lo, hi = c.ratio_range
            lines.append(f"hss/trace_distance  min={_num(lo)} max={_num(hi)}")
        lines += _side_by_side(c.chi_intervals, c.sigma_intervals)
    lines += ["", f"result     {'AGREE' if ok else 'DISAGREE'}"]
    buf.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_RUNTIME


def _side_by_side(chi, sigma) -> list[str]:
    cell = lambda i: f"{i.t_start:>11.6g} {i.t_end:>11.6g} {i.peak:>11.4g}"
    blank = " " * 35
    out = [f"  {'chi > tol (start end peak)':<35} | sigma > tol (start end peak)"]
    for k in range(max(len(chi), len(sigma), 1)):
        left = cell(chi[k]) if k < len(chi) else (blank if chi else f"{'(none)':<35}")
        right = cell(sigma[k]) if k < len(sigma) else ("" if sigma else "(none)")
        out.append(f"  {left} | {right}")
    return out


def cmd_sweep(cfg: RunConfig, name: str, start: float, stop: float, steps: int, buf, err, tol_: float = tol.WITNESS_TOL) -> int:
    if name in RESERVED:
        raise UnknownParameter(f"unknown parameter {name!r}: only model parameters can be swept")
    adapter = adapter_for(cfg.model)
    values = sweep_values(adapter, name, start, stop, steps)
    # the swept key may be a required one, so validate with it filled in
    RunConfig(cfg.model, {**cfg.params, name: repr(float(start))}, cfg.t_max, cfg.dt, cfg.phi).validate()
    rows = sweep(cfg, name, values, tol_, default_phis=list(phi_grid(tol.DEFAULT_PHI_GRID)))
    write_csv(buf, (name, "n_hss"), rows)
    return EXIT_OK


def _warn(run: Run, err) -> None:
    for w in run.warnings:
        err.write(f"warning: {w}\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    buf = io.StringIO()
    err = sys.stderr
    try:
        cfg = config_from_args(args)
        if args.command == "simulate":
            status = cmd_simulate(cfg, buf, err)
        elif args.command == "witness":
            status = cmd_witness(cfg, buf, err, _check_tol(args.tol), args.machine)
        elif args.command == "compare":
            status = cmd_compare(cfg, buf, err, _check_tol(args.tol))
        else:
            status = cmd_sweep(cfg, args.param, args.start, args.stop, args.steps, buf, err, _check_tol(args.tol))
    except (ConfigError, UnknownParameter) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except (HSSError, ArithmeticError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_RUNTIME

    text = buf.getvalue()
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            err.write(f"error: cannot write {args.out}: {exc.strerror}\n")
            return EXIT_RUNTIME
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the flush at exit
            sys.stdout = open(os.devnull, "w")
    return status


def _check_tol(value: float) -> float:
    if not (math.isfinite(value) and value >= 0):
        raise ConfigError(f"tol: must be nonnegative, got {value}")
    return value


if __name__ == "__main__":
    sys.exit(main())
