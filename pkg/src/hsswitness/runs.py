"""Model adapters and run orchestration behind the command-line interface.

Each adapter knows its parameter keys, how to build the model parameters from
text, which probe states it evaluates, and how to produce the HSS and
trace-distance series on a time grid.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from . import tolerances as tol
from .errors import ConfigError, UnknownParameter
from .models import lambda_type, pauli, phase_covariant, two_qubit, v_type
from .models.rates import parse_rate
from .numerics import Grid, Series
from .witness import (
    Agreement,
    Interval,
    chi_series,
    detect_intervals,
    phi_grid,
    sigma_series,
    sign_agreement,
    thresholded_measure,
)

RESERVED = ("model", "t_max", "dt", "phi")
BASE_COLUMNS = ("t", "hss", "chi", "trace_distance", "sigma")
MAX_SAMPLES = 10_000_000


@dataclass(frozen=True)
class Key:
    name: str
    kind: str  # "float", "int", "rate" or "choice"
    default: str | None = None
    choices: tuple = ()
    help: str = ""

    @property
    def required(self) -> bool:
        return self.default is None

    def parse(self, text: str):
        try:
            if self.kind == "float":
                value = float(text)
                if not math.isfinite(value):
                    raise ValueError
                return value
            if self.kind == "int":
                return int(text)
            if self.kind == "rate":
                return parse_rate(text)
        except ValueError:
            raise ConfigError(f"{self.name}: cannot parse {text!r} as {self.kind}") from None
        value = str(text).strip().lower()
        if value not in self.choices:
            raise ConfigError(f"{self.name}: expected one of {', '.join(self.choices)}, got {text!r}")
        return value


@dataclass(frozen=True)
class Probe:
    label: str
    phi: float
    parametrization: str | None = None


@dataclass
class Context:
    """Per-run state shared by all probes (propagators, rate integrals, ...)."""

    params: object
    grid: Grid
    data: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)


class Adapter:
    name = ""
    time_unit = ""
    keys: tuple = ()
    extras: tuple = ()
    phase_dependent_hss = True
    canonical_phis: tuple = (0.0,)

    def key(self, name: str) -> Key:
        for k in self.keys:
            if k.name == name:
                return k
        raise UnknownParameter(f"unknown parameter {name!r} for model {self.name} (known: {self.key_names()})")

    def key_names(self) -> str:
        return ", ".join(k.name for k in self.keys)

    def parse(self, raw: dict) -> dict:
        for name in raw:
            self.key(name)
        values = {}
        for k in self.keys:
            text = raw.get(k.name, k.default)
            if text is None:
                raise ConfigError(f"{k.name}: required for model {self.name}")
            values[k.name] = k.parse(text)
        return values

    def build(self, raw: dict):
        return self.make(self.parse(raw))

    def make(self, values: dict):
        raise NotImplementedError

    def probes(self, values: dict, phis) -> list[Probe]:
        return [Probe(f"phi={_fmt(phi)}", float(phi)) for phi in phis]

    def prepare(self, params, grid: Grid) -> Context:
        return Context(params, grid)

    def hss(self, ctx: Context, probe: Probe) -> np.ndarray:
        raise NotImplementedError

    def distance(self, ctx: Context, probe: Probe) -> np.ndarray:
        raise NotImplementedError

    def extra_columns(self, ctx: Context) -> dict:
        return {}


def _fmt(x: float) -> str:
    return repr(float(x))


def _catch(fn, *args):
    try:
        return fn(*args)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None


class PhaseCovariantAdapter(Adapter):
    name = "phase_covariant"
    time_unit = "t in units of the inverse rate scale"
    keys = (
        Key("gamma1", "rate", "0", help="heating rate"),
        Key("gamma2", "rate", "0", help="dissipation rate"),
        Key("gamma3", "rate", "0", help="dephasing rate"),
        Key("omega", "rate", "0", help="Lamb-shift frequency"),
        Key("profile", "choice", "none", ("none", "eternal"), help="eternal presets gamma1=gamma2=1, gamma3=tanh(0.5)"),
    )
    extras = ("gamma1", "gamma2", "gamma3")
    canonical_phis = (0.0, math.pi / 2)

    def parse(self, raw: dict) -> dict:
        raw = dict(raw)
        if str(raw.get("profile", "none")).strip().lower() == "eternal":
            for name, text in (("gamma1", "1"), ("gamma2", "1"), ("gamma3", "tanh(0.5)")):
                raw.setdefault(name, text)
        return super().parse(raw)

    def make(self, v):
        return phase_covariant.PhaseCovariantParams(v["gamma1"], v["gamma2"], v["gamma3"], v["omega"])

    def prepare(self, params, grid):
        ctx = Context(params, grid)
        ctx.data["prop"] = phase_covariant.propagator(params, grid.times)
        return ctx

    def hss(self, ctx, probe):
        return phase_covariant.hss(ctx.params, probe.phi, ctx.grid.times, ctx.data["prop"])

    def distance(self, ctx, probe):
        return phase_covariant.trace_distance(ctx.params, probe.phi, ctx.grid.times, ctx.data["prop"])

    def extra_columns(self, ctx):
        g = ctx.params.rates(ctx.grid.times)
        return {f"gamma{i + 1}": np.asarray(x, dtype=float) for i, x in enumerate(g)}


class PauliAdapter(Adapter):
    name = "pauli"
    time_unit = "t in units of the inverse rate scale"
    keys = (
        Key("gamma1", "rate", "0"),
        Key("gamma2", "rate", "0"),
        Key("gamma3", "rate", "0"),
        Key(
            "parametrization",
            "choice",
            "all",
            tuple(p.value for p in pauli.Parametrization) + ("all",),
            help="probe family; 'all' evaluates the three",
        ),
    )
    extras = ("gamma1", "gamma2", "gamma3")

    def make(self, v):
        return pauli.PauliParams(v["gamma1"], v["gamma2"], v["gamma3"])

    def probes(self, values, phis):
        if phis is not None:
            raise ConfigError("phi: the pauli model fixes the phase through 'parametrization'")
        chosen = values["parametrization"]
        params = list(pauli.Parametrization) if chosen == "all" else [pauli.Parametrization(chosen)]
        return [Probe(p.value, p.phi, p.value) for p in params]

    def prepare(self, params, grid):
        ctx = Context(params, grid)
        prop = pauli.propagator(params, grid)
        ctx.data["prop"] = prop
        low = float(np.min(prop.prob))
        if low < -pauli.PROB_TOL:
            ctx.warnings.append(f"Pauli weights go negative (min {low:.3e}); the map is not a channel on this window")
        return ctx

    def hss(self, ctx, probe):
        return pauli.hss(ctx.params, probe.parametrization, ctx.grid, ctx.data["prop"])

    def distance(self, ctx, probe):
        return pauli.trace_distance(ctx.params, probe.parametrization, ctx.grid, ctx.data["prop"])

    def extra_columns(self, ctx):
        g = ctx.params.rates(ctx.grid.times)
        return {f"gamma{i + 1}": np.asarray(x, dtype=float) for i, x in enumerate(g)}


class TwoQubitAdapter(Adapter):
    name = "two_qubit"
    time_unit = "gamma0*t"
    keys = (
        Key("gamma0", "float", "1", help="coupling strength"),
        Key("lambda", "float", None, help="reservoir spectral width"),
    )
    extras = ("P",)
    phase_dependent_hss = False

    def make(self, v):
        return _catch(two_qubit.TwoQubitParams, v["gamma0"], v["lambda"])

    def prepare(self, params, grid):
        ctx = Context(params, grid)
        ctx.data["P"] = two_qubit.coherence_function(params, grid.times)
        return ctx

    def hss(self, ctx, probe):
        return two_qubit.hss_closed_form(ctx.data["P"])

    def distance(self, ctx, probe):
        return two_qubit.trace_distance_closed_form(ctx.data["P"])

    def extra_columns(self, ctx):
        return {"P": ctx.data["P"]}


class VTypeAdapter(Adapter):
    name = "v_type"
    time_unit = "gamma*t"
    keys = (
        Key("gamma", "float", "1", help="decay rate of each transition"),
        Key("lambda", "float", None, help="reservoir spectral width"),
        Key("theta", "float", None, help="dipole alignment in [-1, 1]"),
    )
    extras = ("abs_g_plus", "abs_g_minus")
    phase_dependent_hss = False

    def make(self, v):
        return _catch(v_type.VTypeParams, v["gamma"], v["lambda"], v["theta"])

    def prepare(self, params, grid):
        ctx = Context(params, grid)
        gp, gm = v_type.amplitudes(params, grid.times)
        ctx.data["abs_g_plus"] = np.abs(gp)
        ctx.data["abs_g_minus"] = np.abs(gm)
        return ctx

    def hss(self, ctx, probe):
        ap, am = ctx.data["abs_g_plus"], ctx.data["abs_g_minus"]
        return ap * np.sqrt(am * am + 1.0) / 3.0

    def distance(self, ctx, probe):
        return ctx.data["abs_g_plus"]

    def extra_columns(self, ctx):
        return {k: ctx.data[k] for k in self.extras}


class LambdaAdapter(Adapter):
    name = "lambda_type"
    time_unit = "t in units of 1/lambda"
    keys = (
        Key("gamma0", "float", "0.01", help="coupling strength"),
        Key("lambda", "float", "1", help="cavity linewidth"),
        Key("omega_cav", "float", "200", help="cavity frequency"),
        Key("delta1", "float", "0", help="detuning of transition 1"),
        Key("delta2", "float", "0", help="detuning of transition 2"),
        Key("trunc_k", "float", "50", help="frequency window half-width in linewidths"),
    )
    extras = ("gamma1", "gamma2")
    phase_dependent_hss = False

    def make(self, v):
        return _catch(
            lambda_type.LambdaParams,
            v["gamma0"],
            v["lambda"],
            v["omega_cav"],
            v["delta1"],
            v["delta2"],
            v["trunc_k"],
        )

    def prepare(self, params, grid):
        ctx = Context(params, grid)
        ctx.data["rates"] = lambda_type.rate_series(params, grid)
        return ctx

    def hss(self, ctx, probe):
        return ctx.data["rates"].solution.hss()

    def distance(self, ctx, probe):
        return ctx.data["rates"].solution.trace_distance(probe.phi)

    def extra_columns(self, ctx):
        r = ctx.data["rates"]
        return {"gamma1": r.gamma1, "gamma2": r.gamma2}


ADAPTERS = {a.name: a for a in (PhaseCovariantAdapter(), PauliAdapter(), TwoQubitAdapter(), VTypeAdapter(), LambdaAdapter())}


def adapter_for(model: str | None) -> Adapter:
    if model is None:
        raise ConfigError(f"model: required (one of {', '.join(ADAPTERS)})")
    try:
        return ADAPTERS[model]
    except KeyError:
        raise ConfigError(f"model: unknown model {model!r} (one of {', '.join(ADAPTERS)})") from None


# phase specifications --------------------------------------------------------

_PI_EXPR = re.compile(r"^\s*([-+]?[0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$")


def parse_phi(text: str | None):
    """``None``, a float, a multiple of pi such as ``pi/2`` or ``3*pi/4``, or ``grid:N``.

    Returns ``None`` or a list of phases.
    """
    if text is None:
        return None
    s = str(text).strip().lower()
    if s.startswith("grid:"):
        try:
            n = int(s[5:])
        except ValueError:
            raise ConfigError(f"phi: bad grid size in {text!r}") from None
        if n < 1:
            raise ConfigError("phi: grid size must be at least 1")
        return [float(x) for x in phi_grid(n)]
    try:
        return [float(s)]
    except ValueError:
        pass
    m = _PI_EXPR.match(s)
    if m is None:
        raise ConfigError(f"phi: cannot parse {text!r}")
    coef, den = m.group(1), m.group(2)
    try:
        c = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
        d = 1.0 if den is None else float(den)
    except ValueError:
        raise ConfigError(f"phi: cannot parse {text!r}") from None
    if d == 0:
        raise ConfigError("phi: division by zero")
    return [c * math.pi / d]


# run configuration -----------------------------------------------------------


@dataclass
class RunConfig:
    model: str | None
    params: dict
    t_max: float = 10.0
    dt: float = tol.DEFAULT_DT
    phi: str | None = None
    columns: tuple | None = None

    def validate(self) -> Adapter:
        adapter = adapter_for(self.model)
        if not (isinstance(self.dt, float) and math.isfinite(self.dt) and self.dt > 0):
            raise ConfigError(f"dt: must be positive, got {self.dt}")
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise ConfigError(f"t_max: must be positive, got {self.t_max}")
        if not self.t_max > self.dt:
            raise ConfigError(f"t_max: must exceed dt ({self.t_max} <= {self.dt})")
        n = round(self.t_max / self.dt) + 1
        if n < 3:
            raise ConfigError("t_max: grid needs at least 3 samples")
        if n > MAX_SAMPLES:
            raise ConfigError(f"t_max/dt: {n:.3g} samples exceeds the limit of {MAX_SAMPLES}")
        adapter.parse(self.params)
        return adapter

    @property
    def grid(self) -> Grid:
        return Grid.span(self.t_max, self.dt)


def parse_config_text(text: str, source: str = "config") -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        out[key] = value
    return out


# runs --------------------------------------------------------------------------


@dataclass
class ProbeResult:
    probe: Probe
    hss: Series
    distance: Series | None = None

    @property
    def chi(self) -> Series:
        return chi_series(self.hss)

    @property
    def sigma(self) -> Series:
        return sigma_series(self.distance)


class Run:
    """A validated configuration bound to its adapter, grid and model parameters."""

    def __init__(self, cfg: RunConfig, default_phis=None):
        self.cfg = cfg
        self.adapter = cfg.validate()
        self.values = self.adapter.parse(cfg.params)
        self.params = self.adapter.make(self.values)
        self.grid = cfg.grid
        phis = parse_phi(cfg.phi)
        if self.adapter.name == "pauli":
            self.probes = self.adapter.probes(self.values, phis)
        else:
            self.probes = self.adapter.probes(self.values, phis if phis is not None else default_phis)
        self._ctx = None

    @property
    def ctx(self) -> Context:
        if self._ctx is None:
            self._ctx = self.adapter.prepare(self.params, self.grid)
        return self._ctx

    @property
    def warnings(self) -> list:
        return self.ctx.warnings

    def evaluate(self, probe: Probe, with_distance: bool = False) -> ProbeResult:
        hss = Series(self.grid, self.adapter.hss(self.ctx, probe))
        d = Series(self.grid, self.adapter.distance(self.ctx, probe)) if with_distance else None
        return ProbeResult(probe, hss, d)

    def table(self) -> dict:
        if len(self.probes) != 1:
            raise ConfigError("phi: simulate needs a single probe state")
        r = self.evaluate(self.probes[0], with_distance=True)
        cols = {
            "t": self.grid.times,
            "hss": r.hss.values,
            "chi": r.chi.values,
            "trace_distance": r.distance.values,
            "sigma": r.sigma.values,
        }
        cols.update(self.adapter.extra_columns(self.ctx))
        return cols


@dataclass
class WitnessSummary:
    n_hss: float
    best: Probe
    intervals: list[Interval]
    any_interval: bool
    per_probe: list  # (probe, n_hss, interval count)

    @property
    def verdict(self) -> str:
        return "NON-MARKOVIAN" if self.any_interval else "MARKOVIAN"


def witness_summary(run: Run, tol_: float = tol.WITNESS_TOL) -> WitnessSummary:
    """Maximize the thresholded measure over the run's probes (first maximum wins)."""
    per_probe = []
    best = None
    cache = None
    any_interval = False
    for probe in run.probes:
        if cache is None or run.adapter.phase_dependent_hss:
            chi = run.evaluate(probe).chi
            measure = thresholded_measure(chi, tol_)
            intervals = detect_intervals(chi, tol_)
            cache = (measure, intervals)
        measure, intervals = cache
        per_probe.append((probe, measure, len(intervals)))
        any_interval |= bool(intervals)
        if best is None or measure > best[1]:
            best = (probe, measure, intervals)
    return WitnessSummary(best[1], best[0], best[2], any_interval, per_probe)


@dataclass
class Comparison:
    probe: Probe
    agreement: Agreement
    chi_intervals: list[Interval]
    sigma_intervals: list[Interval]
    ratio_range: tuple[float, float] | None


def compare(run: Run, tol_: float = tol.WITNESS_TOL) -> list[Comparison]:
    out = []
    for probe in run.probes:
        r = run.evaluate(probe, with_distance=True)
        chi, sigma = r.chi, r.sigma
        d = r.distance.values
        mask = d > 1e-12
        ratio = r.hss.values[mask] / d[mask]
        ratio_range = (float(ratio.min()), float(ratio.max())) if ratio.size else None
        out.append(
            Comparison(
                probe,
                sign_agreement(chi, sigma, tol_),
                detect_intervals(chi, tol_),
                detect_intervals(sigma, tol_),
                ratio_range,
            )
        )
    return out


def sweep_values(adapter: Adapter, name: str, start: float, stop: float, steps: int) -> np.ndarray:
    key = adapter.key(name)
    if key.kind not in ("float", "rate"):
        raise ConfigError(f"{name}: only numeric parameters can be swept")
    if steps < 1:
        raise ConfigError("steps: must be at least 1")
    return np.linspace(start, stop, steps)


def sweep(cfg: RunConfig, name: str, values, tol_: float = tol.WITNESS_TOL, default_phis=None) -> list[tuple[float, float]]:
    """(value, n_hss) rows in parameter order."""
    rows = []
    for value in values:
        params = dict(cfg.params)
        params[name] = repr(float(value))
        run = Run(RunConfig(cfg.model, params, cfg.t_max, cfg.dt, cfg.phi), default_phis)
        rows.append((float(value), witness_summary(run, tol_).n_hss))
    return rows
