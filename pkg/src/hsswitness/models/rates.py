"""Time-dependent decay-rate profiles."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from ..numerics import cumulative_adaptive, integrate_adaptive

KINDS = ("constant", "cosine", "tanh", "pwl")


@dataclass(frozen=True)
class RateProfile:
    """A named rate function gamma(t).

    ``constant``: (c,) -> c
    ``cosine``:   (a, b, w) -> a + b cos(w t)
    ``tanh``:     (scale,) -> -scale tanh(t)
    ``pwl``:      (t0, v0, t1, v1, ...) -> linear interpolation, flat outside
    """

    kind: str
    params: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown rate kind {self.kind!r}")
        params = tuple(float(p) for p in self.params)
        if not all(math.isfinite(p) for p in params):
            raise ValueError("rate parameters must be finite")
        expected = {"constant": 1, "cosine": 3, "tanh": 1}.get(self.kind)
        if expected is not None and len(params) != expected:
            raise ValueError(f"{self.kind} takes {expected} parameter(s), got {len(params)}")
        if self.kind == "pwl":
            if len(params) < 2 or len(params) % 2:
                raise ValueError("pwl needs (t, value) pairs")
            ts = params[0::2]
            if any(b <= a for a, b in zip(ts, ts[1:])):
                raise ValueError("pwl knot times must increase strictly")
        object.__setattr__(self, "params", params)

    @classmethod
    def constant(cls, c: float) -> "RateProfile":
        return cls("constant", (c,))

    @classmethod
    def cosine(cls, a: float, b: float, w: float) -> "RateProfile":
        return cls("cosine", (a, b, w))

    @classmethod
    def tanh_eternal(cls, scale: float) -> "RateProfile":
        return cls("tanh", (scale,))

    @classmethod
    def piecewise_linear(cls, knots) -> "RateProfile":
        flat = [x for knot in knots for x in knot]
        return cls("pwl", tuple(flat))

    @property
    def is_zero(self) -> bool:
        if self.kind == "pwl":
            return all(v == 0.0 for v in self.params[1::2])
        if self.kind == "cosine":
            return self.params[0] == 0.0 and self.params[1] == 0.0
        return self.params[0] == 0.0

    def __call__(self, t):
        p = self.params
        if np.ndim(t) == 0:
            t = float(t)
            if self.kind == "constant":
                return p[0]
            if self.kind == "cosine":
                return p[0] + p[1] * math.cos(p[2] * t)
            if self.kind == "tanh":
                return -p[0] * math.tanh(t)
            return float(np.interp(t, p[0::2], p[1::2]))
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            return np.full(t.shape, p[0])
        if self.kind == "cosine":
            return p[0] + p[1] * np.cos(p[2] * t)
        if self.kind == "tanh":
            return -p[0] * np.tanh(t)
        return np.interp(t, p[0::2], p[1::2])

    def integral(self, t: float, tol: float = 1e-10) -> float:
        """int_0^t gamma(s) ds by adaptive Simpson."""
        return integrate_adaptive(self, 0.0, t, tol)

    def cumulative(self, times: np.ndarray, tol: float = 1e-10) -> np.ndarray:
        return cumulative_adaptive(self, times, tol)

    def __str__(self):
        p = ",".join(f"{x:g}" for x in self.params)
        if self.kind == "constant":
            return f"{self.params[0]:g}"
        if self.kind == "pwl":
            pairs = zip(self.params[0::2], self.params[1::2])
            return "pwl(" + ",".join(f"{a:g}:{b:g}" for a, b in pairs) + ")"
        return f"{'cos' if self.kind == 'cosine' else 'tanh'}({p})"


ZERO = RateProfile.constant(0.0)

_CALL = re.compile(r"^\s*(cos|tanh|pwl|const)\s*\((.*)\)\s*$")


def parse_rate(text: str) -> RateProfile:
    """Parse ``0.5``, ``const(0.5)``, ``cos(a,b,w)``, ``tanh(scale)`` or ``pwl(t0:v0,t1:v1,...)``."""
    text = str(text).strip()
    m = _CALL.match(text)
    if m is None:
        try:
            return RateProfile.constant(float(text))
        except ValueError:
            raise ValueError(f"cannot parse rate profile {text!r}") from None
    name, body = m.group(1), m.group(2)
    parts = [s.strip() for s in body.split(",") if s.strip()]
    try:
        if name == "pwl":
            knots = [tuple(float(x) for x in part.split(":")) for part in parts]
            if any(len(k) != 2 for k in knots):
                raise ValueError
            return RateProfile.piecewise_linear(knots)
        values = [float(x) for x in parts]
    except ValueError:
        raise ValueError(f"cannot parse rate profile {text!r}") from None
    kind = {"cos": "cosine", "tanh": "tanh", "const": "constant"}[name]
    return RateProfile(kind, tuple(values))
