"""Amplitude of a two-level emitter decaying into a Lorentzian cavity mode."""

from __future__ import annotations

import numpy as np

SERIES_CUTOFF = 1e-4


def damped_amplitude(lam: float, d: complex, t) -> np.ndarray:
    """e^{-lam t/2} [cosh(d t/2) + (lam/d) sinh(d t/2)] for real or imaginary ``d``.

    Written as a sum of decaying exponentials so large ``t`` cannot overflow
    (|d| <= lam whenever ``d`` is real); the ``d t -> 0`` limit
    e^{-lam t/2}(1 + lam t/2) is reached through a series.
    """
    t = np.asarray(t, dtype=float)
    d = complex(d)
    x = 0.5 * d * t
    small = np.abs(x) < SERIES_CUTOFF
    safe_d = d if d != 0 else 1.0
    with np.errstate(over="ignore", invalid="ignore"):
        exact = 0.5 * (
            (1.0 + lam / safe_d) * np.exp(0.5 * (d - lam) * t)
            + (1.0 - lam / safe_d) * np.exp(-0.5 * (d + lam) * t)
        )
    series = np.exp(-0.5 * lam * t) * (np.cosh(x) + lam * 0.5 * t * (1.0 + x * x / 6.0))
    return np.where(small, series, exact)
