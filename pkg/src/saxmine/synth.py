"""Deterministic synthetic series with planted ground truth."""

from __future__ import annotations

import numpy as np

from .exceptions import InvalidInputError
from .sax import TimeSeries

KINDS = ("sine", "square", "noise", "walk", "planted-discord", "planted-motif", "step", "weekly")

_DEFAULTS = {
    "sine": dict(length=1000, period=100, amplitude=1.0, noise=0.0),
    "square": dict(length=1000, period=100, amplitude=1.0, noise=0.0),
    "noise": dict(length=1000, sigma=1.0),
    "walk": dict(length=1000, sigma=1.0),
    "planted-discord": dict(length=2000, period=100, index=None, mode="flat", noise=0.05),
    "planted-motif": dict(length=2000, pattern_length=20, count=5, noise=0.05, jitter=0.0),
    "step": dict(length=4000, period=40, index=None, sigma_before=0.1, sigma_after=1.0, shift=0.0),
    "weekly": dict(weeks=4, day=144, noise=0.05, weekend=0.4, copies=1,
                   excursion_index=None, excursion_length=None, excursion_level=2.5),
}


def _int(params, key, low):
    value = params[key]
    if isinstance(value, bool) or int(value) != value or value < low:
        raise InvalidInputError(f"{key} must be an integer >= {low}, got {value!r}")
    return int(value)


def _real(params, key, low=0.0):
    value = float(params[key])
    if not np.isfinite(value) or value < low:
        raise InvalidInputError(f"{key} must be a finite number >= {low}, got {params[key]!r}")
    return value


def synth(kind: str, params: dict | None = None, seed: int = 0, *,
          step_seconds: float = 60.0) -> TimeSeries:
    """Generate a synthetic series.

    Parameters
    ----------
    kind : str
        One of ``KINDS``.
    params : dict, optional
        Overrides of the per-kind defaults (see ``_DEFAULTS``); unknown keys
        are rejected.
    seed : int
        Seed of every random draw; equal arguments give equal output.
    step_seconds : float
        Sampling period of the timestamps (``weekly`` derives it from
        ``day`` instead).

    Returns
    -------
    TimeSeries
        Starts at epoch 0.  ``meta`` records ``kind``, the resolved
        ``params`` and ``seed`` plus planted ground truth:
        ``discord_index``/``discord_length``, ``motif_indices``/
        ``pattern_length``, ``step_index`` or ``excursion_index``.
    """
    if kind not in _DEFAULTS:
        raise InvalidInputError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
    p = dict(_DEFAULTS[kind])
    unknown = set(params or {}) - set(p)
    if unknown:
        raise InvalidInputError(f"unknown parameter(s) for {kind}: {', '.join(sorted(unknown))}")
    p.update(params or {})
    rng = np.random.default_rng(seed)
    truth = {}
    if kind == "weekly":
        values, truth, step_seconds = _weekly(p, rng)
    else:
        n = _int(p, "length", 1)
        values, truth = _MAKERS[kind](n, p, rng)
    meta = {"kind": kind, "params": p, "seed": seed, **truth}
    return TimeSeries(values, start_time=0.0, step_seconds=step_seconds, meta=meta)


def _sine(n, p, rng):
    period = _real(p, "period", 2.0)
    x = _real(p, "amplitude") * np.sin(2 * np.pi * np.arange(n) / period)
    return x + rng.normal(0.0, _real(p, "noise"), n), {}


def _square(n, p, rng):
    period = _int(p, "period", 2)
    phase = (np.arange(n) % period) < period / 2
    x = _real(p, "amplitude") * np.where(phase, 1.0, -1.0)
    return x + rng.normal(0.0, _real(p, "noise"), n), {}


def _noise(n, p, rng):
    return rng.normal(0.0, _real(p, "sigma"), n), {}


def _walk(n, p, rng):
    return np.cumsum(rng.normal(0.0, _real(p, "sigma"), n)), {}


def _planted_discord(n, p, rng):
    period = _int(p, "period", 4)
    if n < 3 * period:
        raise InvalidInputError("planted-discord needs length >= 3 * period")
    if p["mode"] not in ("flat", "invert"):
        raise InvalidInputError(f"mode must be 'flat' or 'invert', got {p['mode']!r}")
    x = np.sin(2 * np.pi * np.arange(n) / period)
    index = p["index"]
    if index is None:
        cycles = n // period
        index = int(rng.integers(cycles // 4, max(cycles * 3 // 4, cycles // 4 + 1))) * period
    index = int(index)
    if not 0 <= index <= n - period:
        raise InvalidInputError(f"index must lie in [0, {n - period}], got {index}")
    seg = slice(index, index + period)
    x[seg] = 0.0 if p["mode"] == "flat" else -x[seg]
    x = x + rng.normal(0.0, _real(p, "noise"), n)
    return x, {"discord_index": index, "discord_length": period}


def _motif_pattern(length, rng):
    steps = rng.choice([-1.0, 1.0], size=length) * rng.uniform(0.5, 1.5, size=length)
    pattern = np.cumsum(steps)
    return pattern - pattern.mean()


def _planted_motif(n, p, rng):
    m = _int(p, "pattern_length", 4)
    count = _int(p, "count", 2)
    slot = n // count
    if slot < 3 * m:
        raise InvalidInputError("planted-motif needs length >= 3 * count * pattern_length")
    pattern = _motif_pattern(m, rng)
    x = rng.normal(0.0, _real(p, "noise"), n)
    jitter = _real(p, "jitter")
    starts = [k * slot + int(rng.integers(m, slot - 2 * m)) for k in range(count)]
    for s in starts:
        # Exact copies replace the background; jitter perturbs each copy.
        x[s:s + m] = pattern + (rng.normal(0.0, jitter, m) if jitter > 0 else 0.0)
    return x, {"motif_indices": starts, "pattern_length": m}


def _step(n, p, rng):
    period = _real(p, "period", 2.0)
    index = p["index"]
    if index is None:
        index = int(rng.integers(n // 3, 2 * n // 3)) if n >= 3 else 0
    index = int(index)
    if not 0 <= index < n:
        raise InvalidInputError(f"index must lie in [0, {n - 1}], got {index}")
    after = np.arange(n) >= index
    sd = np.where(after, _real(p, "sigma_after"), _real(p, "sigma_before"))
    x = np.sin(2 * np.pi * np.arange(n) / period) + rng.normal(0.0, 1.0, n) * sd
    x[after] += float(p["shift"])
    return x, {"step_index": index}


def _weekly(p, rng):
    day = _int(p, "day", 4)
    weeks = _int(p, "weeks", 1)
    copies = _int(p, "copies", 1)
    t = np.arange(weeks * 7 * day)
    weekday = (t // day) % 7 < 5
    amp = np.where(weekday, 1.0, _real(p, "weekend"))
    month = 1.0 + amp * np.sin(2 * np.pi * (t % day) / day) + rng.normal(0.0, _real(p, "noise"), t.size)
    x = np.tile(month, copies)
    truth = {}
    if p["excursion_index"] is not None:
        length = day if p["excursion_length"] is None else _int(p, "excursion_length", 1)
        index = int(p["excursion_index"])
        if not 0 <= index <= x.size - length:
            raise InvalidInputError(f"excursion_index must lie in [0, {x.size - length}], got {index}")
        # A high plateau, as when a link saturates.
        x[index:index + length] = float(p["excursion_level"]) + rng.normal(0.0, _real(p, "noise"), length)
        truth = {"excursion_index": index, "excursion_length": length}
    return x, truth, 86400.0 / day


_MAKERS = {
    "sine": _sine,
    "square": _square,
    "noise": _noise,
    "walk": _walk,
    "planted-discord": _planted_discord,
    "planted-motif": _planted_motif,
    "step": _step,
}
