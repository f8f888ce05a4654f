"""Run configuration, detector dispatch and report rendering."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import anomaly, motif
from .exceptions import ConfigError, InvalidInputError
from .io import ingest_csv
from .sax import SaxConfig, TimeSeries, as_array

SCORE_ALGOS = ("sequitur", "chaosgame")
DISCORD_ALGOS = ("brute", "hotsax")
MOTIF_ALGOS = ("mk", "grammar-motif", "tracking", "approx-motif", "mdl")
ALGORITHMS = SCORE_ALGOS + DISCORD_ALGOS + MOTIF_ALGOS


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one detector run.

    ``lead`` and ``lag`` are the Chaos Game detection and lag window sizes
    (``lag`` defaults to twice ``lead``); ``window_size`` doubles as the
    discord and motif length.
    """

    algorithm: str
    alpha: int = 4
    word_size: int = 8
    window_size: int = 64
    level: int = 3
    lead: int = 10
    lag: int | None = None
    r_min: float = 0.9
    r: float = 0.5
    scales: int = 8
    k: int = 4
    top_k: int = 5
    num_refs: int = 1
    k_sigma: float = 5.0
    seed: int = 0
    collapse_runs: bool = False
    max_gap: int = 10
    input: str | None = None
    output: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.format!r}")
        try:
            self.sax
        except InvalidInputError as exc:
            raise ConfigError(str(exc)) from exc
        checks = [
            (self.level >= 1, "level must be >= 1"),
            (self.lead >= 1, "lead must be >= 1"),
            (self.lag is None or self.lag >= self.lead, "lag must be >= lead"),
            (0 < self.r_min <= 1, "rmin must lie in (0, 1]"),
            (self.r > 0, "r must be positive"),
            (self.scales >= 1, "scales must be >= 1"),
            (self.k >= 2, "k must be >= 2"),
            (self.top_k >= 1, "topk must be >= 1"),
            (self.num_refs >= 1, "refs must be >= 1"),
            (self.k_sigma > 0 and not math.isnan(self.k_sigma), "ksigma must be positive"),
            (self.max_gap >= 0, "max-gap must be >= 0"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)
        if self.algorithm == "chaosgame":
            if self.alpha != anomaly.CHAOS_ALPHABET:
                raise ConfigError(f"chaosgame requires alpha = {anomaly.CHAOS_ALPHABET} (got {self.alpha})")
            if self.level > self.word_size:
                raise ConfigError(f"chaosgame requires level <= word size ({self.level} > {self.word_size})")

    @property
    def sax(self) -> SaxConfig:
        return SaxConfig(self.alpha, self.word_size, self.window_size)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
        return cls(**data)


def _clean(value):
    """Make ``value`` JSON-safe: numpy scalars to Python, NaN to None."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_clean(v) for v in value.tolist()]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if math.isnan(value) or math.isinf(value) else value
    return value


def _score(cfg: RunConfig, x: np.ndarray) -> anomaly.ScoreSeries:
    if cfg.algorithm == "sequitur":
        return anomaly.sequitur_score(x, cfg.sax, collapse_runs=cfg.collapse_runs)
    return anomaly.chaos_game_score(x, cfg.sax, cfg.level, cfg.lead, cfg.lag)


def _motifs(cfg: RunConfig, x: np.ndarray) -> list:
    if cfg.algorithm == "mk":
        return [motif.mk_motif(x, cfg.window_size, cfg.num_refs, cfg.seed)]
    if cfg.algorithm == "grammar-motif":
        return motif.grammar_motifs(x, cfg.sax, cfg.top_k, collapse_runs=cfg.collapse_runs)
    if cfg.algorithm == "tracking":
        return motif.motif_tracking(x, cfg.alpha, cfg.r)[:cfg.top_k]
    if cfg.algorithm == "approx-motif":
        return motif.approximate_motifs(x, cfg.sax, cfg.r_min)[:cfg.top_k]
    return motif.mdl_motifs(x, cfg.scales, cfg.k, seed=cfg.seed)


@dataclass
class Report:
    """Result of ``run_detector``: the JSON-ready mapping plus the arrays
    needed for delimited and graphical output."""

    data: dict
    series: TimeSeries
    score: anomaly.ScoreSeries | None = None
    grammar: str | None = None

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        """Aligned per-point columns ``index,value,score,alarm``.

        ``score`` is empty outside the valid range.  For discord runs the
        flag marks the discord window; for motif runs it holds the 1-based
        rank of the first motif covering the point (0 for none).
        """
        n = len(self.series)
        score = np.full(n, np.nan) if self.score is None else self.score.scores
        flag = np.zeros(n, dtype=np.int64)
        if "alarms" in self.data:
            flag[[a["index"] for a in self.data["alarms"]]] = 1
        if "discord" in self.data:
            d = self.data["discord"]
            flag[d["location"]:d["location"] + d["length"]] = 1
        if "motifs" in self.data:
            for rank, m in reversed(list(enumerate(self.data["motifs"], start=1))):
                for o in m["occurrences"]:
                    flag[o:o + m["length"]] = rank
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "value", "score", "alarm"])
        for i in range(n):
            s = "" if math.isnan(score[i]) else repr(float(score[i]))
            writer.writerow([i, repr(float(self.series.values[i])), s, int(flag[i])])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()


def load_series(cfg: RunConfig) -> TimeSeries:
    if cfg.input is None:
        raise ConfigError("no input series given")
    return ingest_csv(cfg.input, max_gap=cfg.max_gap)


def run_detector(cfg: RunConfig, series: TimeSeries | None = None, *,
                 dump_grammar: bool = False) -> Report:
    """Run the configured algorithm and assemble its report.

    Parameters
    ----------
    cfg : RunConfig
    series : TimeSeries, optional
        Input series; read from ``cfg.input`` when omitted.
    dump_grammar : bool
        For ``sequitur``, also keep the textual grammar in
        ``Report.grammar``.

    Returns
    -------
    Report
        ``data`` has the keys ``config``, ``series_meta``, then ``scores``
        and ``alarms`` (score detectors), ``discord`` or ``motifs``, and
        finally ``timing``.
    """
    if series is None:
        series = load_series(cfg)
    elif not isinstance(series, TimeSeries):
        series = TimeSeries(as_array(series))
    x = series.values
    times = series.times()
    data = {
        "config": cfg.to_dict(),
        "series_meta": _clean({
            "length": len(series),
            "start_time": series.start_time,
            "step_seconds": series.step_seconds,
            **series.meta,
        }),
    }
    report = Report(data, series)
    started = time.perf_counter()
    if cfg.algorithm in SCORE_ALGOS:
        score = _score(cfg, x)
        alarms = anomaly.threshold_alarms(score, cfg.k_sigma)
        report.score = score
        data["scores"] = {"valid_from": score.valid_from, "valid_to": score.valid_to,
                          "values": _clean(score.scores)}
        data["alarms"] = [_clean({"index": a, **({"time": times[a]} if times is not None else {})})
                          for a in alarms]
    elif cfg.algorithm in DISCORD_ALGOS:
        if cfg.algorithm == "brute":
            result = anomaly.brute_force_discord(x, cfg.window_size)
        else:
            result = anomaly.hot_sax_discord(x, cfg.window_size, cfg.sax, cfg.seed)
        entry = {"location": result.location, "distance": result.distance,
                 "length": cfg.window_size, "calls": result.calls}
        if times is not None:
            entry["time"] = times[result.location]
        data["discord"] = _clean(entry)
    else:
        data["motifs"] = _clean([m.to_dict(times) for m in _motifs(cfg, x)])
    data["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    if dump_grammar and cfg.algorithm == "sequitur":
        model = anomaly.sequitur_model(x, cfg.sax, collapse_runs=cfg.collapse_runs)
        report.grammar = model.grammar.dump(model.vocab)
    return report
