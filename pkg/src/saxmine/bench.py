"""Wall-clock benchmark of the anomaly detectors across series sizes."""

from __future__ import annotations

import csv
import io
import multiprocessing as mp
import queue as queue_mod
import time
from dataclasses import dataclass, field

import numpy as np

from . import anomaly
from .sax import SaxConfig
from .synth import synth

# Sizes of one and two months at one point per minute, labelled as in the
# original runtime table.
MONTH_SIZES = (43200, 86400)
_LABELS = {43200: "44k", 86400: "88k"}

BENCH_CONFIG = SaxConfig(alpha=4, word_size=8, window_size=64)


def size_label(size: int) -> str:
    return _LABELS.get(size, f"{size / 1000:g}k")


def bench_series(size: int, seed: int = 0) -> np.ndarray:
    """Weekly-periodic input at one point per minute, cut to ``size``."""
    weeks = -(-size // (7 * 1440))
    return synth("weekly", {"weeks": weeks, "day": 1440}, seed).values[:size].copy()


def _run(algorithm: str, x: np.ndarray, cfg: SaxConfig, seed: int):
    if algorithm == "sequitur":
        return anomaly.sequitur_score(x, cfg)
    if algorithm == "chaosgame":
        return anomaly.chaos_game_score(x, cfg)
    if algorithm == "hotsax":
        return anomaly.hot_sax_discord(x, cfg.window_size, cfg, seed)
    if algorithm == "brute":
        return anomaly.brute_force_discord(x, cfg.window_size)
    raise ValueError(f"unknown benchmark algorithm {algorithm!r}")


def _worker(algorithm, size, reps, seed, cfg, queue):
    x = bench_series(size, seed)
    _run(algorithm, x, cfg, seed)  # warm-up, discarded
    queue.put(("warm", 0.0))
    for _ in range(reps):
        t0 = time.perf_counter()
        _run(algorithm, x, cfg, seed)
        queue.put(("rep", time.perf_counter() - t0))


@dataclass
class BenchRow:
    algorithm: str
    size: int
    times: list = field(default_factory=list)
    status: str = "ok"

    @property
    def repetitions(self) -> int:
        return len(self.times)

    @property
    def mean_seconds(self) -> float:
        return float(np.mean(self.times)) if self.times else float("nan")

    @property
    def std_seconds(self) -> float:
        return float(np.std(self.times, ddof=1)) if len(self.times) > 1 else float("nan")


@dataclass
class BenchReport:
    rows: list

    def row(self, algorithm: str, size: int) -> BenchRow:
        for r in self.rows:
            if r.algorithm == algorithm and r.size == size:
                return r
        raise KeyError((algorithm, size))

    @property
    def timed_out(self) -> bool:
        return any(r.status == "timeout" for r in self.rows)

    def scaling(self) -> dict:
        """Ratio of mean times between consecutive sizes, per algorithm."""
        out = {}
        for algo in dict.fromkeys(r.algorithm for r in self.rows):
            rows = sorted((r for r in self.rows if r.algorithm == algo), key=lambda r: r.size)
            out[algo] = [
                (a.size, b.size, b.mean_seconds / a.mean_seconds
                 if a.times and b.times and a.status == b.status == "ok" else float("nan"))
                for a, b in zip(rows, rows[1:])
            ]
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["algorithm", "size", "label", "mean_seconds", "std_seconds", "repetitions", "status"])
        for r in self.rows:
            w.writerow([r.algorithm, r.size, size_label(r.size), f"{r.mean_seconds:.6f}",
                        f"{r.std_seconds:.6f}", r.repetitions, r.status])
        return buf.getvalue()

    def summary(self) -> str:
        lines = []
        for algo, ratios in self.scaling().items():
            for a, b, ratio in ratios:
                lines.append(f"{algo}: {size_label(b)}/{size_label(a)} = {ratio:.2f}")
        return "\n".join(lines) + ("\n" if lines else "")


def run_bench(sizes, algorithms, reps: int = 5, *, timeout_s: float = 1800.0, seed: int = 0,
              cfg: SaxConfig = BENCH_CONFIG, hotsax_reps_at_largest: int = 1) -> BenchReport:
    """Time every algorithm on identical synthetic inputs of each size.

    Every timed repetition runs in its own process after one discarded
    warm-up run.  Repetitions alternate across sizes, and all runs are
    serial.  A run that exceeds ``timeout_s`` stops its cell, which is then
    marked ``"timeout"`` with the repetitions finished so far.  Hot SAX runs only
    ``hotsax_reps_at_largest`` repetitions at the largest size.
    """
    sizes = [int(s) for s in sizes]
    if sizes != sorted(sizes):
        raise ValueError("sizes must be ascending")
    if reps < 1:
        raise ValueError("reps must be >= 1")
    ctx = mp.get_context("fork")
    rows = []
    for algo in algorithms:
        cells = []
        for size in sizes:
            n = reps
            if algo == "hotsax" and size == sizes[-1]:
                n = min(reps, hotsax_reps_at_largest)
            cells.append((BenchRow(algo, size), n))
        rows.extend(row for row, _ in cells)
        # Sizes take turns rep by rep so slow drift of the host hits them alike.
        for rep in range(reps):
            for row, n in cells:
                if rep >= n or row.status != "ok":
                    continue
                queue = ctx.Queue()
                proc = ctx.Process(target=_worker, args=(row.algorithm, row.size, 1, seed, cfg, queue),
                                   daemon=True)
                proc.start()
                row.status = _collect(proc, queue, row.times, 2, timeout_s)
    return BenchReport(rows)


def _collect(proc, queue, times, expected, timeout_s) -> str:
    received = 0
    deadline = time.monotonic() + timeout_s
    while received < expected:
        try:
            kind, seconds = queue.get(timeout=0.2)
        except queue_mod.Empty:
            if time.monotonic() > deadline:
                proc.terminate()
                proc.join()
                return "timeout"
            if not proc.is_alive() and queue.empty():
                proc.join()
                return f"failed ({proc.exitcode})"
            continue
        received += 1
        deadline = time.monotonic() + timeout_s
        if kind == "rep":
            times.append(seconds)
    proc.join()
    return "ok"
