"""Command line entry point: ``saxmine detect | synth | bench``."""

from __future__ import annotations

import argparse
import json
import logging
import multiprocessing as mp
import queue as queue_mod
import sys
from pathlib import Path

from .bench import MONTH_SIZES, run_bench
from .exceptions import ConfigError, IngestionError, InvalidInputError
from .io import write_series_csv
from .runner import ALGORITHMS, RunConfig, run_detector
from .synth import KINDS, synth

EXIT_OK, EXIT_CONFIG, EXIT_INGEST, EXIT_TIMEOUT = 0, 2, 3, 4

log = logging.getLogger("saxmine")


def _param(text: str):
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key.strip().replace("-", "_"), json.loads(value)
    except json.JSONDecodeError:
        return key.strip().replace("-", "_"), value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="saxmine", description="SAX-based anomaly and motif mining")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("detect", help="run one detector on a CSV series")
    d.add_argument("--algo", required=True, choices=ALGORITHMS)
    d.add_argument("--input", required=True, help="CSV with timestamp,value or a bare value column")
    d.add_argument("--output", help="report path (default: stdout)")
    d.add_argument("--format", choices=("json", "csv"), default="json")
    d.add_argument("--plot", help="also render the report as a PNG image")
    d.add_argument("--alpha", type=int, default=4)
    d.add_argument("--word", type=int, default=8, help="SAX word size")
    d.add_argument("--window", type=int, default=64, help="sliding window (discord/motif length)")
    d.add_argument("--level", type=int, default=3, help="Chaos Game substring level")
    d.add_argument("--lead", type=int, default=10, help="Chaos Game detection window (words)")
    d.add_argument("--lag", type=int, help="Chaos Game lag window (words, default 2 * lead)")
    d.add_argument("--rmin", type=float, default=0.9, help="approximate motif correlation threshold")
    d.add_argument("--r", type=float, default=0.5, help="motif tracking distance threshold")
    d.add_argument("--scales", type=int, default=8)
    d.add_argument("--k", type=int, default=4, help="MDL cluster count")
    d.add_argument("--topk", type=int, default=5)
    d.add_argument("--refs", type=int, default=1, help="MK reference windows")
    d.add_argument("--ksigma", type=float, default=5.0, help="alarm threshold in standard deviations")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--max-gap", type=int, default=10, help="longest interpolated gap (samples)")
    d.add_argument("--collapse-runs", action="store_true",
                   help="feed runs of identical SAX words to the grammar once")
    d.add_argument("--dump-grammar", metavar="PATH", nargs="?", const="-",
                   help="write the Sequitur grammar (to PATH or stderr)")
    d.add_argument("--timeout-s", type=float, help="abort the run after this many seconds")

    s = sub.add_parser("synth", help="write a synthetic series as CSV")
    s.add_argument("--kind", required=True, choices=KINDS)
    s.add_argument("--length", type=int)
    s.add_argument("--period", type=float)
    s.add_argument("--param", type=_param, action="append", default=[], metavar="KEY=VALUE",
                   help="any other generator parameter (repeatable)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output", help="CSV path (default: stdout)")
    s.add_argument("--meta", help="write the ground-truth metadata as JSON here")

    b = sub.add_parser("bench", help="time detectors across series sizes")
    b.add_argument("--sizes", default=",".join(map(str, MONTH_SIZES)))
    b.add_argument("--algos", default="sequitur,chaosgame,hotsax")
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--timeout-s", type=float, default=1800.0)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--output", help="CSV path (default: stdout)")
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        algorithm=args.algo, alpha=args.alpha, word_size=args.word, window_size=args.window,
        level=args.level, lead=args.lead, lag=args.lag, r_min=args.rmin, r=args.r,
        scales=args.scales, k=args.k, top_k=args.topk, num_refs=args.refs,
        k_sigma=args.ksigma, seed=args.seed, collapse_runs=args.collapse_runs,
        max_gap=args.max_gap, input=args.input, output=args.output, format=args.format,
    )


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _detect_child(cfg, dump, out):
    try:
        out.put(("ok", run_detector(cfg, dump_grammar=dump)))
    except Exception as exc:  # re-raised in the parent
        out.put(("error", exc))


def _detect_with_timeout(cfg, dump, timeout_s):
    ctx = mp.get_context("fork")
    out = ctx.Queue()
    proc = ctx.Process(target=_detect_child, args=(cfg, dump, out), daemon=True)
    proc.start()
    try:
        status, payload = out.get(timeout=timeout_s)
    except queue_mod.Empty:
        proc.terminate()
        proc.join()
        raise TimeoutError(f"detector exceeded {timeout_s} s")
    proc.join()
    if status == "error":
        raise payload
    return payload


def cmd_detect(args) -> int:
    cfg = _config(args)
    dump = args.dump_grammar is not None
    if args.timeout_s:
        report = _detect_with_timeout(cfg, dump, args.timeout_s)
    else:
        report = run_detector(cfg, dump_grammar=dump)
    _emit(report.render(cfg.format), cfg.output)
    if dump and report.grammar is not None:
        if args.dump_grammar == "-":
            sys.stderr.write(report.grammar)
        else:
            Path(args.dump_grammar).write_text(report.grammar)
    if args.plot:
        from .plotting import plot_report

        plot_report(report, args.plot)
    return EXIT_OK


def cmd_synth(args) -> int:
    params = dict(args.param)
    if args.length is not None:
        params["length"] = args.length
    if args.period is not None:
        params["period"] = args.period
    series = synth(args.kind, params, args.seed)
    if args.output:
        write_series_csv(series, args.output)
    else:
        write_series_csv(series, sys.stdout)
    if args.meta:
        Path(args.meta).write_text(json.dumps(series.meta, indent=2) + "\n")
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError as exc:
        raise ConfigError(f"bad --sizes: {args.sizes}") from exc
    algos = [a for a in args.algos.split(",") if a]
    unknown = set(algos) - {"sequitur", "chaosgame", "hotsax", "brute"}
    if unknown:
        raise ConfigError(f"cannot benchmark: {', '.join(sorted(unknown))}")
    try:
        report = run_bench(sizes, algos, args.reps, timeout_s=args.timeout_s, seed=args.seed)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _emit(report.to_csv(), args.output)
    sys.stderr.write(report.summary())
    return EXIT_TIMEOUT if report.timed_out else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    handler = {"detect": cmd_detect, "synth": cmd_synth, "bench": cmd_bench}[args.command]
    try:
        return handler(args)
    except IngestionError as exc:
        log.error("ingestion error: %s", exc)
        return EXIT_INGEST
    except (ConfigError, InvalidInputError) as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    except TimeoutError as exc:
        log.error("%s", exc)
        return EXIT_TIMEOUT


if __name__ == "__main__":
    sys.exit(main())
