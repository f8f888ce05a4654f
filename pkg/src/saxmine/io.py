"""CSV ingestion and emission of time series."""

from __future__ import annotations

import csv
import math
import warnings
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .exceptions import IngestionError
from .sax import TimeSeries


def parse_timestamp(text: str) -> float:
    """Epoch seconds from a number or an ISO-8601 string (naive means UTC)."""
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    stamp = datetime.fromisoformat(text)
    if stamp.tzinfo is None:
        stamp = stamp.replace(tzinfo=timezone.utc)
    return stamp.timestamp()


def _select(header, selector, default):
    if selector is None:
        return default
    if isinstance(selector, int):
        return selector
    if header is None or selector not in header:
        raise IngestionError(f"column {selector!r} not found in header {header}")
    return header.index(selector)


def _data_rows(path: Path):
    try:
        with open(path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or not "".join(row).strip():
                    continue
                if row[0].lstrip().startswith("#"):
                    continue
                yield lineno, [c.strip() for c in row]
    except (OSError, UnicodeDecodeError) as exc:
        raise IngestionError(f"cannot read {path}: {exc}") from exc


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def ingest_csv(path, *, time_column=None, value_column=None, max_gap: int = 10,
               step_seconds: float | None = None,
               order_tolerance: float | None = None) -> TimeSeries:
    """Read a ``timestamp,value`` or single-column CSV file.

    Parameters
    ----------
    path : str or Path
    time_column, value_column : int or str, optional
        Column index or header name.  By default a single column is the
        value; otherwise the first column is the timestamp and the second
        the value.
    max_gap : int
        Longest run of missing samples filled by linear interpolation.
        Longer gaps split the series; the longest piece is returned and
        the split is reported in ``meta["segments"]``.
    step_seconds : float, optional
        Sampling period; by default the smallest positive difference
        between timestamps, so that gaps show up as multiples of it.
    order_tolerance : float, optional
        How far (seconds) a timestamp may step backwards before the file is
        rejected.  Defaults to one sampling step.

    Returns
    -------
    TimeSeries
        ``meta`` holds the row counters (``rows``, ``rejected``,
        ``duplicates``, ``interpolated``) and the segment table.

    Notes
    -----
    Header rows are recognised by a non-numeric value field on the first
    data line; ``#`` lines and blank lines are skipped.  Rows with
    non-finite or unparseable values are dropped and counted.
    """
    path = Path(path)
    if not path.is_file():
        raise IngestionError(f"no such file: {path}")
    rows = list(_data_rows(path))
    if not rows:
        raise IngestionError(f"{path} contains no data rows")

    width = len(rows[0][1])
    header = None
    default_value = 0 if width == 1 else 1
    probe = _select(None, value_column if isinstance(value_column, int) else None, default_value)
    if probe >= width or not _is_number(rows[0][1][probe]):
        header = rows[0][1]
        rows = rows[1:]
    vcol = _select(header, value_column, default_value)
    tcol = None if width == 1 and time_column is None else _select(header, time_column, 0)

    times, values = [], []
    rejected = 0
    for lineno, row in rows:
        if vcol >= len(row) or (tcol is not None and tcol >= len(row)):
            rejected += 1
            continue
        try:
            v = float(row[vcol])
        except ValueError:
            v = math.nan
        if not math.isfinite(v):
            rejected += 1
            continue
        if tcol is not None:
            try:
                times.append(parse_timestamp(row[tcol]))
            except ValueError as exc:
                raise IngestionError(f"{path}:{lineno}: bad timestamp {row[tcol]!r}") from exc
        values.append(v)
    if not values:
        raise IngestionError(f"{path}: no valid rows ({rejected} rejected)")

    meta = {"source": str(path), "rows": len(rows), "rejected": rejected}
    if tcol is None:
        meta.update(duplicates=0, interpolated=0, segments=[[0, len(values)]], segment=0)
        return TimeSeries(np.array(values), meta=meta)
    return _regularize(path, np.array(times), np.array(values), meta, max_gap,
                      step_seconds, order_tolerance)


def _regularize(path, t, v, meta, max_gap, step, order_tolerance):
    if step is None:
        positive = np.diff(np.unique(t))
        step = float(positive.min()) if positive.size else 1.0
    elif not step > 0:
        raise IngestionError(f"step_seconds must be positive, got {step}")
    tolerance = step if order_tolerance is None else order_tolerance
    back = np.maximum.accumulate(t) - t
    if np.any(back > tolerance):
        k = int(np.argmax(back > tolerance))
        raise IngestionError(
            f"{path}: timestamp {t[k]} goes back {back[k]} s (tolerance {tolerance} s) "
            f"at data row {k + 1}"
        )
    order = np.argsort(t, kind="stable")
    t, v = t[order], v[order]
    keep = np.concatenate(([True], np.diff(t) > 0))
    duplicates = int((~keep).sum())
    t, v = t[keep], v[keep]

    missing = np.rint(np.diff(t) / step).astype(np.int64) - 1
    missing = np.maximum(missing, 0)
    cuts = np.flatnonzero(missing > max_gap) + 1
    bounds = np.concatenate(([0], cuts, [t.size]))
    segments = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        n = int(hi - lo + missing[lo:hi - 1].sum())
        segments.append([float(t[lo]), n])
    if len(segments) > 1:
        warnings.warn(f"{path}: {len(segments) - 1} gap(s) longer than {max_gap} samples "
                      f"split the series; using the longest segment", stacklevel=3)
    best = max(range(len(segments)), key=lambda i: (segments[i][1], -i))
    lo, hi = bounds[best], bounds[best + 1]
    seg_t, seg_v = t[lo:hi], v[lo:hi]
    grid = seg_t[0] + step * np.arange(segments[best][1])
    # Samples off the nominal grid keep their order; only gaps are filled.
    slots = np.concatenate(([0], np.cumsum(missing[lo:hi - 1] + 1)))
    filled = np.interp(np.arange(grid.size), slots, seg_v)
    meta.update(duplicates=duplicates, interpolated=int(grid.size - seg_v.size),
                segments=segments, segment=best)
    return TimeSeries(filled, start_time=float(seg_t[0]), step_seconds=step, meta=meta)


def write_series_csv(series: TimeSeries, target) -> None:
    """Write ``timestamp,value`` rows (or bare values without timestamps).

    Values are written with ``repr`` so reading them back is lossless.
    """
    times = series.times()
    own = isinstance(target, (str, Path))
    fh = open(target, "w", newline="") if own else target
    try:
        writer = csv.writer(fh, lineterminator="\n")
        if times is None:
            writer.writerow(["value"])
            writer.writerows([repr(float(v))] for v in series.values)
        else:
            writer.writerow(["timestamp", "value"])
            writer.writerows([repr(float(a)), repr(float(b))] for a, b in zip(times, series.values))
    finally:
        if own:
            fh.close()
