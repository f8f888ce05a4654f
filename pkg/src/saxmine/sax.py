"""SAX representation: z-normalization, PAA, Gaussian quantization and
symbol-level distances.

Words are plain strings over ``'a'..'z'``.  Sliding-window encodings keep the
symbols as a ``uint8`` matrix so the downstream detectors can hash and compare
them without building millions of Python strings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from statistics import NormalDist
from typing import Iterator, Sequence, Union

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .exceptions import InvalidInputError

EPS_FLAT = 1e-8
MAX_ALPHA = 26

_CHUNK_ROWS = 8192


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Finite real-valued samples with optional uniform timestamps.

    ``start_time`` is in epoch seconds and ``step_seconds`` is the sampling
    period.  ``meta`` carries free-form provenance (ingestion counters,
    synthetic ground truth, ...).
    """

    values: np.ndarray
    start_time: float | None = None
    step_seconds: float | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        if values.size < 1:
            raise InvalidInputError("time series must contain at least one value")
        if not np.all(np.isfinite(values)):
            raise InvalidInputError("time series contains NaN or infinite values")
        if self.step_seconds is not None and not self.step_seconds > 0:
            raise InvalidInputError("step_seconds must be positive")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    def times(self) -> np.ndarray | None:
        """Wall-clock time of every sample, or None without timestamps."""
        if self.start_time is None or self.step_seconds is None:
            return None
        return self.start_time + self.step_seconds * np.arange(len(self))


SeriesLike = Union[TimeSeries, Sequence[float], np.ndarray]


def as_array(series: SeriesLike) -> np.ndarray:
    """Return the samples of ``series`` as a finite 1-D float array."""
    if isinstance(series, TimeSeries):
        return series.values
    values = np.asarray(series, dtype=float).ravel()
    if values.size < 1:
        raise InvalidInputError("time series must contain at least one value")
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("time series contains NaN or infinite values")
    return values


@dataclass(frozen=True)
class SaxConfig:
    """Cardinality, word size and sliding-window size of a SAX encoding."""

    alpha: int = 3
    word_size: int = 8
    window_size: int = 64

    def __post_init__(self):
        if not 2 <= self.alpha <= MAX_ALPHA:
            raise InvalidInputError(f"alpha must lie in [2, {MAX_ALPHA}], got {self.alpha}")
        if self.word_size < 1:
            raise InvalidInputError(f"word_size must be >= 1, got {self.word_size}")
        if self.window_size < self.word_size:
            raise InvalidInputError(
                f"window_size ({self.window_size}) must be >= word_size ({self.word_size})"
            )
        if self.window_size % self.word_size:
            raise InvalidInputError(
                f"window_size ({self.window_size}) must be a multiple of word_size ({self.word_size})"
            )

    @property
    def points_per_symbol(self) -> int:
        return self.window_size // self.word_size


@lru_cache(maxsize=None)
def _cuts(alpha: int) -> tuple:
    inv_cdf = NormalDist().inv_cdf
    half = [inv_cdf(i / alpha) for i in range(1, alpha // 2 + 1)]
    # Mirror the lower half so the cuts are exactly symmetric about 0.
    lower = half[: (alpha - 1) // 2]
    middle = [0.0] if alpha % 2 == 0 else []
    return tuple(lower + middle + [-c for c in reversed(lower)])


def gaussian_breakpoints(alpha: int) -> np.ndarray:
    """Cut points splitting the standard normal into ``alpha`` equiprobable bins.

    >>> gaussian_breakpoints(3).round(2).tolist()
    [-0.43, 0.43]
    """
    if int(alpha) != alpha or alpha < 2:
        raise InvalidInputError(f"alpha must be an integer >= 2, got {alpha}")
    return np.array(_cuts(int(alpha)))


@lru_cache(maxsize=None)
def _bin_medians(alpha: int) -> tuple:
    inv_cdf = NormalDist().inv_cdf
    return tuple(inv_cdf((k + 0.5) / alpha) for k in range(alpha))


def bin_medians(alpha: int) -> np.ndarray:
    """Median of the standard normal restricted to each quantization bin."""
    gaussian_breakpoints(alpha)
    return np.array(_bin_medians(int(alpha)))


def znormalize(series: SeriesLike) -> np.ndarray:
    """Shift to zero mean and scale to unit population standard deviation.

    Series whose standard deviation is below ``EPS_FLAT`` map to all zeros.
    """
    x = as_array(series)
    mu = x.mean()
    sd = x.std()
    if sd < EPS_FLAT:
        return np.zeros_like(x)
    return (x - mu) / sd


def paa(series: SeriesLike, frames: int) -> np.ndarray:
    """Piecewise Aggregate Approximation of ``series`` into ``frames`` means.

    When the length is not a multiple of ``frames`` every sample contributes
    to the frames it straddles in proportion to its overlap.
    """
    x = as_array(series)
    n = x.size
    if int(frames) != frames or not 1 <= frames <= n:
        raise InvalidInputError(f"frames must lie in [1, {n}], got {frames}")
    frames = int(frames)
    if n % frames == 0:
        return x.reshape(frames, n // frames).mean(axis=1)
    # Repeating every sample `frames` times makes every block integral.
    return np.repeat(x, frames).reshape(frames, n).mean(axis=1)


def quantize(values: np.ndarray, cuts: np.ndarray) -> np.ndarray:
    """Bin index of every value; values equal to a cut go to the upper bin."""
    return np.searchsorted(cuts, values, side="right").astype(np.uint8)


def codes_to_word(codes) -> str:
    return bytes(np.asarray(codes, dtype=np.uint8) + ord("a")).decode("ascii")


def word_to_codes(word: str) -> np.ndarray:
    return np.frombuffer(word.encode("ascii"), dtype=np.uint8) - ord("a")


def sax_encode(series: SeriesLike, alpha: int, word_size: int | None = None,
               *, symbol_size: int | None = None) -> str:
    """Encode a whole series as a single SAX word.

    Parameters
    ----------
    series : TimeSeries or array-like
        Values to encode.
    alpha : int
        Alphabet cardinality.
    word_size : int, optional
        Number of symbols in the output word.
    symbol_size : int, optional
        Alternatively, the number of points averaged into each symbol; the
        word then has ``ceil(N / symbol_size)`` symbols.  Exactly one of
        ``word_size`` and ``symbol_size`` must be given.

    Returns
    -------
    str
        The SAX word.
    """
    x = as_array(series)
    if (word_size is None) == (symbol_size is None):
        raise InvalidInputError("give exactly one of word_size and symbol_size")
    if symbol_size is not None:
        if int(symbol_size) != symbol_size or symbol_size < 1:
            raise InvalidInputError(f"symbol_size must be a positive integer, got {symbol_size}")
        word_size = math.ceil(x.size / symbol_size)
    if int(word_size) != word_size or not 1 <= word_size <= x.size:
        raise InvalidInputError(
            f"word_size must lie in [1, {x.size}] for a series of length {x.size}, got {word_size}"
        )
    cuts = gaussian_breakpoints(alpha)
    if x.size % word_size == 0:
        levels = _window_paa(x, x.size, int(word_size))[0]
    else:
        levels = paa(znormalize(x), int(word_size))
    return codes_to_word(quantize(levels, cuts))


def _window_paa(x: np.ndarray, window: int, word_size: int) -> np.ndarray:
    """PAA of every z-normalized sliding window, as an (M, word_size) matrix."""
    m = x.size - window + 1
    seg = window // word_size
    out = np.empty((m, word_size))
    view = sliding_window_view(x, window)
    for lo in range(0, m, _CHUNK_ROWS):
        win = view[lo:lo + _CHUNK_ROWS]
        mu = win.mean(axis=1, keepdims=True)
        sd = win.std(axis=1, keepdims=True)
        flat = sd[:, 0] < EPS_FLAT
        sd[flat] = 1.0
        levels = ((win - mu) / sd).reshape(len(win), word_size, seg).mean(axis=2)
        levels[flat] = 0.0
        out[lo:lo + len(win)] = levels
    return out


@dataclass(frozen=True, eq=False)
class SaxSequence:
    """SAX words of every sliding window, in start-index order.

    ``symbols[i]`` holds the symbol codes (0 for ``'a'``) of the window that
    starts at sample ``i``.
    """

    symbols: np.ndarray
    config: SaxConfig

    def __len__(self) -> int:
        return self.symbols.shape[0]

    @property
    def starts(self) -> np.ndarray:
        return np.arange(len(self))

    @property
    def words(self) -> list[str]:
        raw = (self.symbols + ord("a")).tobytes()
        n = self.config.word_size
        return [raw[i:i + n].decode("ascii") for i in range(0, len(raw), n)]

    def __iter__(self) -> Iterator[tuple[int, str]]:
        return iter(enumerate(self.words))

    @property
    def entries(self) -> list[tuple[int, str]]:
        return list(self)

    def word_ids(self) -> tuple[np.ndarray, list[str]]:
        """Intern the words: per-window integer ids and the id -> word table.

        Ids are assigned in order of first appearance.
        """
        n = self.config.word_size
        packed = np.ascontiguousarray(self.symbols).view(np.dtype((np.void, n))).ravel()
        _, first, inverse = np.unique(packed, return_index=True, return_inverse=True)
        order = np.argsort(first, kind="stable")
        rank = np.empty_like(order)
        rank[order] = np.arange(order.size)
        ids = rank[inverse.ravel()]
        vocab = [codes_to_word(self.symbols[first[k]]) for k in order]
        return ids.astype(np.int64), vocab


def sax_sliding(series: SeriesLike, config: SaxConfig) -> SaxSequence:
    """SAX-encode every window of ``config.window_size`` points (stride 1).

    Each window is z-normalized on its own before aggregation.
    """
    x = as_array(series)
    if x.size < config.window_size:
        raise InvalidInputError(
            f"series of length {x.size} is shorter than the window ({config.window_size})"
        )
    levels = _window_paa(x, config.window_size, config.word_size)
    symbols = quantize(levels, gaussian_breakpoints(config.alpha))
    symbols.flags.writeable = False
    return SaxSequence(symbols, config)


def hamming_distance(a: str, b: str) -> int:
    if len(a) != len(b):
        raise InvalidInputError(f"word lengths differ: {len(a)} != {len(b)}")
    return sum(x != y for x, y in zip(a, b))


def mindist_table(alpha: int) -> np.ndarray:
    """Symbol-pair lower-bound distances; zero for equal or adjacent symbols."""
    cuts = gaussian_breakpoints(alpha)
    r = np.arange(alpha)
    hi = np.maximum.outer(r, r)
    lo = np.minimum.outer(r, r)
    table = np.zeros((alpha, alpha))
    far = hi - lo > 1
    table[far] = cuts[hi[far] - 1] - cuts[lo[far]]
    return table


def mindist(a: str, b: str, alpha: int, window_size: int) -> float:
    """Lower bound of the Euclidean distance between the z-normalized windows
    that produced words ``a`` and ``b``."""
    if len(a) != len(b):
        raise InvalidInputError(f"word lengths differ: {len(a)} != {len(b)}")
    if not a:
        raise InvalidInputError("words must not be empty")
    ca, cb = word_to_codes(a), word_to_codes(b)
    if ca.max() >= alpha or cb.max() >= alpha:
        raise InvalidInputError(f"word uses symbols outside an alphabet of size {alpha}")
    cells = mindist_table(alpha)[ca, cb]
    return math.sqrt(window_size / len(a)) * math.sqrt(float(np.sum(cells ** 2)))
