"""Anomaly detectors: exact discord search (brute force and Hot SAX),
Sequitur rule density, Chaos Game histogram divergence and sigma alarms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .exceptions import InvalidInputError
from .grammar import Grammar, infer_grammar, unwrap_grammar
from .sax import EPS_FLAT, SaxConfig, SeriesLike, as_array, sax_sliding

CHAOS_ALPHABET = 4


@dataclass(frozen=True)
class DiscordResult:
    """Most anomalous window: start index and distance to its nearest
    non-self-match.  ``calls`` counts the distance evaluations performed."""

    location: int
    distance: float
    calls: int = 0


@dataclass(frozen=True, eq=False)
class ScoreSeries:
    """Per-point scores aligned to the input; NaN outside the valid range."""

    scores: np.ndarray
    valid_from: int
    valid_to: int

    def __len__(self) -> int:
        return self.scores.size

    @property
    def valid(self) -> np.ndarray:
        return self.scores[self.valid_from:self.valid_to + 1]

    @property
    def is_empty(self) -> bool:
        return self.valid_to < self.valid_from


def _score_series(n: int, values: np.ndarray, start: int) -> ScoreSeries:
    scores = np.full(n, np.nan)
    scores[start:start + values.size] = values
    return ScoreSeries(scores, start, start + values.size - 1)


def znormalized_windows(x: np.ndarray, n: int, znorm: bool = True) -> np.ndarray:
    """Matrix of all length-``n`` windows, each z-normalized on its own
    (flat windows become zeros)."""
    w = sliding_window_view(np.asarray(x, dtype=float), n)
    if not znorm:
        return np.ascontiguousarray(w)
    mu = w.mean(axis=1, keepdims=True)
    sd = w.std(axis=1, keepdims=True)
    flat = sd[:, 0] < EPS_FLAT
    sd[flat] = 1.0
    out = (w - mu) / sd
    out[flat] = 0.0
    return out


def window_distances(windows: np.ndarray, p: int, qs: np.ndarray) -> np.ndarray:
    """Euclidean distances from window ``p`` to windows ``qs``.

    Every exact search in this package goes through this function so that
    a given pair always produces the same floating-point value.
    """
    diff = windows[qs] - windows[p]
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def _check_discord_args(x: np.ndarray, n: int):
    if int(n) != n or n < 2:
        raise InvalidInputError(f"window size must be an integer >= 2, got {n}")
    if x.size < 2 * n + 1:
        raise InvalidInputError(
            f"series of length {x.size} is too short for window {n} (need >= {2 * n + 1})"
        )


def _non_self_matches(p: int, m: int, n: int) -> np.ndarray:
    return np.concatenate((np.arange(0, max(0, p - n)), np.arange(p + n + 1, m)))


def brute_force_discord(series: SeriesLike, n: int, *, znorm: bool = True) -> DiscordResult:
    """Exhaustive discord search.

    Windows with no non-self-match (possible in the middle of very short
    series) are not candidates.  Ties go to the smallest location.
    """
    x = as_array(series)
    _check_discord_args(x, n)
    windows = znormalized_windows(x, n, znorm)
    m = len(windows)
    best, loc, calls = -np.inf, None, 0
    for p in range(m):
        qs = _non_self_matches(p, m, n)
        if qs.size == 0:
            continue
        d = window_distances(windows, p, qs)
        calls += qs.size
        nn = d.min()
        if nn > best:
            best, loc = nn, p
    return DiscordResult(int(loc), float(best), calls)


def default_word_size(window: int, target: int = 8) -> int:
    """Divisor of ``window`` closest to ``target`` (smaller one on ties)."""
    divisors = [d for d in range(1, window + 1) if window % d == 0]
    return min(divisors, key=lambda d: (abs(d - target), d))


def hot_sax_discord(series: SeriesLike, n: int, cfg: SaxConfig | None = None,
                    seed: int = 0, *, znorm: bool = True) -> DiscordResult:
    """Discord search ordered by the Hot SAX heuristics.

    The outer loop visits windows whose SAX word is rarest first, then the
    rest in a seeded random order; the inner loop tries windows sharing the
    current word first and abandons as soon as a neighbour closer than the
    best discord so far turns up.  Only the visiting order depends on the
    heuristics, so the result equals :func:`brute_force_discord`.

    Parameters
    ----------
    series : TimeSeries or array-like
    n : int
        Window length.
    cfg : SaxConfig, optional
        SAX parameters; ``cfg.window_size`` must equal ``n``.  Defaults to
        ``alpha=3`` and a word size dividing ``n``.
    seed : int
        Seed for the shuffled part of both visiting orders.
    znorm : bool
        Compare z-normalized windows (default) or raw values.

    Returns
    -------
    DiscordResult
    """
    x = as_array(series)
    _check_discord_args(x, n)
    if cfg is None:
        cfg = SaxConfig(alpha=3, word_size=default_word_size(n), window_size=n)
    if cfg.window_size != n:
        raise InvalidInputError(f"cfg.window_size ({cfg.window_size}) must equal n ({n})")
    windows = znormalized_windows(x, n, znorm)
    m = len(windows)
    ids, _ = sax_sliding(x, cfg).word_ids()

    order = np.argsort(ids, kind="stable")
    bounds = np.flatnonzero(np.diff(ids[order])) + 1
    buckets = np.split(order, bounds)
    counts = np.bincount(ids)
    rarest = counts.min()

    rng = np.random.default_rng(seed)
    is_rare = counts[ids] == rarest
    outer = np.concatenate((np.flatnonzero(is_rare), rng.permutation(np.flatnonzero(~is_rare))))
    inner_rest = rng.permutation(m)
    bucket_of = {int(ids[b[0]]): b for b in buckets}

    best, loc, calls = -np.inf, None, 0
    for p in outer:
        p = int(p)
        nn = np.inf
        abandoned = False
        same = bucket_of[int(ids[p])]
        same = same[np.abs(same - p) > n]
        # Walk the candidates in growing chunks; only the distances up to
        # the abandoning one count as evaluated.
        for chunk in _chunks(same, inner_rest, ids, ids[p], p, n):
            d = window_distances(windows, p, chunk)
            hit = np.flatnonzero(d < best)
            if hit.size:
                k = hit[0] + 1
                calls += int(k)
                nn = min(nn, float(d[:k].min()))
                abandoned = True
                break
            calls += d.size
            nn = min(nn, float(d.min()))
        if abandoned or nn == np.inf:
            continue
        if nn > best or (nn == best and p < loc):
            best, loc = nn, p
    return DiscordResult(int(loc), float(best), calls)


def _chunks(same: np.ndarray, rest: np.ndarray, ids: np.ndarray, word: int, p: int, n: int):
    size = 8
    for lo in range(0, same.size, size):
        yield same[lo:lo + size]
    lo = 0
    size = 16
    while lo < rest.size:
        chunk = rest[lo:lo + size]
        lo += size
        size = min(size * 2, 4096)
        chunk = chunk[(ids[chunk] != word) & (np.abs(chunk - p) > n)]
        if chunk.size:
            yield chunk


@dataclass(frozen=True, eq=False)
class SequiturModel:
    """Grammar of a SAX-encoded series and the depth of every window."""

    grammar: Grammar
    vocab: list
    word_ids: np.ndarray
    token_of_window: np.ndarray
    depths: np.ndarray
    config: SaxConfig


def sequitur_model(series: SeriesLike, cfg: SaxConfig, *, collapse_runs: bool = False) -> SequiturModel:
    """Intern the sliding SAX words, infer their grammar and unwrap depths.

    With ``collapse_runs`` consecutive identical words are fed to the grammar
    once, and every window in the run inherits that token's depth.
    """
    x = as_array(series)
    seq = sax_sliding(x, cfg)
    ids, vocab = seq.word_ids()
    if collapse_runs:
        starts = np.concatenate(([True], ids[1:] != ids[:-1]))
        tokens = ids[starts]
        token_of_window = np.cumsum(starts) - 1
    else:
        tokens = ids
        token_of_window = np.arange(ids.size)
    grammar = infer_grammar(tokens.tolist())
    token_depths = np.fromiter((d for _, d in unwrap_grammar(grammar)), dtype=np.int64,
                               count=tokens.size)
    depths = token_depths[token_of_window]
    return SequiturModel(grammar, vocab, ids, token_of_window, depths, cfg)


def covering_sum(per_window: np.ndarray, n_points: int, window: int) -> np.ndarray:
    """For every point, the sum of ``per_window`` over the windows covering it."""
    c = np.concatenate(([0], np.cumsum(per_window)))
    i = np.arange(n_points)
    hi = np.minimum(i, per_window.size - 1) + 1
    lo = np.maximum(i - window + 1, 0)
    return (c[hi] - c[lo]).astype(float)


def sequitur_density(series: SeriesLike, cfg: SaxConfig, *, collapse_runs: bool = False) -> ScoreSeries:
    """Rule density of every point: the summed grammar depth of all SAX
    windows covering it.  Low density marks poorly compressible regions."""
    x = as_array(series)
    model = sequitur_model(x, cfg, collapse_runs=collapse_runs)
    density = covering_sum(model.depths, x.size, cfg.window_size)
    return ScoreSeries(density, 0, x.size - 1)


def density_to_score(d: ScoreSeries) -> ScoreSeries:
    """Turn a density (inverse score) into an anomaly score ``max - d``."""
    scores = np.full(len(d), np.nan)
    if not d.is_empty:
        valid = d.valid
        scores[d.valid_from:d.valid_to + 1] = valid.max() - valid
    return ScoreSeries(scores, d.valid_from, d.valid_to)


def full_coverage(d: ScoreSeries, window: int) -> ScoreSeries:
    """Restrict a per-point series to the points covered by ``window``
    sliding windows, dropping the roll-off at both ends."""
    lo = max(d.valid_from, window - 1)
    hi = min(d.valid_to, len(d) - window)
    if hi < lo:
        raise InvalidInputError(
            f"series of length {len(d)} has no point covered by {window} windows"
        )
    scores = np.full(len(d), np.nan)
    scores[lo:hi + 1] = d.scores[lo:hi + 1]
    return ScoreSeries(scores, lo, hi)


def sequitur_score(series: SeriesLike, cfg: SaxConfig, *, collapse_runs: bool = False) -> ScoreSeries:
    """Anomaly score from rule density, over the fully covered points.

    Near the ends fewer windows cover each point, so the summed density
    falls off for reasons unrelated to compressibility; those points are
    left out of the score.
    """
    x = as_array(series)
    if x.size < 2 * cfg.window_size - 1:
        raise InvalidInputError(
            f"series of length {x.size} needs at least {2 * cfg.window_size - 1} points"
        )
    d = sequitur_density(x, cfg, collapse_runs=collapse_runs)
    return density_to_score(full_coverage(d, cfg.window_size))


@dataclass(frozen=True, eq=False)
class ChaosHistogram:
    counts: np.ndarray
    level: int


def _chaos_codes(words, alpha: int) -> np.ndarray:
    if alpha != CHAOS_ALPHABET:
        raise InvalidInputError(f"Chaos Game needs an alphabet of {CHAOS_ALPHABET}, got {alpha}")
    if isinstance(words, np.ndarray):
        codes = np.asarray(words, dtype=np.int64)
        if codes.ndim != 2:
            raise InvalidInputError("symbol matrix must be 2-D")
    else:
        words = list(words)
        if not words:
            raise InvalidInputError("no words to count")
        lengths = {len(w) for w in words}
        if len(lengths) != 1:
            raise InvalidInputError("all words must have the same length")
        raw = np.frombuffer("".join(words).encode("ascii"), dtype=np.uint8).astype(np.int64)
        codes = (raw - ord("a")).reshape(len(words), lengths.pop())
    if codes.size and (codes.min() < 0 or codes.max() >= CHAOS_ALPHABET):
        raise InvalidInputError("words use symbols outside 'a'..'d'")
    return codes


def gram_histograms(codes: np.ndarray, level: int) -> np.ndarray:
    """Per-word counts of every length-``level`` substring, one row per word.

    Bin ``k`` is the substring whose symbols, read as base-4 digits, spell
    ``k`` (the quadrant path of the Chaos Game bitmap).
    """
    m, n = codes.shape
    if int(level) != level or level < 1:
        raise InvalidInputError(f"level must be a positive integer, got {level}")
    if n < level:
        raise InvalidInputError(f"words of length {n} are shorter than level {level}")
    bins = CHAOS_ALPHABET ** level
    grams = np.zeros((m, n - level + 1), dtype=np.int64)
    for j in range(level):
        grams = grams * CHAOS_ALPHABET + codes[:, j:n - level + 1 + j]
    flat = grams + (np.arange(m) * bins)[:, None]
    return np.bincount(flat.ravel(), minlength=m * bins).reshape(m, bins)


def chaos_histogram(words, level: int = 3, *, alpha: int = CHAOS_ALPHABET,
                    normalize: bool = True) -> ChaosHistogram:
    """Frequencies of all length-``level`` substrings inside ``words``.

    Substrings are counted within each word, never across words; the counts
    are divided by the number of words unless ``normalize`` is False.
    """
    codes = _chaos_codes(words, alpha)
    if codes.shape[0] == 0:
        raise InvalidInputError("no words to count")
    counts = gram_histograms(codes, level).sum(axis=0).astype(float)
    if normalize:
        counts /= codes.shape[0]
    return ChaosHistogram(counts, int(level))


def histogram_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Squared Euclidean distance between two histograms."""
    d = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    return float(np.dot(d, d))


def _strided_window_sums(h: np.ndarray, length: int, stride: int) -> np.ndarray:
    """``out[i] = sum(h[i + k * stride] for k in range(length))`` for every
    ``i`` with ``i + (length - 1) * stride < len(h)``."""
    m = h.shape[0]
    count = m - (length - 1) * stride
    out = np.empty((max(count, 0),) + h.shape[1:], dtype=h.dtype)
    for r in range(stride):
        rows = h[r::stride]
        c = np.concatenate((np.zeros((1,) + h.shape[1:], dtype=h.dtype), np.cumsum(rows, axis=0)))
        sums = c[length:] - c[:-length]
        out[r::stride] = sums[:len(out[r::stride])]
    return out


def chaos_game_score(series: SeriesLike, cfg: SaxConfig, level: int = 3, D: int = 10,
                     L: int | None = None, *, stride: int = 1) -> ScoreSeries:
    """Chaos Game anomaly score.

    For each sliding SAX word ``i`` the normalized gram histogram of the
    ``D`` words starting at ``i`` (detection window) is compared with that
    of the ``L`` words before ``i`` (lag window); the score is their squared
    Euclidean distance.  Consecutive words in either window are ``stride``
    positions apart.  The score of word ``i`` is reported at point ``i``.

    Returns
    -------
    ScoreSeries
        Defined from ``L * stride`` (lag warm-up) to
        ``N - window - (D - 1) * stride`` (detection look-ahead).
    """
    x = as_array(series)
    if L is None:
        L = 2 * D
    if cfg.alpha != CHAOS_ALPHABET:
        raise InvalidInputError(f"Chaos Game needs alpha = {CHAOS_ALPHABET}, got {cfg.alpha}")
    if D < 1 or L < D:
        raise InvalidInputError(f"need L >= D >= 1, got D={D}, L={L}")
    if stride < 1:
        raise InvalidInputError(f"stride must be >= 1, got {stride}")
    if level > cfg.word_size:
        raise InvalidInputError(f"level {level} exceeds the word size {cfg.word_size}")
    m = x.size - cfg.window_size + 1
    first = L * stride
    last = m - 1 - (D - 1) * stride
    if m < 1 or last < first:
        raise InvalidInputError(
            f"series of length {x.size} is too short for L={L} and D={D} windows"
        )
    seq = sax_sliding(x, cfg)
    per_word = gram_histograms(seq.symbols.astype(np.int64), level)
    det = _strided_window_sums(per_word, D, stride)[first:last + 1] / D
    lag_sums = _strided_window_sums(per_word, L, stride)
    lag = lag_sums[first - L * stride:last + 1 - L * stride] / L
    diff = det - lag
    scores = np.einsum("ij,ij->i", diff, diff)
    return _score_series(x.size, scores, first)


def threshold_alarms(s: ScoreSeries, k: float = 5.0) -> list[int]:
    """Indices where the score first exceeds ``mean + k * std``.

    Statistics use the valid range only.  A run of consecutive
    over-threshold points yields a single alarm at its first index.
    """
    if not k > 0:
        raise InvalidInputError(f"k must be positive, got {k}")
    if s.is_empty:
        raise InvalidInputError("score series has an empty valid range")
    valid = s.valid
    sd = valid.std()
    if sd == 0:
        return []
    over = valid > valid.mean() + k * sd
    starts = over & ~np.concatenate(([False], over[:-1]))
    return (np.flatnonzero(starts) + s.valid_from).tolist()
