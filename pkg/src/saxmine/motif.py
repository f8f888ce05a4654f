"""Motif discovery: exact closest pair (Mueen-Keogh), grammar-rule motifs,
Motif Tracking, approximate motifs by aggregative clustering and multiscale
MDL motifs."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.ndimage import gaussian_filter1d

from .anomaly import sequitur_model, znormalized_windows
from .exceptions import InvalidInputError
from .grammar import rule_expansion_lengths, rule_occurrences
from .sax import (EPS_FLAT, SaxConfig, SeriesLike, as_array, bin_medians,
                  gaussian_breakpoints, quantize, sax_sliding, znormalize)

# Slack on the triangle-inequality prune; keeps ties and rounding-level
# near-ties from being discarded.
_PRUNE_SLACK = 1e-9


@dataclass(frozen=True)
class Motif:
    """A recurring pattern.

    ``occurrences`` are sorted start indices into the series, ``length`` the
    number of points per occurrence and ``score`` an algorithm-specific
    figure of merit (pair distance, grammar depth, tracker count, cluster
    size or description-length gain).
    """

    occurrences: tuple
    length: int
    source: str
    score: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        occ = tuple(sorted(int(o) for o in self.occurrences))
        object.__setattr__(self, "occurrences", occ)
        if self.length < 2:
            raise InvalidInputError(f"motif length must be >= 2, got {self.length}")

    def to_dict(self, times=None) -> dict:
        out = {
            "source": self.source,
            "length": int(self.length),
            "score": float(self.score),
            "occurrences": list(self.occurrences),
        }
        if times is not None:
            out["times"] = [float(times[o]) for o in self.occurrences]
        if self.meta:
            out["meta"] = self.meta
        return out


def _pair_distances(windows: np.ndarray, i: np.ndarray, j: np.ndarray) -> np.ndarray:
    diff = windows[j] - windows[i]
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def _check_pair_args(x: np.ndarray, n: int):
    if int(n) != n or n < 2:
        raise InvalidInputError(f"motif length must be an integer >= 2, got {n}")
    if x.size < 2 * n + 1:
        raise InvalidInputError(
            f"series of length {x.size} is too short for motif length {n} (need >= {2 * n + 1})"
        )


def _better(d, pair, best, best_pair):
    return d < best or (d == best and (best_pair is None or pair < best_pair))


def brute_force_closest_pair(series: SeriesLike, n: int, *, znorm: bool = True) -> Motif:
    """Exhaustive closest pair of windows at least ``n + 1`` apart.

    Ties go to the lexicographically smallest ``(i, j)``.
    """
    x = as_array(series)
    _check_pair_args(x, n)
    windows = znormalized_windows(x, n, znorm)
    m = len(windows)
    best, best_pair = np.inf, None
    for i in range(m - n - 1):
        js = np.arange(i + n + 1, m)
        d = _pair_distances(windows, np.full(js.size, i), js)
        k = int(np.argmin(d))
        if d[k] < best:
            best, best_pair = float(d[k]), (i, int(js[k]))
    return Motif(best_pair, n, "brute-pair", best, {"calls": (m - n - 1) * (m - n) // 2})


def mk_motif(series: SeriesLike, n: int, num_refs: int = 1, seed: int = 0,
             *, znorm: bool = True, audit: list | None = None) -> Motif:
    """Exact closest pair with reference-point pruning.

    Windows are sorted by their distance to the first reference; pairs are
    then scanned by increasing offset in that order.  By the triangle
    inequality two windows cannot be closer than the difference of their
    reference distances, so the scan stops at the first offset where every
    such difference exceeds the best distance found.  Additional references
    seed the best distance and tighten the per-pair bound.

    Parameters
    ----------
    series : TimeSeries or array-like
    n : int
        Motif length; windows closer than ``n + 1`` are trivial matches.
    num_refs : int
        Number of random reference windows.
    seed : int
        Seed of the reference choice.  The result does not depend on it.
    znorm : bool
        Compare z-normalized windows (default) or raw values.
    audit : list, optional
        When given, receives ``(a, b, bound, best)`` arrays for every batch
        of pairs skipped by the bound test.

    Returns
    -------
    Motif
        The pair, with its distance as ``score``.
    """
    x = as_array(series)
    _check_pair_args(x, n)
    if int(num_refs) != num_refs or num_refs < 1:
        raise InvalidInputError(f"num_refs must be a positive integer, got {num_refs}")
    windows = znormalized_windows(x, n, znorm)
    m = len(windows)
    rng = np.random.default_rng(seed)
    refs = rng.choice(m, size=min(int(num_refs), m), replace=False)
    everyone = np.arange(m)

    best, best_pair, calls = np.inf, None, 0
    ref_dist = np.empty((len(refs), m))
    for k, r in enumerate(refs):
        r = int(r)
        ref_dist[k] = _pair_distances(windows, np.full(m, r), everyone)
        calls += m
        partners = np.flatnonzero(np.abs(everyone - r) > n)
        for j in partners[ref_dist[k, partners] == ref_dist[k, partners].min()] if partners.size else []:
            pair = (min(r, int(j)), max(r, int(j)))
            if _better(ref_dist[k, j], pair, best, best_pair):
                best, best_pair = float(ref_dist[k, j]), pair

    order = np.argsort(ref_dist[0], kind="stable")
    sorted_dist = ref_dist[0][order]
    for offset in range(1, m):
        a, b = order[:-offset], order[offset:]
        gap = sorted_dist[offset:] - sorted_dist[:-offset]
        live = gap <= best + _PRUNE_SLACK
        if not live.any():
            break
        cand = live & (np.abs(a - b) > n)
        if len(refs) > 1:
            bound = np.abs(ref_dist[:, a] - ref_dist[:, b]).max(axis=0)
            keep = bound <= best + _PRUNE_SLACK
            if audit is not None and np.any(cand & ~keep):
                sk = cand & ~keep
                audit.append((a[sk], b[sk], bound[sk], best))
            cand &= keep
        idx = np.flatnonzero(cand)
        if not idx.size:
            continue
        i = np.minimum(a[idx], b[idx])
        j = np.maximum(a[idx], b[idx])
        d = _pair_distances(windows, i, j)
        calls += d.size
        low = d.min()
        if low <= best:
            for t in np.flatnonzero(d == low):
                pair = (int(i[t]), int(j[t]))
                if _better(float(low), pair, best, best_pair):
                    best, best_pair = float(low), pair
    return Motif(best_pair, n, "mk", best, {"calls": calls})


# -- post-processing -------------------------------------------------------

def _collapse(m: Motif, window: int) -> Motif:
    kept = []
    for o in m.occurrences:
        if not kept or o - kept[-1] >= window:
            kept.append(o)
    if len(kept) == len(m.occurrences):
        return m
    return Motif(tuple(kept), m.length, m.source, m.score, m.meta)


def _obvious(m: Motif, x: np.ndarray, scale: float, eps: float) -> bool:
    for o in m.occurrences:
        seg = x[o:o + m.length]
        if seg.size < 2:
            continue
        if (seg.max() - seg.min()) / scale < eps:
            continue
        d = np.diff(seg)
        if np.all(d >= 0) or np.all(d <= 0):
            continue
        return False
    return True


def _overlapping(a: Motif, b: Motif) -> bool:
    shared = len(set(a.occurrences) & set(b.occurrences))
    return 2 * shared >= min(len(a.occurrences), len(b.occurrences))


def _merge_overlapping(motifs: list) -> list:
    motifs = list(motifs)
    merged = True
    while merged:
        merged = False
        for i in range(len(motifs)):
            for j in range(i + 1, len(motifs)):
                ma, mb = motifs[i], motifs[j]
                if _overlapping(ma, mb):
                    source = ma.source if ma.source == mb.source else f"{ma.source}+{mb.source}"
                    occ = set(ma.occurrences) | set(mb.occurrences)
                    motifs[i] = Motif(tuple(occ), max(ma.length, mb.length), source,
                                      max(ma.score, mb.score), ma.meta)
                    del motifs[j]
                    merged = True
                    break
            if merged:
                break
    return motifs


def _motif_order(m: Motif):
    return (-m.length, -m.score, m.occurrences)


def post_process_motifs(motifs, series: SeriesLike, window: int, *, eps: float = EPS_FLAT) -> list:
    """Clean up raw motif candidates.

    1. occurrences closer than ``window`` to the previous kept one are dropped;
    2. motifs whose every occurrence is monotone or flat are removed;
    3. motifs sharing at least half of the smaller occurrence set are merged
       (union of occurrences, longest length);
    4. the result is sorted longest first.

    The steps are repeated until nothing changes, so the function is
    idempotent.
    """
    x = as_array(series)
    scale = x.std() or 1.0
    current = sorted(motifs, key=_motif_order)
    while True:
        step = [_collapse(m, window) for m in current]
        step = [m for m in step if not _obvious(m, x, scale, eps)]
        step = sorted(_merge_overlapping(step), key=_motif_order)
        if step == current:
            return step
        current = step


# -- grammar motifs --------------------------------------------------------

def grammar_motifs(series: SeriesLike, cfg: SaxConfig, top_k: int = 5,
                   *, collapse_runs: bool = False) -> list:
    """Motifs read off the Sequitur grammar of the sliding SAX words.

    Every rule becomes a candidate whose occurrences are the series
    segments its expansions cover.  Candidates are ranked by the height of
    the rule's subtree and then by expansion length, post-processed, and the
    first ``top_k`` are returned.
    """
    x = as_array(series)
    if top_k < 1:
        raise InvalidInputError(f"top_k must be >= 1, got {top_k}")
    model = sequitur_model(x, cfg, collapse_runs=collapse_runs)
    g = model.grammar
    if not g.rules:
        return []
    tokens_per_rule = rule_expansion_lengths(g)
    heights = _rule_heights(g)
    window_start = np.flatnonzero(np.concatenate(([True], np.diff(model.token_of_window) != 0)))
    window_end = np.concatenate((window_start[1:], [model.token_of_window.size])) - 1
    candidates = []
    for k, occ in enumerate(rule_occurrences(g)):
        starts = [int(window_start[t]) for t, _ in occ]
        span = max(int(window_end[t + tokens_per_rule[k] - 1]) - int(window_start[t]) for t, _ in occ)
        length = span + cfg.window_size
        candidates.append(Motif(tuple(starts), length, "grammar", float(heights[k]),
                                {"rule": k, "tokens": tokens_per_rule[k]}))
    candidates.sort(key=lambda m: (-m.score, -m.meta["tokens"], m.occurrences))
    return post_process_motifs(candidates, x, cfg.window_size)[:top_k]


def _rule_heights(g) -> list:
    heights = [None] * len(g.rules)
    # Rules are numbered in pre-order, so children may carry lower or higher
    # ids; resolve by repeated passes over an explicit stack.
    for root in range(len(g.rules)):
        stack = [root]
        while stack:
            k = stack[-1]
            if heights[k] is not None:
                stack.pop()
                continue
            pending = [-t - 1 for t in g.rules[k] if t < 0 and heights[-t - 1] is None]
            if pending:
                stack.extend(pending)
                continue
            heights[k] = 1 + max([heights[-t - 1] for t in g.rules[k] if t < 0], default=0)
            stack.pop()
    return heights


# -- motif tracking --------------------------------------------------------

@dataclass
class Tracker:
    word: tuple
    score: int = 0
    indexes: list = field(default_factory=list)


def motif_tracking(series: SeriesLike, alpha: int = 3, r: float = 0.5, *,
                   symbol_size: int = 1, trace: list | None = None) -> list:
    """Motif Tracking on the first difference of the series.

    The differenced series is z-normalized and every position ``i`` gets the
    symbol of the mean of ``symbol_size`` points starting there.  A tracker
    word of length ``l`` matches at ``i`` when the symbols at ``i``,
    ``i + symbol_size``, ... spell it.  Matches are accepted in scan order
    when they do not overlap an accepted occurrence and their Euclidean
    distance to every accepted occurrence, divided by the segment length,
    is below ``r``.  Trackers with fewer than two occurrences die; survivors
    spawn one child per alphabet symbol.  The survivors of the last
    non-empty generation are returned as motifs (most occurrences first).

    ``trace``, when given, receives the list of surviving trackers of every
    generation.
    """
    x = as_array(series)
    if not r > 0:
        raise InvalidInputError(f"r must be positive, got {r}")
    if x.size < 3:
        raise InvalidInputError("motif tracking needs at least 3 points")
    gaussian_breakpoints(alpha)
    s = int(symbol_size)
    if s < 1:
        raise InvalidInputError(f"symbol_size must be >= 1, got {symbol_size}")
    z = znormalize(np.diff(x))
    if z.size < s:
        raise InvalidInputError("series too short for the symbol size")
    symbols = quantize(sliding_window_view(z, s).mean(axis=1), gaussian_breakpoints(alpha))
    positions = np.arange(symbols.size)
    pending = {(int(c),): positions[symbols == c] for c in range(alpha)}
    survivors = []
    length = 1
    while pending:
        seg = length * s
        alive = []
        for word in sorted(pending):
            cand = pending[word]
            cand = cand[cand + seg <= z.size]
            tracker = _track(z, word, cand, seg, r)
            if tracker.score >= 2:
                alive.append((tracker, cand))
        if not alive:
            break
        survivors = [t for t, _ in alive]
        if trace is not None:
            trace.append([Tracker(t.word, t.score, list(t.indexes)) for t in survivors])
        pending = {}
        for tracker, cand in alive:
            nxt = cand[cand + length * s < symbols.size]
            follow = symbols[nxt + length * s]
            for c in range(alpha):
                child = nxt[follow == c]
                if child.size >= 2:
                    pending[tracker.word + (c,)] = child
        length += 1
    motifs = [Motif(tuple(t.indexes), len(t.word) * s + 1, "tracking", float(t.score),
                    {"word": "".join(chr(ord("a") + c) for c in t.word)})
              for t in survivors]
    motifs.sort(key=lambda m: (-m.score, m.occurrences))
    return motifs


def _track(z: np.ndarray, word: tuple, cand: np.ndarray, seg: int, r: float) -> Tracker:
    tracker = Tracker(word)
    accepted = []
    for i in cand:
        i = int(i)
        if accepted and i - tracker.indexes[-1] < seg:
            continue
        piece = z[i:i + seg]
        if accepted:
            ref = np.asarray(accepted)
            d = np.sqrt(((ref - piece) ** 2).sum(axis=1)) / seg
            if not np.all(d < r):
                continue
        accepted.append(piece)
        tracker.indexes.append(i)
    tracker.score = len(tracker.indexes)
    return tracker


# -- approximate motifs ----------------------------------------------------

def word_correlations(symbols: np.ndarray, alpha: int) -> np.ndarray:
    """Pearson correlation between the numeric profiles of SAX words.

    Each symbol is replaced by the median of its Gaussian bin; words whose
    profile is constant correlate with nothing (0).
    """
    prof = bin_medians(alpha)[symbols]
    prof = prof - prof.mean(axis=1, keepdims=True)
    norm = np.sqrt((prof ** 2).sum(axis=1))
    flat = norm < EPS_FLAT
    norm[flat] = 1.0
    prof = prof / norm[:, None]
    prof[flat] = 0.0
    return prof @ prof.T


def approximate_motifs(series: SeriesLike, cfg: SaxConfig, r_min: float = 0.9) -> list:
    """Approximate motifs by complete-linkage aggregation of correlated words.

    Every pair of non-overlapping windows whose SAX words correlate with
    ``|r| >= r_min`` seeds a 2-cluster.  Clusters are merged whenever every
    cross pair is itself such a match, until a full pass changes nothing.
    Each final cluster is a motif of ``cfg.window_size`` points scored by
    its size.
    """
    x = as_array(series)
    if not 0 < r_min <= 1:
        raise InvalidInputError(f"r_min must lie in (0, 1], got {r_min}")
    if x.size < 2 * cfg.window_size:
        raise InvalidInputError(
            f"series of length {x.size} needs at least {2 * cfg.window_size} points"
        )
    seq = sax_sliding(x, cfg)
    w = cfg.window_size
    m = len(seq)
    corr = np.abs(word_correlations(seq.symbols, cfg.alpha))
    idx = np.arange(m)
    adjacency = (corr >= r_min - 1e-12) & (np.abs(idx[:, None] - idx[None, :]) >= w)
    clusters = [frozenset((i, j)) for i, j in zip(*np.nonzero(np.triu(adjacency)))]
    clusters = _aggregate(clusters, adjacency)

    motifs = []
    for c in clusters:
        occ = sorted(c)
        sub = corr[np.ix_(occ, occ)]
        mean_r = float(sub[np.triu_indices(len(occ), 1)].mean())
        motifs.append(Motif(tuple(occ), w, "approx", float(len(occ)), {"mean_abs_r": round(mean_r, 12)}))
    motifs.sort(key=lambda m: (-m.score, -m.meta["mean_abs_r"], m.occurrences))
    return motifs


def _all_in(mask: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Per column of ``cols`` (one cluster each), whether every vertex is set
    in ``mask``."""
    out = mask[cols[0]].copy()
    for c in cols[1:]:
        out &= mask[c]
    return out


def _aggregate(clusters: list, adjacency: np.ndarray) -> list:
    """Merge clusters in id order while the union stays a clique.

    A cluster can join the one being grown only if all its vertices are in
    the grown set or adjacent to all of it.  That allowed set only shrinks,
    and a cluster inside the grown set changes nothing, so the scan jumps
    from one vertex-adding merge to the next with vectorized tests.
    """
    m = adjacency.shape[0]
    while True:
        if not clusters:
            return []
        width = max(map(len, clusters))
        # Padding uses a sentinel vertex that passes every test.
        table = np.full((width, len(clusters)), m, dtype=np.int64)
        for k, c in enumerate(clusters):
            table[:len(c), k] = sorted(c)
        used = np.zeros(len(clusters), dtype=bool)
        out, updates = [], 0
        for a in range(len(clusters)):
            if used[a]:
                continue
            used[a] = True
            base = table[:, a][table[:, a] < m]
            current = np.zeros(m + 1, dtype=bool)
            current[base] = True
            common = np.append(adjacency[base].all(axis=0), True)
            allowed = current | common
            cand = np.flatnonzero(~used & _all_in(allowed, table))
            rows = table[:, cand]
            while cand.size:
                ok = _all_in(allowed, rows)
                inner = _all_in(current, rows)
                adding = np.flatnonzero(ok & ~inner)
                stop = adding[0] if adding.size else cand.size
                absorbed = cand[:stop][inner[:stop]]
                used[absorbed] = True
                updates += absorbed.size
                if not adding.size:
                    break
                new = rows[:, stop][~current[rows[:, stop]]]
                current[new] = True
                common &= np.append(adjacency[new].all(axis=0), True)
                common &= ~current
                common[m] = True
                allowed = current | common
                used[cand[stop]] = True
                updates += 1
                cand, rows = cand[stop + 1:], rows[:, stop + 1:]
            out.append(frozenset(np.flatnonzero(current[:m]).tolist()))
        clusters = list(dict.fromkeys(out))
        if updates == 0:
            return clusters


# -- multiscale MDL --------------------------------------------------------

def _segments(detail: np.ndarray) -> np.ndarray:
    """Boundaries (point indices) of the monotone runs of ``detail``."""
    deriv = np.diff(detail)
    if deriv.size == 0:
        return np.array([0, detail.size - 1])
    tol = 1e-9 * max(float(np.ptp(detail)), 1e-300)
    sign = np.where(deriv > tol, 1, np.where(deriv < -tol, -1, 0))
    nz = np.flatnonzero(sign)
    if nz.size == 0:
        return np.array([0, detail.size - 1])
    # Zero runs belong to the preceding segment (leading ones to the first).
    fill = np.maximum.accumulate(np.where(sign != 0, np.arange(sign.size), nz[0]))
    sign = sign[fill]
    changes = np.flatnonzero(sign[1:] != sign[:-1]) + 1
    return np.concatenate(([0], changes, [detail.size - 1]))


def _quantize_segments(features: np.ndarray, k: int, seed: int) -> np.ndarray:
    from sklearn.cluster import KMeans

    f = features - features.mean(axis=0)
    sd = f.std(axis=0)
    f = f / np.where(sd > 0, sd, 1.0)
    distinct = len(np.unique(f, axis=0))
    n_clusters = min(k, distinct)
    if n_clusters < 2:
        return np.zeros(len(f), dtype=np.int64)
    km = KMeans(n_clusters=n_clusters, init="k-means++", n_init=1, max_iter=50, random_state=seed)
    labels = km.fit_predict(f)
    # Relabel by first appearance so strings do not depend on cluster ids.
    _, first = np.unique(labels, return_index=True)
    rank = np.empty(n_clusters, dtype=np.int64)
    rank[np.argsort(first)] = np.arange(n_clusters)
    return rank[labels]


def _greedy_occurrences(positions, length: int) -> list:
    kept = []
    for p in positions:
        if not kept or p >= kept[-1] + length:
            kept.append(int(p))
    return kept


def description_lengths(text_len: int, motif_len: int, count: int, k: int) -> tuple:
    """Two-part code lengths in bits: ``(L(T), L(m), L(T|m))``.

    The series string and its motif-substituted rewrite are both coded over
    ``k`` cluster symbols plus one escape symbol; the motif itself over the
    ``k`` cluster symbols.
    """
    per_symbol = math.log2(k + 1)
    baseline = text_len * per_symbol
    model = motif_len * math.log2(k) if k > 1 else 0.0
    rewritten = (text_len - count * (motif_len - 1)) * per_symbol
    return baseline, model, rewritten


def best_mdl_motif(text: np.ndarray, k: int, max_len: int = 64):
    """Repeated substring minimizing ``L(m) + L(T|m)``.

    Returns ``(start_positions, length, cost, baseline)`` or None when no
    substring occurs twice without overlap.
    """
    text = np.asarray(text, dtype=np.int64)
    size = text.size
    best = None
    for length in range(2, min(max_len, size // 2) + 1):
        view = sliding_window_view(text, length)
        _, first, inverse, counts = np.unique(view, axis=0, return_index=True,
                                              return_inverse=True, return_counts=True)
        inverse = inverse.ravel()
        groups = np.split(np.argsort(inverse, kind="stable"), np.cumsum(counts)[:-1])
        found = False
        for g in np.argsort(first):
            if counts[g] < 2:
                continue
            occ = _greedy_occurrences(groups[g], length)
            if len(occ) < 2:
                continue
            found = True
            baseline, model, rewritten = description_lengths(size, length, len(occ), k)
            cost = model + rewritten
            key = (cost, -length, occ[0])
            if best is None or key < best[0]:
                best = (key, occ, length, cost, baseline)
        if not found:
            break
    if best is None:
        return None
    _, occ, length, cost, baseline = best
    return occ, length, cost, baseline


def mdl_motifs(series: SeriesLike, scales: int = 8, k: int = 4, *, seed: int = 0,
               max_len: int = 64) -> list:
    """One MDL-selected motif per smoothing scale.

    At scale ``i`` the series is smoothed with a Gaussian kernel spanning
    ``2**i`` points (sigma = span / 6), cut into monotone segments at the
    sign changes of its first difference, and each segment is coded by
    (length, rise) and clustered into ``k`` symbols.  Among the substrings
    of that symbol string occurring at least twice without overlap, the one
    with the smallest two-part description length is kept.

    The returned motifs carry the description-length gain as ``score`` and
    ``scale``, ``cost`` and ``baseline`` (bits) in ``meta``.  Scales whose
    kernel exceeds the series are skipped with a warning.
    """
    x = as_array(series)
    if int(scales) != scales or scales < 1:
        raise InvalidInputError(f"scales must be a positive integer, got {scales}")
    if int(k) != k or k < 2:
        raise InvalidInputError(f"k must be an integer >= 2, got {k}")
    motifs = []
    for i in range(1, int(scales) + 1):
        span = 2 ** i
        if span > x.size:
            warnings.warn(f"scale {i} skipped: kernel of {span} points exceeds the series",
                          stacklevel=2)
            continue
        detail = gaussian_filter1d(x, sigma=span / 6.0, mode="nearest", truncate=3.0)
        bounds = _segments(detail)
        if bounds.size < 3:
            continue
        lengths = np.diff(bounds).astype(float)
        rises = detail[bounds[1:]] - detail[bounds[:-1]]
        text = _quantize_segments(np.column_stack((lengths, rises)), int(k), seed)
        found = best_mdl_motif(text, int(k), max_len)
        if found is None:
            continue
        occ, length, cost, baseline = found
        starts = tuple(int(bounds[q]) for q in occ)
        span_pts = max(int(bounds[q + length]) - int(bounds[q]) for q in occ) + 1
        motifs.append(Motif(starts, span_pts, "mdl", float(baseline - cost), {
            "scale": i,
            "segments": length,
            "cost": round(cost, 9),
            "baseline": round(baseline, 9),
            "symbols": text[occ[0]:occ[0] + length].tolist(),
        }))
    return motifs
