import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from saxmine.anomaly import (ScoreSeries, brute_force_discord, chaos_game_score, chaos_histogram,
                             covering_sum, density_to_score, hot_sax_discord, histogram_distance,
                             sequitur_density, sequitur_model, sequitur_score, threshold_alarms,
                             znormalized_windows)
from saxmine.exceptions import InvalidInputError
from saxmine.sax import SaxConfig, sax_sliding
from saxmine.synth import synth


def flat_period_sine(period=50, cycles=10, at=5):
    x = np.sin(2 * np.pi * np.arange(period * cycles) / period)
    x[at * period:(at + 1) * period] = 0.0
    return x


def naive_discord(x, n):
    """Double loop over z-normalized windows with scipy-free arithmetic."""
    m = len(x) - n + 1
    w = []
    for i in range(m):
        seg = x[i:i + n]
        sd = seg.std()
        w.append(np.zeros(n) if sd < 1e-8 else (seg - seg.mean()) / sd)
    best, loc = -1.0, None
    for p in range(m):
        nn = min(np.linalg.norm(w[p] - w[q]) for q in range(m) if abs(p - q) > n)
        if nn > best:
            best, loc = nn, p
    return loc, best


# -- discords --------------------------------------------------------------

def test_brute_matches_naive_oracle():
    rng = np.random.default_rng(5)
    for _ in range(5):
        x = rng.normal(size=120).cumsum()
        loc, dist = naive_discord(x, 12)
        r = brute_force_discord(x, 12)
        assert r.location == loc
        assert r.distance == pytest.approx(dist, abs=1e-9)


def test_brute_flat_segment():
    x = flat_period_sine()
    r = brute_force_discord(x, 50)
    # Window start within half a window of the flat segment start.
    assert abs(r.location - 250) <= 25


def test_brute_constant_series():
    r = brute_force_discord(np.ones(100), 10)
    assert r.distance == 0.0
    assert r.location == 0


def test_brute_spike():
    x = np.concatenate((np.zeros(100), [10.0], np.zeros(100)))
    assert 91 <= brute_force_discord(x, 10).location <= 101


def test_discord_too_short():
    with pytest.raises(InvalidInputError):
        brute_force_discord(np.arange(20.0), 10)
    with pytest.raises(InvalidInputError):
        hot_sax_discord(np.arange(20.0), 10)


def test_hot_sax_equals_brute_examples():
    cases = [(flat_period_sine(), 50),
             (np.concatenate((np.zeros(100), [10.0], np.zeros(100))), 10),
             (np.ones(100), 10)]
    for x, n in cases:
        b, h = brute_force_discord(x, n), hot_sax_discord(x, n)
        assert (h.location, h.distance) == (b.location, b.distance)


def test_hot_sax_seed_independent():
    x = np.random.default_rng(2).normal(size=800).cumsum()
    a = hot_sax_discord(x, 32, seed=1)
    b = hot_sax_discord(x, 32, seed=2)
    assert (a.location, a.distance) == (b.location, b.distance)


def test_hot_sax_saves_calls_on_flat_anomaly():
    x = flat_period_sine() + np.random.default_rng(0).normal(0, 0.01, 500)
    b = brute_force_discord(x, 50)
    h = hot_sax_discord(x, 50, SaxConfig(3, 5, 50))
    assert h.location == b.location
    assert 5 * h.calls <= b.calls


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(200, 500), st.integers(8, 30), st.integers(0, 5))
def test_hot_sax_exact_property(seed, n_points, n, hot_seed):
    x = np.random.default_rng(seed).normal(size=n_points).cumsum()
    b = brute_force_discord(x, n)
    h = hot_sax_discord(x, n, seed=hot_seed)
    assert h.location == b.location
    assert abs(h.distance - b.distance) <= 1e-9
    assert h.calls <= b.calls


def test_hot_sax_config_mismatch():
    with pytest.raises(InvalidInputError):
        hot_sax_discord(np.arange(100.0), 10, SaxConfig(3, 4, 12))


def test_znormalized_windows_flat():
    w = znormalized_windows(np.array([1.0, 1, 1, 2, 3]), 3)
    np.testing.assert_array_equal(w[0], 0.0)
    np.testing.assert_allclose(w[2], [-1.2247449, 0, 1.2247449], atol=1e-6)


# -- Sequitur density ------------------------------------------------------

def test_covering_sum_oracle():
    rng = np.random.default_rng(0)
    per = rng.integers(0, 5, 20)
    w, n = 4, 23
    expected = [sum(per[s] for s in range(len(per)) if s <= i < s + w) for i in range(n)]
    np.testing.assert_array_equal(covering_sum(per, n, w), expected)


def test_density_repetitive_interior():
    x = np.tile([0.0, 1.0, 0.0, -1.0], 100)
    d = sequitur_density(x, SaxConfig(3, 4, 8)).scores
    interior = d[50:-50]
    assert interior.min() > d[0] and interior.min() > d[-1]


def test_density_copy_beats_fresh_noise():
    rng = np.random.default_rng(4)
    base = rng.normal(size=1000).cumsum()
    x = np.concatenate((base, base[:500], rng.normal(size=500).cumsum() + base[-1]))
    cfg = SaxConfig(4, 4, 16)
    d = sequitur_density(x, cfg).scores
    assert d[1050:1450].mean() >= d[1550:1950].mean()


def test_density_single_window():
    d = sequitur_density(np.arange(8.0), SaxConfig(3, 4, 8))
    np.testing.assert_array_equal(d.scores, 0.0)


def test_density_to_score_examples():
    s = density_to_score(ScoreSeries(np.array([3.0, 1.0, 3.0]), 0, 2))
    np.testing.assert_array_equal(s.scores, [0, 2, 0])
    s = density_to_score(ScoreSeries(np.full(5, 4.0), 0, 4))
    np.testing.assert_array_equal(s.scores, 0.0)


def test_collapse_runs_expands_depths():
    x = np.repeat(np.random.default_rng(1).normal(size=60), 5)
    m = sequitur_model(x, SaxConfig(3, 2, 4), collapse_runs=True)
    assert m.depths.size == len(x) - 3
    assert len(m.token_of_window) == m.depths.size


def test_sequitur_score_valid_range():
    x = synth("sine", {"length": 600, "period": 40, "noise": 0.05}).values
    cfg = SaxConfig(4, 4, 40)
    s = sequitur_score(x, cfg)
    assert (s.valid_from, s.valid_to) == (39, 600 - 40)
    assert np.isnan(s.scores[:39]).all() and np.isnan(s.scores[561:]).all()
    assert (s.valid >= 0).all()
    with pytest.raises(InvalidInputError):
        sequitur_score(x[:78], cfg)


# -- Chaos Game ------------------------------------------------------------

def test_chaos_histogram_bins():
    assert chaos_histogram(["abcd"], 3).counts.size == 64
    h = chaos_histogram(["aaa"], 3).counts
    assert h[0] == 1 and h.sum() == 1
    h = chaos_histogram(["ab", "ba"], 1).counts
    np.testing.assert_array_equal(h, [1.0, 1.0, 0.0, 0.0])


def test_chaos_histogram_errors():
    with pytest.raises(InvalidInputError):
        chaos_histogram(["ab"], 3)
    with pytest.raises(InvalidInputError):
        chaos_histogram(["abc"], 2, alpha=3)
    with pytest.raises(InvalidInputError):
        chaos_histogram(["abe"], 2)
    with pytest.raises(InvalidInputError):
        chaos_histogram(["ab", "abc"], 1)


def count_grams(words, level):
    counts = {}
    for w in words:
        for i in range(len(w) - level + 1):
            counts[w[i:i + level]] = counts.get(w[i:i + level], 0) + 1
    return counts


@settings(max_examples=100)
@given(st.integers(1, 6), st.integers(3, 10), st.integers(1, 40), st.integers(0, 10_000))
def test_chaos_counts_conservation(level, word_size, count, seed):
    level = min(level, word_size)
    rng = np.random.default_rng(seed)
    words = ["".join(rng.choice(list("abcd"), word_size)) for _ in range(count)]
    raw = chaos_histogram(words, level, normalize=False).counts
    assert raw.sum() == (word_size - level + 1) * count
    for gram, c in count_grams(words, level).items():
        k = int("".join(str(ord(ch) - ord("a")) for ch in gram), 4)
        assert raw[k] == c


def naive_chaos_score(x, cfg, level, D, L):
    words = sax_sliding(x, cfg).words
    out = {}
    for i in range(L, len(words) - D + 1):
        det = chaos_histogram(words[i:i + D], level).counts
        lag = chaos_histogram(words[i - L:i], level).counts
        out[i] = histogram_distance(det, lag)
    return out


def test_chaos_score_matches_naive():
    x = np.random.default_rng(9).normal(size=300).cumsum()
    cfg = SaxConfig(4, 4, 16)
    s = chaos_game_score(x, cfg, 2, 5, 12)
    expected = naive_chaos_score(x, cfg, 2, 5, 12)
    assert s.valid_from == min(expected) and s.valid_to == max(expected)
    for i, v in expected.items():
        assert s.scores[i] == pytest.approx(v, abs=1e-12)


def test_chaos_symmetry():
    rng = np.random.default_rng(1)
    a, b = rng.random(64), rng.random(64)
    assert histogram_distance(a, b) == histogram_distance(b, a)
    # With D == L, reversing the series swaps detection and lag windows.
    x = rng.normal(size=400).cumsum()
    cfg = SaxConfig(4, 4, 16)
    fwd = chaos_game_score(x, cfg, 3, 10, 10)
    expected = naive_chaos_score(x, cfg, 3, 10, 10)
    swapped = {}
    words = sax_sliding(x, cfg).words
    for i in expected:
        det = chaos_histogram(words[i - 10:i], 3).counts
        lag = chaos_histogram(words[i:i + 10], 3).counts
        swapped[i] = histogram_distance(det, lag)
    for i in expected:
        assert fwd.scores[i] == pytest.approx(swapped[i], abs=1e-12)


def test_chaos_buffering_contract():
    x = np.random.default_rng(3).normal(size=500)
    cfg = SaxConfig(4, 4, 16)
    D, L, stride = 6, 12, 2
    full = chaos_game_score(x, cfg, 3, D, L, stride=stride)
    lookahead = cfg.window_size - 1 + (D - 1) * stride
    assert full.valid_to == len(x) - 1 - lookahead
    assert full.valid_from == L * stride
    # Every prefix reproduces the full scores wherever it is defined.
    for end in range(L * stride + lookahead + 1, len(x) + 1, 37):
        part = chaos_game_score(x[:end], cfg, 3, D, L, stride=stride)
        assert part.valid_to == end - 1 - lookahead
        np.testing.assert_array_equal(part.valid, full.scores[part.valid_from:part.valid_to + 1])


def test_chaos_stationary_vs_step():
    x = synth("step", {"length": 4000, "period": 40}, seed=3)
    cfg = SaxConfig(4, 4, 16)
    s = chaos_game_score(x.values, cfg, 3, 100, 200)
    step = x.meta["step_index"]
    assert abs(int(np.nanargmax(s.scores)) - step) <= 100 + 16
    stationary = s.scores[s.valid_from:step - 400]
    assert np.nanmax(s.scores) > 5 * stationary.mean()


def test_chaos_errors():
    x = np.random.default_rng(0).normal(size=300)
    with pytest.raises(InvalidInputError):
        chaos_game_score(x, SaxConfig(3, 4, 16))
    with pytest.raises(InvalidInputError):
        chaos_game_score(x, SaxConfig(4, 4, 16), level=5)
    with pytest.raises(InvalidInputError):
        chaos_game_score(x, SaxConfig(4, 4, 16), D=10, L=5)
    with pytest.raises(InvalidInputError):
        chaos_game_score(x[:40], SaxConfig(4, 4, 16), D=10)


def test_scores_non_negative():
    x = synth("weekly", {"weeks": 2, "day": 48}, seed=1).values
    cfg = SaxConfig(4, 4, 24)
    assert (sequitur_score(x, cfg).valid >= 0).all()
    assert (chaos_game_score(x, cfg, 3, 10).valid >= 0).all()
    assert brute_force_discord(x, 24).distance >= 0


# -- alarms ----------------------------------------------------------------

def test_alarms_examples():
    assert threshold_alarms(ScoreSeries(np.full(50, 2.0), 0, 49)) == []
    spike = np.zeros(1000)
    spike[7] = 100.0
    assert threshold_alarms(ScoreSeries(spike, 0, 999)) == [7]
    assert threshold_alarms(ScoreSeries(spike, 0, 999), k=1e9) == []


def test_alarms_merge_runs_and_offset():
    s = np.full(300, np.nan)
    valid = np.zeros(200)
    valid[[50, 51, 52, 120]] = 100.0
    s[100:300] = valid
    assert threshold_alarms(ScoreSeries(s, 100, 299), k=3) == [150, 220]


def test_alarms_errors():
    s = ScoreSeries(np.zeros(3), 0, 2)
    with pytest.raises(InvalidInputError):
        threshold_alarms(s, 0)
    with pytest.raises(InvalidInputError):
        threshold_alarms(ScoreSeries(np.zeros(3), 2, 1))


@given(st.lists(st.floats(0, 1e6), min_size=1, max_size=300), st.floats(0.1, 10))
def test_alarms_within_valid_range(values, k):
    scores = np.concatenate((np.full(5, np.nan), values, np.full(5, np.nan)))
    s = ScoreSeries(scores, 5, 4 + len(values))
    for a in threshold_alarms(s, k):
        assert s.valid_from <= a <= s.valid_to
