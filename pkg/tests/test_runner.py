import csv
import io
import json

import numpy as np
import pytest

from saxmine.exceptions import ConfigError
from saxmine.io import write_series_csv
from saxmine.runner import ALGORITHMS, RunConfig, run_detector
from saxmine.synth import synth


def without_timing(report):
    data = dict(report.data)
    data.pop("timing")
    return json.dumps(data, indent=2)


@pytest.fixture
def weekly_csv(tmp_path):
    p = tmp_path / "weekly.csv"
    write_series_csv(synth("weekly", {"weeks": 2, "day": 48}, seed=3), p)
    return str(p)


def small_config(algo, **kw):
    base = dict(alpha=4, word_size=4, window_size=24, lead=10, scales=4)
    base.update(kw)
    return RunConfig(algo, **base)


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_config_echo_and_reproducible(algo, weekly_csv):
    cfg = small_config(algo, input=weekly_csv)
    a = run_detector(cfg)
    b = run_detector(RunConfig.from_dict(a.data["config"]))
    assert a.data["config"] == cfg.to_dict()
    assert list(a.data)[:2] == ["config", "series_meta"] and list(a.data)[-1] == "timing"
    assert without_timing(a) == without_timing(b)
    assert a.to_csv() == b.to_csv()
    json.loads(a.to_json())


@pytest.mark.parametrize("algo", ["sequitur", "chaosgame"])
def test_alarms_inside_valid_range(algo):
    s = synth("planted-discord", {"length": 3000, "period": 50}, seed=4)
    r = run_detector(small_config(algo, word_size=5, window_size=50, k_sigma=3), s)
    lo, hi = r.data["scores"]["valid_from"], r.data["scores"]["valid_to"]
    assert r.data["alarms"]
    assert any(abs(a["index"] - s.meta["discord_index"]) <= 50 for a in r.data["alarms"])
    for a in r.data["alarms"]:
        assert lo <= a["index"] <= hi
    values = r.data["scores"]["values"]
    assert all(v is None for v in values[:lo] + values[hi + 1:])
    assert all(v is not None for v in values[lo:hi + 1])


def test_hotsax_planted_discord():
    s = synth("planted-discord", seed=2)
    r = run_detector(RunConfig("hotsax", alpha=3, word_size=5, window_size=100), s)
    assert abs(r.data["discord"]["location"] - s.meta["discord_index"]) <= 100
    brute = run_detector(RunConfig("brute", window_size=100, word_size=5), s)
    assert brute.data["discord"]["location"] == r.data["discord"]["location"]
    assert r.data["discord"]["calls"] < brute.data["discord"]["calls"]


def test_sequitur_two_month_copies_no_alarms():
    s = synth("weekly", {"copies": 2}, seed=0)
    r = run_detector(RunConfig("sequitur"), s)
    assert r.data["alarms"] == []


def test_chaosgame_step_alarm():
    s = synth("step", {"length": 4000, "period": 40}, seed=1)
    D, L, w = 100, 200, 16
    r = run_detector(RunConfig("chaosgame", word_size=4, window_size=w, lead=D), s)
    first = r.data["alarms"][0]["index"]
    step = s.meta["step_index"]
    # Scores sit at the start of the detection window, so the first alarm
    # may lead the step by up to D words plus one window.
    assert step - (D + w) <= first <= step + L + D


def test_chaosgame_alpha_constraint():
    with pytest.raises(ConfigError, match="alpha = 4"):
        RunConfig("chaosgame", alpha=3)


@pytest.mark.parametrize("kw", [dict(algorithm="nope"), dict(format="xml"), dict(lead=0),
                                dict(lead=10, lag=5), dict(r_min=1.5), dict(k=1),
                                dict(k_sigma=0), dict(word_size=5, window_size=64)])
def test_config_errors(kw):
    kw = {"algorithm": "sequitur", **kw}
    with pytest.raises(ConfigError):
        RunConfig(**kw)


def test_from_dict_unknown_key():
    with pytest.raises(ConfigError):
        RunConfig.from_dict({"algorithm": "mk", "colour": "red"})


def test_csv_plot_data_columns():
    s = synth("planted-discord", {"length": 600, "period": 50}, seed=1)
    r = run_detector(RunConfig("brute", window_size=50, word_size=5), s)
    rows = list(csv.reader(io.StringIO(r.to_csv())))
    assert rows[0] == ["index", "value", "score", "alarm"]
    assert len(rows) == len(s) + 1
    flags = np.array([int(row[3]) for row in rows[1:]])
    loc = r.data["discord"]["location"]
    assert flags[loc:loc + 50].all() and flags.sum() == 50
    assert float(rows[1][1]) == s.values[0]


def test_motif_report_times_and_ranks():
    s = synth("planted-motif", seed=0)
    r = run_detector(RunConfig("grammar-motif", alpha=4, word_size=4, window_size=20), s)
    motifs = r.data["motifs"]
    assert 1 <= len(motifs) <= 5
    for m in motifs:
        assert m["times"] == [o * 60.0 for o in m["occurrences"]]
    flags = [int(row.split(",")[3]) for row in r.to_csv().splitlines()[1:]]
    assert max(flags) <= len(motifs)


def test_grammar_dump():
    s = synth("sine", {"length": 500, "period": 50})
    r = run_detector(RunConfig("sequitur", window_size=48, word_size=6), s, dump_grammar=True)
    assert r.grammar.startswith("S ->")
    assert run_detector(RunConfig("mk", window_size=48, word_size=6), s,
                        dump_grammar=True).grammar is None
