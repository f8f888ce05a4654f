import math

import pytest

from saxmine.bench import BenchReport, BenchRow, bench_series, run_bench, size_label


def test_size_labels():
    assert size_label(43200) == "44k"
    assert size_label(86400) == "88k"
    assert size_label(20000) == "20k"


def test_bench_series_identical_inputs():
    a, b = bench_series(5000, seed=1), bench_series(5000, seed=1)
    assert a.shape == (5000,) and (a == b).all()


def test_run_bench_small():
    report = run_bench([1500, 3000], ["sequitur", "hotsax"], reps=2, timeout_s=60)
    assert [(r.algorithm, r.size) for r in report.rows] == [
        ("sequitur", 1500), ("sequitur", 3000), ("hotsax", 1500), ("hotsax", 3000)]
    assert report.row("sequitur", 3000).repetitions == 2
    # Hot SAX runs a single repetition at the largest size.
    assert report.row("hotsax", 3000).repetitions == 1
    assert not report.timed_out
    for algo, ratios in report.scaling().items():
        assert len(ratios) == 1 and ratios[0][2] > 0


def test_run_bench_timeout_not_fatal():
    report = run_bench([30000], ["brute", "sequitur"], reps=1, timeout_s=0.5)
    assert report.row("brute", 30000).status == "timeout"
    assert report.row("sequitur", 30000).status == "ok"
    assert report.timed_out
    assert "timeout" in report.to_csv()


def test_run_bench_validation():
    with pytest.raises(ValueError):
        run_bench([2000, 1000], ["sequitur"])
    with pytest.raises(ValueError):
        run_bench([1000], ["sequitur"], reps=0)


def test_report_summary_and_nan():
    rows = [BenchRow("x", 1000, [1.0, 1.2]), BenchRow("x", 2000, [2.0, 2.4]),
            BenchRow("y", 1000, [1.0]), BenchRow("y", 2000, [], "timeout")]
    rep = BenchReport(rows)
    ratios = rep.scaling()
    assert ratios["x"][0][2] == pytest.approx(2.0)
    assert math.isnan(ratios["y"][0][2])
    assert "x: 2k/1k = 2.00" in rep.summary()
    assert rows[0].std_seconds == pytest.approx(0.141421356, rel=1e-6)
    assert math.isnan(rows[2].std_seconds)
