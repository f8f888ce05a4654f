import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from saxmine.exceptions import IngestionError
from saxmine.io import ingest_csv, parse_timestamp, write_series_csv
from saxmine.sax import TimeSeries


@pytest.fixture
def write(tmp_path):
    def _write(text, name="s.csv"):
        p = tmp_path / name
        p.write_text(text)
        return p
    return _write


def test_basic(write):
    s = ingest_csv(write("0,1.0\n60,2.0\n120,3.0\n"))
    assert s.values.tolist() == [1.0, 2.0, 3.0]
    assert s.step_seconds == 60 and s.start_time == 0


def test_missing_row_interpolated(write):
    s = ingest_csv(write("0,1.0\n120,3.0\n180,4.0\n"))
    assert s.values.tolist() == [1.0, 2.0, 3.0, 4.0]
    assert s.meta["interpolated"] == 1


def test_header_skipped(write):
    s = ingest_csv(write("time,value\n0,1\n60,2\n"))
    assert s.values.tolist() == [1.0, 2.0]


def test_named_columns(write):
    s = ingest_csv(write("v,t,junk\n5,0,x\n6,60,y\n"), time_column="t", value_column="v")
    assert s.values.tolist() == [5.0, 6.0]
    with pytest.raises(IngestionError):
        ingest_csv(write("v,t\n5,0\n"), value_column="nope")


def test_single_column_and_comments(write):
    s = ingest_csv(write("# exported\nvalue\n1\n\n2\n3\n"))
    assert s.values.tolist() == [1.0, 2.0, 3.0]
    assert s.times() is None


def test_non_finite_rejected_and_counted(write):
    text = "0,1\n60,nan\n120,3\n180,inf\n240,5\n300,oops\n360,7\n"
    s = ingest_csv(write(text), step_seconds=60)
    assert s.meta["rejected"] == 3
    np.testing.assert_allclose(s.values, [1, 2, 3, 4, 5, 6, 7])


def test_unsorted_within_tolerance_and_duplicates(write):
    s = ingest_csv(write("0,1\n120,3\n60,2\n180,4\n180,9\n"))
    assert s.values.tolist() == [1.0, 2.0, 3.0, 4.0]
    assert s.meta["duplicates"] == 1


def test_backwards_beyond_tolerance(write):
    with pytest.raises(IngestionError, match="goes back"):
        ingest_csv(write("0,1\n60,2\n120,3\n600,4\n60,5\n"))


def test_long_gap_splits(write):
    rows = [f"{60 * i},{i}" for i in range(5)] + [f"{60 * i},{i}" for i in range(30, 40)]
    with pytest.warns(UserWarning, match="split"):
        s = ingest_csv(write("\n".join(rows)), max_gap=10)
    assert s.values.tolist() == list(map(float, range(30, 40)))
    assert len(s.meta["segments"]) == 2 and s.meta["segment"] == 1


def test_iso_timestamps(write):
    s = ingest_csv(write("2024-01-01T00:00:00Z,1\n2024-01-01T00:01:00Z,2\n"))
    assert s.step_seconds == 60
    assert s.start_time == parse_timestamp("2024-01-01T00:00:00+00:00")
    assert parse_timestamp("1970-01-01T00:00:10") == 10.0


@pytest.mark.parametrize("text", ["", "# only a comment\n", "t,v\n", "0,nan\n"])
def test_no_valid_rows(write, text):
    with pytest.raises(IngestionError):
        ingest_csv(write(text))


def test_bad_timestamp_has_row_context(write):
    with pytest.raises(IngestionError, match=":2:"):
        ingest_csv(write("0,1\nyesterday,2\n"))


def test_missing_file(tmp_path):
    with pytest.raises(IngestionError):
        ingest_csv(tmp_path / "absent.csv")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1e12, 1e12, allow_nan=False), min_size=1, max_size=200),
       st.floats(0.5, 1e5), st.floats(0, 2e9), st.booleans())
def test_round_trip(tmp_path_factory, values, step, start, stamped):
    ts = TimeSeries(values, start_time=start if stamped else None,
                    step_seconds=step if stamped else None)
    p = tmp_path_factory.mktemp("rt") / "s.csv"
    write_series_csv(ts, p)
    back = ingest_csv(p, step_seconds=step if stamped else None)
    assert back.values.tolist() == ts.values.tolist()
    if stamped:
        assert back.start_time == ts.start_time
