"""PNG rendering of detector reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

SERIES_COLOR = "tab:blue"
SCORE_COLOR = "tab:green"
ALARM_COLOR = "tab:red"


def plot_report(report, path, *, title: str | None = None, dpi: int = 110) -> None:
    """Draw the series in blue, the score (when any) in green on a second
    axis, alarms as red vertical lines, the discord as a red band and the
    occurrences of every motif as shaded spans."""
    x = report.series.values
    idx = np.arange(x.size)
    fig, ax = plt.subplots(figsize=(12, 4))
    try:
        ax.plot(idx, x, color=SERIES_COLOR, lw=0.8, label="series")
        ax.set_xlabel("index")
        ax.set_ylabel("value", color=SERIES_COLOR)
        data = report.data
        if report.score is not None:
            ax2 = ax.twinx()
            ax2.plot(idx, report.score.scores, color=SCORE_COLOR, lw=0.8, label="score")
            ax2.set_ylabel("score", color=SCORE_COLOR)
        for a in data.get("alarms", []):
            ax.axvline(a["index"], color=ALARM_COLOR, lw=1.0)
        if "discord" in data:
            d = data["discord"]
            ax.axvspan(d["location"], d["location"] + d["length"], color=ALARM_COLOR, alpha=0.25)
        colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
        for rank, m in enumerate(data.get("motifs", [])):
            c = colors[(rank + 3) % len(colors)]
            for o in m["occurrences"]:
                ax.axvspan(o, o + m["length"], color=c, alpha=0.2)
        ax.set_title(title or data["config"]["algorithm"])
        fig.tight_layout()
        fig.savefig(path, dpi=dpi)
    finally:
        plt.close(fig)
