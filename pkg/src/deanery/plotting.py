"""Figure rendering for the CLI report path.

The core emits plain data; these helpers draw it to image files next to
the delimited output. Headless backend, no display required.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.dates as mdates  # noqa: E402
import matplotlib.pyplot as plt  # noqa: E402

from .labels import EN, RU, SERIES_HEADERS, mastery_label, percent_label  # noqa: E402
from .monitor import DebtSeriesPoint, MasteryRow  # noqa: E402

MASTERY_COLORS = {"red": "#d9534f", "yellow": "#f0ad4e", "green": "#5cb85c"}


def render_debt_series(points: list[DebtSeriesPoint], path: Path | str,
                       locale: str = RU) -> None:
    """Line chart of total debts over time."""
    fig, ax = plt.subplots(figsize=(9, 4.5))
    ax.plot([p.date for p in points], [p.total_debts for p in points],
            marker="o", markersize=3, linewidth=1.5, color="#31708f")
    date_label, debts_label = SERIES_HEADERS[locale]
    ax.set_xlabel(date_label)
    ax.set_ylabel(debts_label)
    ax.set_title("Академические задолженности" if locale == RU else "Academic debts")
    ax.grid(True, linewidth=0.3, alpha=0.6)
    ax.xaxis.set_major_formatter(mdates.DateFormatter("%d.%m.%Y" if locale == RU else "%Y-%m-%d"))
    fig.autofmt_xdate()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_mastery(rows: list[MasteryRow], path: Path | str, locale: str = RU) -> None:
    """Horizontal bars, one per entry, colored by the mastery class."""
    rows = list(rows)
    if not rows:
        fig, ax = plt.subplots(figsize=(8, 2))
        ax.set_axis_off()
        ax.text(0.5, 0.5, "нет данных" if locale == RU else "no data",
                ha="center", va="center")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        return
    labels_ = [f"{row.group} s{row.semester} {mastery_label(row, locale)}" for row in rows]
    values = [float(row.percent) for row in rows]
    colors = [MASTERY_COLORS[row.color.value] for row in rows]
    height = max(2.0, 0.32 * len(rows) + 1.2)
    fig, ax = plt.subplots(figsize=(11, height))
    positions = range(len(rows), 0, -1)
    ax.barh(list(positions), values, color=colors, edgecolor="none")
    ax.set_yticks(list(positions))
    ax.set_yticklabels(labels_, fontsize=8)
    ax.set_xlabel("% не сдано" if locale == RU else "% not passed")
    ax.set_xlim(0, 100)
    for pos, row in zip(positions, rows):
        ax.text(float(row.percent) + 1, pos, percent_label(row.not_passed, row.total, locale),
                va="center", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
