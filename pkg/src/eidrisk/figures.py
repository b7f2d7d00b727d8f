"""Figure rendering for register reports.

Figures are built on explicit Figure objects (no pyplot, no global state)
so rendering is safe from library code and repeated calls cannot leak
artists between reports.
"""
from __future__ import annotations

from pathlib import Path

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure
from matplotlib.patches import Patch

from .model import AREAS, ImpactArea, RiskLevel, Stakeholder
from .report import area_label, level_label, ranking_rows, stakeholder_label
from .store import RegisterDocument

_LEVEL_COLORS = {
    RiskLevel.LOW.value: "#4c9f70",
    RiskLevel.ELEVATED.value: "#e8a13a",
    RiskLevel.SIGNIFICANT.value: "#c0392b",
}


def ranking_figure(doc: RegisterDocument) -> Figure:
    """Horizontal bars of risk value per risk, highest ranked at the top."""
    rows = ranking_rows(doc)
    fig = Figure(figsize=(8, max(2.5, 0.6 * len(rows) + 1.5)))
    ax = fig.add_subplot(111)
    positions = range(len(rows))
    values = [row["risk_value"] for row in rows]
    colors = [_LEVEL_COLORS[row["risk_level"]] for row in rows]
    ax.barh(positions, values, color=colors, edgecolor="black", linewidth=0.4)
    ax.set_yticks(list(positions))
    ax.set_yticklabels([row["risk_id"] for row in rows])
    ax.invert_yaxis()
    for band in doc.context.risk_thresholds.bands:
        if band.upper is not None:
            ax.axvline(band.upper, color="gray", linestyle="--", linewidth=0.8)
    handles = [Patch(color=color, label=level_label(RiskLevel(value)))
               for value, color in _LEVEL_COLORS.items()]
    ax.legend(handles=handles, loc="lower right", frameon=False)
    ax.set_xlabel("Risk value")
    ax.set_title("Risk ranking")
    fig.tight_layout()
    return fig


def impact_heatmap_figure(doc: RegisterDocument) -> Figure:
    """Impact rating values per risk across all areas, grouped by stakeholder."""
    columns = [(stakeholder, area)
               for stakeholder in Stakeholder for area in AREAS[stakeholder]]
    rows = ranking_rows(doc)
    order = [row["risk_id"] for row in rows]
    risks = {risk.id: risk for risk in doc.risks}
    matrix = [
        [risks[risk_id].rating(ImpactArea(stakeholder, area)).value
         for stakeholder, area in columns]
        for risk_id in order
    ]
    fig = Figure(figsize=(max(8, 0.55 * len(columns)), max(3, 0.5 * len(order) + 2)))
    ax = fig.add_subplot(111)
    image = ax.imshow(matrix, cmap="YlOrRd", vmin=0, vmax=100, aspect="auto")
    ax.set_xticks(range(len(columns)))
    ax.set_xticklabels(
        [f"{stakeholder_label(s)}\n{area_label(a)}" for s, a in columns],
        fontsize=7, rotation=45, ha="right")
    ax.set_yticks(range(len(order)))
    ax.set_yticklabels(order)
    boundaries = []
    count = 0
    for stakeholder in Stakeholder:
        count += len(AREAS[stakeholder])
        boundaries.append(count - 0.5)
    for boundary in boundaries[:-1]:
        ax.axvline(boundary, color="black", linewidth=1.2)
    fig.colorbar(image, ax=ax, label="Impact value")
    ax.set_title("Impact ratings by stakeholder and area")
    fig.tight_layout()
    return fig


def render_figures(doc: RegisterDocument, out_dir: Path | str) -> list[Path]:
    """Write all report figures as PNG files and return their paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, fig in [("risk_ranking.png", ranking_figure(doc)),
                      ("impact_heatmap.png", impact_heatmap_figure(doc))]:
        path = out_dir / name
        FigureCanvasAgg(fig)
        fig.savefig(path, dpi=150)
        written.append(path)
    return written
