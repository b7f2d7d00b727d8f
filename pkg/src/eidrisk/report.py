"""Rendering of scores and register reports.

Every output format (JSON payloads, plain-text tables, markdown, CSV) is
produced here from the same scored data, so the CLI and the HTTP service
can never drift apart. All renderers are deterministic: given the same
register they emit byte-identical output.
"""
from __future__ import annotations

import csv
import io
from typing import Sequence

from .model import (
    AreaName,
    ImpactScale,
    RiskRecord,
    Stakeholder,
    reconcile_risk,
)
from .scoring import RiskScore, WhatIfResult, rank_register, score_risk
from .store import RegisterDocument

_STAKEHOLDER_LABELS = {
    Stakeholder.GOVERNMENT: "Government",
    Stakeholder.END_USERS: "End-users",
    Stakeholder.RELYING_PARTIES: "Relying parties",
}


def stakeholder_label(stakeholder: Stakeholder) -> str:
    return _STAKEHOLDER_LABELS[stakeholder]


def area_label(area: AreaName) -> str:
    return area.value.capitalize()


def level_label(level) -> str:
    return level.value.replace("_", " ").capitalize()


def fmt_number(x: float | int) -> str:
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    return str(x)


def _num(x: float | int) -> float | int:
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return x


# ---------------------------------------------------------------------------
# JSON payloads
# ---------------------------------------------------------------------------

def risk_score_to_dict(score: RiskScore) -> dict:
    return {
        "per_stakeholder": {
            stakeholder.value: {
                "lines": [
                    {
                        "area": line.area.value,
                        "description": line.description,
                        "level": line.declared_level.value,
                        "value": line.value,
                        "weight": line.weight,
                        "line_score": line.line_score,
                    }
                    for line in breakdown.lines
                ],
                "weighted_total": breakdown.weighted_total,
                "weight_sum": breakdown.weight_sum,
                "score": breakdown.score,
            }
            for stakeholder, breakdown in score.per_stakeholder.items()
        },
        "overall_impact": score.overall_impact,
        "overall_impact_level": score.overall_impact_level.value,
        "likelihood_level": score.likelihood_level.value,
        "likelihood_score": _num(score.likelihood_score),
        "risk_value": _num(score.risk_value),
        "risk_level": score.risk_level.value,
    }


def what_if_to_dict(result: WhatIfResult) -> dict:
    return {
        "baseline": risk_score_to_dict(result.baseline),
        "modified": risk_score_to_dict(result.modified),
        "delta": {
            "stakeholder_scores": {
                stakeholder.value: diff
                for stakeholder, diff in result.delta.stakeholder_scores.items()
            },
            "overall_impact": result.delta.overall_impact,
            "risk_value": _num(result.delta.risk_value),
            "risk_level_from": result.delta.risk_level_from.value,
            "risk_level_to": result.delta.risk_level_to.value,
        },
    }


def ranking_rows(doc: RegisterDocument) -> list[dict]:
    ranked = rank_register(doc.risks, doc.context)
    titles = {risk.id: risk.title for risk in doc.risks}
    rows = []
    for position, (risk_id, score) in enumerate(ranked, start=1):
        rows.append({
            "rank": position,
            "risk_id": risk_id,
            "title": titles[risk_id],
            "impact_score": score.overall_impact,
            "impact_level": score.overall_impact_level.value,
            "likelihood_level": score.likelihood_level.value,
            "likelihood_score": _num(score.likelihood_score),
            "risk_value": _num(score.risk_value),
            "risk_level": score.risk_level.value,
        })
    return rows


def report_json(doc: RegisterDocument) -> list[dict]:
    """The report payload: ranked rows, highest risk first."""
    return ranking_rows(doc)


# ---------------------------------------------------------------------------
# Plain text
# ---------------------------------------------------------------------------

def _layout(rows: Sequence[Sequence[str]], right: set[int]) -> list[str]:
    """Pad cells into aligned columns separated by two spaces."""
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for row in rows:
        cells = [cell.rjust(widths[i]) if i in right else cell.ljust(widths[i])
                 for i, cell in enumerate(row)]
        lines.append("  ".join(cells).rstrip())
    return lines


def _score_footer(score: RiskScore) -> list[str]:
    return [
        f"Overall impact: {score.overall_impact} ({level_label(score.overall_impact_level)})",
        f"Likelihood: {level_label(score.likelihood_level)} "
        f"(score {fmt_number(score.likelihood_score)})",
        f"Risk value: {fmt_number(score.risk_value)}",
        f"Risk level: {level_label(score.risk_level)}",
    ]


def _mismatch_notes(risk: RiskRecord, scale: ImpactScale,
                    stakeholder: Stakeholder) -> list[str]:
    notes = []
    for mismatch in reconcile_risk(risk, scale):
        if mismatch.area.stakeholder is not stakeholder:
            continue
        notes.append(
            f"Note: {area_label(mismatch.area.name)} declared "
            f"{mismatch.declared.value} but its value falls in "
            f"{mismatch.derived.value}.")
    return notes


def render_score_text(risk: RiskRecord, score: RiskScore,
                      scale: ImpactScale) -> str:
    lines = [f"{risk.id}: {risk.title}", ""]
    for stakeholder, breakdown in score.per_stakeholder.items():
        rows: list[list[str]] = [["Area", "Description", "Level", "Value", "Weight", "Score"]]
        for line in breakdown.lines:
            rows.append([
                area_label(line.area),
                line.description,
                level_label(line.declared_level),
                str(line.value),
                str(line.weight),
                str(line.line_score),
            ])
        rows.append(["Total", "", "", "", str(breakdown.weight_sum),
                     str(breakdown.weighted_total)])
        lines.append(stakeholder_label(stakeholder))
        lines.extend("  " + row for row in _layout(rows, right={3, 4, 5}))
        lines.append(f"  Impact score: {breakdown.score}")
        lines.extend("  " + note for note in _mismatch_notes(risk, scale, stakeholder))
        lines.append("")
    lines.extend(_score_footer(score))
    return "\n".join(lines) + "\n"


def render_ranking_table(doc: RegisterDocument) -> str:
    rows: list[list[str]] = [["Rank", "Risk", "Impact", "Level", "Likelihood",
                              "L-score", "Risk value", "Risk level", "Title"]]
    for entry in ranking_rows(doc):
        rows.append([
            str(entry["rank"]),
            entry["risk_id"],
            str(entry["impact_score"]),
            entry["impact_level"],
            entry["likelihood_level"],
            fmt_number(entry["likelihood_score"]),
            fmt_number(entry["risk_value"]),
            entry["risk_level"],
            entry["title"],
        ])
    return "\n".join(_layout(rows, right={0, 2, 5, 6})) + "\n"


def render_ranking_csv(doc: RegisterDocument) -> str:
    buffer = io.StringIO()
    fields = ["rank", "risk_id", "title", "impact_score", "impact_level",
              "likelihood_level", "likelihood_score", "risk_value", "risk_level"]
    writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for entry in ranking_rows(doc):
        writer.writerow({field: entry[field] for field in fields})
    return buffer.getvalue()


# ---------------------------------------------------------------------------
# Markdown
# ---------------------------------------------------------------------------

def _md_table(header: Sequence[str], aligns: Sequence[str],
              rows: Sequence[Sequence[str]]) -> list[str]:
    rules = {"left": ":--", "right": "--:"}
    out = ["| " + " | ".join(header) + " |",
           "|" + "|".join(rules[a] for a in aligns) + "|"]
    out.extend("| " + " | ".join(row) + " |" for row in rows)
    return out


def report_markdown(doc: RegisterDocument) -> str:
    lines = [f"# Risk register report", "",
             f"Context: {doc.context.id} ({doc.context.title})", ""]

    lines.append("## Ranking")
    lines.append("")
    summary_rows = [
        [str(e["rank"]), e["risk_id"], e["title"], str(e["impact_score"]),
         level_label_from(e["impact_level"]),
         f"{level_label_from(e['likelihood_level'])} ({fmt_number(e['likelihood_score'])})",
         fmt_number(e["risk_value"]), level_label_from(e["risk_level"])]
        for e in ranking_rows(doc)
    ]
    lines.extend(_md_table(
        ["Rank", "Risk", "Title", "Impact", "Level", "Likelihood", "Risk value",
         "Risk level"],
        ["right", "left", "left", "right", "left", "left", "right", "left"],
        summary_rows))
    lines.append("")

    for risk in doc.risks:
        score = score_risk(risk, doc.context)
        lines.append(f"## {risk.id}: {risk.title}")
        lines.append("")
        if risk.narrative:
            lines.append(risk.narrative)
            lines.append("")
        for stakeholder, breakdown in score.per_stakeholder.items():
            lines.append(f"### {stakeholder_label(stakeholder)}")
            lines.append("")
            body = [
                [area_label(line.area), line.description,
                 level_label(line.declared_level), str(line.value),
                 str(line.weight), str(line.line_score)]
                for line in breakdown.lines
            ]
            body.append(["Total", "", "", "", str(breakdown.weight_sum),
                         str(breakdown.weighted_total)])
            lines.extend(_md_table(
                ["Area", "Description", "Level", "Value", "Weight", "Score"],
                ["left", "left", "left", "right", "right", "right"],
                body))
            lines.append("")
            lines.append(f"Impact score: **{breakdown.score}**")
            notes = _mismatch_notes(risk, doc.context.impact_scale, stakeholder)
            lines.extend([""] + notes if notes else [])
            lines.append("")
        lines.extend([
            f"Overall impact: **{score.overall_impact}** "
            f"({level_label(score.overall_impact_level)})",
            f"Likelihood: {level_label(score.likelihood_level)} "
            f"(score {fmt_number(score.likelihood_score)})",
            f"Risk value: **{fmt_number(score.risk_value)}**, "
            f"{level_label(score.risk_level)}",
            "",
        ])
    return "\n".join(lines).rstrip("\n") + "\n"


def level_label_from(value: str) -> str:
    return value.replace("_", " ").capitalize()
