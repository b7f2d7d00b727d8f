import type { ReportRow } from "../types.js";
import { esc, formatNumber, levelLabel } from "../labels.js";

/** Ranked register table. Every number is taken verbatim from the report rows. */
export function renderBoard(rows: ReportRow[], selectedRiskId: string | null): string {
  if (rows.length === 0) {
    return `<div class="empty-note">No risks in the register yet. Add one to see the ranking.</div>`;
  }
  return `
    <table class="board-table" data-view="board">
      <thead>
        <tr>
          <th>Rank</th><th>Risk</th><th>Title</th>
          <th class="num">Impact</th><th>Likelihood</th>
          <th class="num">Risk value</th><th>Risk level</th>
        </tr>
      </thead>
      <tbody>
        ${rows.map((row) => `
          <tr class="board-row ${row.risk_id === selectedRiskId ? "selected" : ""}"
              data-risk-id="${esc(row.risk_id)}">
            <td class="num">${row.rank}</td>
            <td class="mono">${esc(row.risk_id)}</td>
            <td>${esc(row.title)}</td>
            <td class="num" data-field="impact">${formatNumber(row.impact_score)}</td>
            <td>${levelLabel(row.likelihood_level)} (${formatNumber(row.likelihood_score)})</td>
            <td class="num" data-field="risk-value">${formatNumber(row.risk_value)}</td>
            <td><span class="level-badge level-${esc(row.risk_level)}" data-field="risk-level">${levelLabel(row.risk_level)}</span></td>
          </tr>
        `).join("")}
      </tbody>
    </table>
  `;
}
