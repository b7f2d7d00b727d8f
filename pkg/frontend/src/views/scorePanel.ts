import type { ScoreData, StakeholderKey } from "../types.js";
import { STAKEHOLDERS, STAKEHOLDER_LABELS } from "../types.js";
import { areaLabel, esc, formatNumber, levelLabel } from "../labels.js";

function stakeholderTable(score: ScoreData, stakeholder: StakeholderKey): string {
  const block = score.per_stakeholder[stakeholder];
  return `
    <section class="score-block" data-stakeholder="${stakeholder}">
      <h4>${STAKEHOLDER_LABELS[stakeholder]}</h4>
      <table class="score-table">
        <thead>
          <tr><th>Area</th><th>Description</th><th>Level</th>
              <th class="num">Value</th><th class="num">Weight</th><th class="num">Score</th></tr>
        </thead>
        <tbody>
          ${block.lines.map((line) => `
            <tr>
              <td>${areaLabel(line.area)}</td>
              <td>${esc(line.description)}</td>
              <td>${levelLabel(line.level)}</td>
              <td class="num">${line.value}</td>
              <td class="num">${line.weight}</td>
              <td class="num">${line.line_score}</td>
            </tr>
          `).join("")}
          <tr class="total-row">
            <td colspan="4">Total</td>
            <td class="num">${block.weight_sum}</td>
            <td class="num">${block.weighted_total}</td>
          </tr>
        </tbody>
      </table>
      <p class="block-score">Impact score:
        <strong data-field="stakeholder-score" data-stakeholder="${stakeholder}">${block.score}</strong></p>
    </section>
  `;
}

/** Full scoring breakdown for one risk, rendered from a score response. */
export function renderScorePanel(score: ScoreData): string {
  return `
    <div class="score-panel" data-view="score">
      ${STAKEHOLDERS.map((s) => stakeholderTable(score, s)).join("")}
      <dl class="score-summary">
        <dt>Overall impact</dt>
        <dd><strong data-field="overall-impact">${formatNumber(score.overall_impact)}</strong>
            (${levelLabel(score.overall_impact_level)})</dd>
        <dt>Likelihood</dt>
        <dd data-field="likelihood">${levelLabel(score.likelihood_level)}
            (score ${formatNumber(score.likelihood_score)})</dd>
        <dt>Risk value</dt>
        <dd><strong data-field="risk-value">${formatNumber(score.risk_value)}</strong></dd>
        <dt>Risk level</dt>
        <dd><span class="level-badge level-${esc(score.risk_level)}"
                  data-field="risk-level">${levelLabel(score.risk_level)}</span></dd>
      </dl>
    </div>
  `;
}
