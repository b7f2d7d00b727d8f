import type { RegisterData, WhatIfData } from "../types.js";
import { STAKEHOLDERS, STAKEHOLDER_LABELS } from "../types.js";
import { areasOf } from "../state.js";
import { areaLabel, esc, formatDelta, formatNumber, levelLabel } from "../labels.js";

/** Pending override edits, kept by the app between renders. */
export interface WhatIfForm {
  valueOverrides: { ref: string; value: number }[];
  likelihood: string | null;
}

export function emptyWhatIfForm(): WhatIfForm {
  return { valueOverrides: [], likelihood: null };
}

function refOptions(register: RegisterData): string {
  const areas = areasOf(register);
  return STAKEHOLDERS.map((stakeholder) =>
    `<optgroup label="${STAKEHOLDER_LABELS[stakeholder]}">` +
    areas[stakeholder].map((area) =>
      `<option value="${stakeholder}.${area}">${STAKEHOLDER_LABELS[stakeholder]} / ${areaLabel(area)}</option>`,
    ).join("") +
    `</optgroup>`,
  ).join("");
}

function resultRows(result: WhatIfData): string {
  const { baseline, modified, delta } = result;
  const stakeholderRows = STAKEHOLDERS.map((stakeholder) => `
    <tr>
      <td>${STAKEHOLDER_LABELS[stakeholder]}</td>
      <td class="num">${baseline.per_stakeholder[stakeholder].score}</td>
      <td class="num" data-field="modified-stakeholder" data-stakeholder="${stakeholder}">
        ${modified.per_stakeholder[stakeholder].score}</td>
      <td class="num delta">${formatDelta(delta.stakeholder_scores[stakeholder])}</td>
    </tr>
  `).join("");
  return `
    ${stakeholderRows}
    <tr class="total-row">
      <td>Overall impact</td>
      <td class="num" data-field="baseline-overall-impact">${formatNumber(baseline.overall_impact)}</td>
      <td class="num" data-field="modified-overall-impact">${formatNumber(modified.overall_impact)}</td>
      <td class="num delta">${formatDelta(delta.overall_impact)}</td>
    </tr>
    <tr>
      <td>Risk value</td>
      <td class="num">${formatNumber(baseline.risk_value)}</td>
      <td class="num" data-field="modified-risk-value">${formatNumber(modified.risk_value)}</td>
      <td class="num delta">${formatDelta(delta.risk_value)}</td>
    </tr>
    <tr>
      <td>Risk level</td>
      <td>${levelLabel(delta.risk_level_from)}</td>
      <td data-field="modified-risk-level">${levelLabel(delta.risk_level_to)}</td>
      <td></td>
    </tr>
  `;
}

/**
 * Override editor plus baseline-vs-modified comparison. Results come
 * straight from the last what-if response and are never persisted until
 * the analyst clicks apply.
 */
export function renderWhatIfPanel(
  register: RegisterData,
  riskId: string,
  form: WhatIfForm,
  result: WhatIfData | null,
): string {
  return `
    <div class="whatif-panel" data-view="whatif">
      <h4>What-if exploration <span class="nonpersistent-tag">not saved</span></h4>
      <div class="whatif-controls">
        <select data-role="whatif-ref">${refOptions(register)}</select>
        <input type="number" min="0" max="100" step="1" value="0" data-role="whatif-value">
        <button type="button" data-action="whatif-add">Add override</button>
      </div>
      ${form.valueOverrides.length ? `
        <ul class="override-list">
          ${form.valueOverrides.map((o, index) => `
            <li>
              <span class="mono">${esc(o.ref)}</span> &rarr; ${o.value}
              <button type="button" data-action="whatif-remove" data-index="${index}">remove</button>
            </li>
          `).join("")}
        </ul>
      ` : `<p class="empty-note">No value overrides added.</p>`}
      <label class="whatif-likelihood">Likelihood override:
        <select data-role="whatif-likelihood">
          <option value="" ${form.likelihood === null ? "selected" : ""}>derived from evidence</option>
          ${["high", "medium", "low"].map((lvl) =>
            `<option value="${lvl}" ${form.likelihood === lvl ? "selected" : ""}>${levelLabel(lvl)}</option>`,
          ).join("")}
        </select>
      </label>
      <div class="whatif-actions">
        <button type="button" data-action="whatif-run">Recompute</button>
        <button type="button" data-action="whatif-clear">Clear</button>
        ${result ? `<button type="button" data-action="whatif-apply">Apply as edit to ${esc(riskId)}</button>` : ""}
      </div>
      ${result ? `
        <table class="whatif-table">
          <thead><tr><th></th><th class="num">Baseline</th><th class="num">Modified</th><th class="num">Delta</th></tr></thead>
          <tbody>${resultRows(result)}</tbody>
        </table>
      ` : ""}
    </div>
  `;
}
