import type { ApiErrorDetail, ContextData, StakeholderKey } from "../types.js";
import { STAKEHOLDERS, STAKEHOLDER_LABELS } from "../types.js";
import type { RiskDraft } from "../state.js";
import { draftProblems } from "../state.js";
import { areaLabel, bandForValue, esc, levelLabel, likelihoodHint } from "../labels.js";

const LEVELS = ["minor", "moderate", "significant"];
const CAPABILITIES = ["sufficient", "insufficient"];
const MOTIVATIONS = ["high", "low"];
const CONTROLS = ["effective", "partially_effective", "ineffective"];

/** Errors a save attempt returned, mapped onto rating rows where possible. */
export interface FormErrors {
  general: string[];
  byRow: Map<string, string>; // "stakeholder[index]" -> message
}

export function splitFormErrors(errors: ApiErrorDetail[]): FormErrors {
  const out: FormErrors = { general: [], byRow: new Map() };
  for (const error of errors) {
    const match = /assessments\.(\w+)\[(\d+)\]/.exec(error.field_path ?? "");
    if (match) {
      out.byRow.set(`${match[1]}[${match[2]}]`, error.message);
    } else {
      out.general.push(error.message);
    }
  }
  return out;
}

function options(values: string[], selected: string): string {
  return values.map((v) =>
    `<option value="${v}" ${v === selected ? "selected" : ""}>${levelLabel(v)}</option>`,
  ).join("");
}

function ratingRow(
  context: ContextData,
  stakeholder: StakeholderKey,
  index: number,
  draft: RiskDraft,
  errors: FormErrors,
): string {
  const rating = draft.assessments[stakeholder][index];
  const band = bandForValue(context, rating.value);
  const mismatch = band !== null && band.level !== rating.level;
  const rowError = errors.byRow.get(`${stakeholder}[${index}]`);
  return `
    <tr data-stakeholder="${stakeholder}" data-index="${index}"
        class="${mismatch ? "mismatch" : ""}">
      <td>${areaLabel(rating.area)}</td>
      <td><input type="text" data-role="rating-description" value="${esc(rating.description)}"></td>
      <td>
        <select data-role="rating-level">${options(LEVELS, rating.level)}</select>
      </td>
      <td><input type="number" min="0" max="100" step="1" data-role="rating-value"
                 value="${rating.value}"></td>
      <td class="band-cell" data-role="band-label">${band ? levelLabel(band.level) : "?"}</td>
      <td class="warn-cell">
        ${mismatch ? `<span class="reconcile-warning" data-role="mismatch">value falls in ${levelLabel(band!.level)}</span>` : ""}
        ${rowError ? `<span class="field-error">${esc(rowError)}</span>` : ""}
      </td>
    </tr>
  `;
}

/**
 * Full assessment form: one rating row per impact area across all three
 * stakeholder classes, plus the likelihood evidence selectors. The band
 * column is looked up from the scale the server sent; the likelihood line
 * is a preview of what the server will derive.
 */
export function renderRiskForm(
  context: ContextData,
  draft: RiskDraft,
  errors: FormErrors,
): string {
  const problems = draftProblems(draft);
  const hint = likelihoodHint(
    draft.likelihood.threat_capability,
    draft.likelihood.motivation,
    draft.likelihood.control_effectiveness,
    draft.likelihood.level_override,
  );
  const isNew = draft.version === null;
  return `
    <form class="risk-form" data-view="risk-form">
      <div class="form-head">
        <label>Risk id
          <input type="text" data-role="risk-id" value="${esc(draft.id)}" ${isNew ? "" : "readonly"}>
        </label>
        <label>Title
          <input type="text" data-role="risk-title" value="${esc(draft.title)}">
        </label>
        ${isNew ? "" : `<span class="version-tag">editing version ${draft.version}</span>`}
      </div>
      <label class="narrative-label">Narrative
        <textarea data-role="risk-narrative" rows="3">${esc(draft.narrative)}</textarea>
      </label>
      ${errors.general.length ? `
        <ul class="form-errors" data-role="form-errors">
          ${errors.general.map((m) => `<li>${esc(m)}</li>`).join("")}
        </ul>
      ` : ""}
      ${STAKEHOLDERS.map((stakeholder) => `
        <section class="assessment-block">
          <h4>${STAKEHOLDER_LABELS[stakeholder]}</h4>
          <table class="rating-table">
            <thead>
              <tr><th>Area</th><th>Description</th><th>Level</th>
                  <th>Value</th><th>Band</th><th></th></tr>
            </thead>
            <tbody>
              ${draft.assessments[stakeholder].map((_, index) =>
                ratingRow(context, stakeholder, index, draft, errors)).join("")}
            </tbody>
          </table>
        </section>
      `).join("")}
      <section class="likelihood-block">
        <h4>Likelihood evidence</h4>
        <label>Threat capability
          <select data-role="evidence-capability">${options(CAPABILITIES, draft.likelihood.threat_capability)}</select>
        </label>
        <label>Motivation
          <select data-role="evidence-motivation">${options(MOTIVATIONS, draft.likelihood.motivation)}</select>
        </label>
        <label>Control effectiveness
          <select data-role="evidence-controls">${options(CONTROLS, draft.likelihood.control_effectiveness)}</select>
        </label>
        <label>Override
          <select data-role="evidence-override">
            <option value="" ${draft.likelihood.level_override === null ? "selected" : ""}>none</option>
            ${["high", "medium", "low"].map((lvl) =>
              `<option value="${lvl}" ${draft.likelihood.level_override === lvl ? "selected" : ""}>${levelLabel(lvl)}</option>`,
            ).join("")}
          </select>
        </label>
        <p class="likelihood-hint">Derived likelihood:
          <strong data-role="likelihood-hint">${levelLabel(hint)}</strong></p>
      </section>
      <div class="form-actions">
        <button type="button" data-action="risk-save" ${problems.length ? "disabled" : ""}>
          ${isNew ? "Add risk" : "Save changes"}
        </button>
        <button type="button" data-action="risk-cancel">Cancel</button>
        ${problems.length ? `
          <ul class="save-blockers" data-role="save-blockers">
            ${problems.map((p) => `<li>${esc(p)}</li>`).join("")}
          </ul>
        ` : ""}
      </div>
    </form>
  `;
}
