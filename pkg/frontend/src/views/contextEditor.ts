import type { ApiErrorDetail, StakeholderKey } from "../types.js";
import { STAKEHOLDERS, STAKEHOLDER_LABELS } from "../types.js";
import { areaLabel, esc } from "../labels.js";

/**
 * Drag-to-rank priority editor. Each stakeholder class shows its areas
 * from most to least important; the weight column is N..1 derived from
 * the current order, so the result is a permutation by construction.
 */
export function renderContextEditor(
  order: Record<StakeholderKey, string[]>,
  errors: ApiErrorDetail[],
  conflict: boolean,
): string {
  return `
    <div class="context-editor" data-view="context-editor">
      <p class="editor-note">Drag areas (or use the arrows) to rank them from most to
        least important. The top area gets the largest weight.</p>
      ${conflict ? `
        <div class="conflict-banner" data-role="conflict-banner">
          The register changed since this page loaded.
          <button type="button" data-action="context-reload">Reload</button>
        </div>
      ` : ""}
      ${errors.length ? `
        <ul class="form-errors" data-role="context-errors">
          ${errors.map((e) => `
            <li>${e.field_path ? `<span class="mono">${esc(e.field_path)}</span>: ` : ""}${esc(e.message)}</li>
          `).join("")}
        </ul>
      ` : ""}
      <div class="rank-columns">
        ${STAKEHOLDERS.map((stakeholder) => {
          const areas = order[stakeholder];
          return `
            <section class="rank-column" data-stakeholder="${stakeholder}">
              <h4>${STAKEHOLDER_LABELS[stakeholder]}</h4>
              <ol class="rank-list">
                ${areas.map((area, index) => `
                  <li class="rank-item" draggable="true"
                      data-stakeholder="${stakeholder}" data-index="${index}">
                    <span class="grip">&#8942;&#8942;</span>
                    <span class="rank-area">${areaLabel(area)}</span>
                    <span class="rank-weight" data-role="weight">${areas.length - index}</span>
                    <span class="rank-buttons">
                      <button type="button" data-action="rank-up" ${index === 0 ? "disabled" : ""}>&uarr;</button>
                      <button type="button" data-action="rank-down" ${index === areas.length - 1 ? "disabled" : ""}>&darr;</button>
                    </span>
                  </li>
                `).join("")}
              </ol>
            </section>
          `;
        }).join("")}
      </div>
      <div class="form-actions">
        <button type="button" data-action="context-save">Save priorities</button>
        <button type="button" data-action="context-cancel">Cancel</button>
      </div>
    </div>
  `;
}
