import { ApiClient, ApiError } from "./api.js";
import type {
  ApiErrorDetail,
  ReportRow,
  ScoreData,
  StakeholderKey,
  WhatIfOverrides,
} from "./types.js";
import { STAKEHOLDERS } from "./types.js";
import type { SessionViewState } from "./state.js";
import {
  areasOf,
  draftFromRisk,
  draftProblems,
  draftToPayload,
  emptyDraft,
  initialState,
  moveItem,
  weightsFromOrder,
} from "./state.js";
import { bandForValue, esc, levelLabel, likelihoodHint } from "./labels.js";
import { renderBoard } from "./views/board.js";
import { renderScorePanel } from "./views/scorePanel.js";
import { renderRiskForm, splitFormErrors, type FormErrors } from "./views/riskForm.js";
import { renderContextEditor } from "./views/contextEditor.js";
import { emptyWhatIfForm, renderWhatIfPanel, type WhatIfForm } from "./views/whatif.js";

export interface AppOptions {
  /** Polling interval for register refresh; 0 disables polling. */
  pollMs?: number;
}

const NO_ERRORS: FormErrors = { general: [], byRow: new Map() };

/**
 * Top-level controller: owns the session state, talks to the API, and
 * re-renders into the root element. All displayed scores come from API
 * responses held in the state; render functions only format them.
 */
export class App {
  readonly state: SessionViewState;
  private root: HTMLElement;
  private api: ApiClient;
  private report: ReportRow[] = [];
  private score: ScoreData | null = null;
  private whatIfForm: WhatIfForm = emptyWhatIfForm();
  private formErrors: FormErrors = NO_ERRORS;
  private contextErrors: ApiErrorDetail[] = [];
  private contextConflict = false;
  private deleteArmed: string | null = null;
  private dragFrom: { stakeholder: StakeholderKey; index: number } | null = null;
  private pollMs: number;
  private pollTimer: ReturnType<typeof setInterval> | null = null;
  private refreshing = false;

  constructor(root: HTMLElement, api: ApiClient, options: AppOptions = {}) {
    this.root = root;
    this.api = api;
    this.state = initialState();
    this.pollMs = options.pollMs ?? 5000;
    this.bindEvents();
  }

  async init(): Promise<void> {
    await this.refresh();
    if (this.pollMs > 0) {
      this.pollTimer = setInterval(() => {
        void this.pollTick();
      }, this.pollMs);
    }
  }

  stop(): void {
    if (this.pollTimer !== null) clearInterval(this.pollTimer);
    this.pollTimer = null;
  }

  /** Reload register, ranking, and the selected risk's score from the API. */
  async refresh(): Promise<void> {
    if (this.refreshing) return;
    this.refreshing = true;
    try {
      const [register, report] = await Promise.all([
        this.api.getRegister(),
        this.api.getReport(),
      ]);
      this.state.register = register;
      this.report = report;
      if (this.state.selectedRiskId !== null) {
        if (register.risks.some((r) => r.id === this.state.selectedRiskId)) {
          this.score = await this.api.getScore(this.state.selectedRiskId);
        } else {
          this.state.selectedRiskId = null;
          this.score = null;
          this.state.whatIf = null;
        }
      }
      this.state.error = null;
    } catch (error) {
      this.state.error = describeError(error);
    } finally {
      this.refreshing = false;
    }
    this.render();
  }

  private async pollTick(): Promise<void> {
    if (this.state.dirty || this.state.panel !== "board") return;
    await this.refresh();
  }

  // ----- risk selection and what-if -----

  async selectRisk(riskId: string): Promise<void> {
    this.state.selectedRiskId = riskId;
    this.state.whatIf = null;
    this.whatIfForm = emptyWhatIfForm();
    this.deleteArmed = null;
    try {
      this.score = await this.api.getScore(riskId);
      this.state.error = null;
    } catch (error) {
      this.score = null;
      this.state.error = describeError(error);
    }
    this.render();
  }

  async runWhatIf(): Promise<void> {
    if (this.state.selectedRiskId === null) return;
    const overrides: WhatIfOverrides = {};
    if (this.whatIfForm.valueOverrides.length) {
      overrides.values = {};
      for (const o of this.whatIfForm.valueOverrides) overrides.values[o.ref] = o.value;
    }
    if (this.whatIfForm.likelihood !== null) {
      overrides.likelihood = this.whatIfForm.likelihood;
    }
    try {
      this.state.whatIf = await this.api.whatIf(this.state.selectedRiskId, overrides);
      this.state.error = null;
    } catch (error) {
      this.state.error = describeError(error);
    }
    this.render();
  }

  clearWhatIf(): void {
    this.whatIfForm = emptyWhatIfForm();
    this.state.whatIf = null;
    this.render();
  }

  /** Turn the current what-if overrides into a real edit via PUT. */
  async applyWhatIf(): Promise<void> {
    const register = this.state.register;
    const riskId = this.state.selectedRiskId;
    if (register === null || riskId === null) return;
    const risk = register.risks.find((r) => r.id === riskId);
    if (risk === undefined) return;
    const draft = draftFromRisk(risk);
    for (const o of this.whatIfForm.valueOverrides) {
      const [stakeholder, area] = o.ref.split(".", 2) as [StakeholderKey, string];
      const rating = draft.assessments[stakeholder]?.find((r) => r.area === area);
      if (rating) rating.value = o.value;
    }
    if (this.whatIfForm.likelihood !== null) {
      draft.likelihood.level_override = this.whatIfForm.likelihood;
    }
    try {
      await this.api.updateRisk(riskId, draftToPayload(draft));
      this.state.notice = `applied what-if overrides to '${riskId}'`;
      this.whatIfForm = emptyWhatIfForm();
      this.state.whatIf = null;
      await this.refresh();
    } catch (error) {
      this.state.error = describeError(error);
      this.render();
    }
  }

  // ----- risk form -----

  openNewRisk(): void {
    if (this.state.register === null) return;
    this.state.draft = emptyDraft(this.state.register);
    this.state.panel = "risk";
    this.state.dirty = false;
    this.formErrors = NO_ERRORS;
    this.render();
  }

  openEditRisk(riskId: string): void {
    const risk = this.state.register?.risks.find((r) => r.id === riskId);
    if (risk === undefined) return;
    this.state.draft = draftFromRisk(risk);
    this.state.panel = "risk";
    this.state.dirty = false;
    this.formErrors = NO_ERRORS;
    this.render();
  }

  async saveDraft(): Promise<void> {
    const draft = this.state.draft;
    if (draft === null) return;
    const payload = draftToPayload(draft);
    try {
      const saved = draft.version === null
        ? await this.api.createRisk(payload)
        : await this.api.updateRisk(draft.id, payload);
      this.state.notice = `saved '${saved.id}' (version ${saved.version})`;
      this.state.draft = null;
      this.state.dirty = false;
      this.state.panel = "board";
      this.formErrors = NO_ERRORS;
      this.state.selectedRiskId = saved.id;
      await this.refresh();
    } catch (error) {
      if (error instanceof ApiError) {
        this.formErrors = splitFormErrors(error.errors);
      } else {
        this.state.error = describeError(error);
      }
      this.render();
    }
  }

  closeDraft(): void {
    this.state.draft = null;
    this.state.dirty = false;
    this.state.panel = "board";
    this.formErrors = NO_ERRORS;
    this.render();
  }

  async deleteRisk(riskId: string): Promise<void> {
    try {
      await this.api.deleteRisk(riskId);
      this.state.notice = `removed '${riskId}'`;
      this.deleteArmed = null;
      await this.refresh();
    } catch (error) {
      this.state.error = describeError(error);
      this.render();
    }
  }

  // ----- context editor -----

  openContextEditor(): void {
    if (this.state.register === null) return;
    this.state.contextOrder = areasOf(this.state.register);
    this.state.panel = "context";
    this.contextErrors = [];
    this.contextConflict = false;
    this.render();
  }

  moveArea(stakeholder: StakeholderKey, from: number, to: number): void {
    const order = this.state.contextOrder;
    if (order === null) return;
    order[stakeholder] = moveItem(order[stakeholder], from, to);
    this.state.dirty = true;
    this.render();
  }

  async saveContext(): Promise<void> {
    const register = this.state.register;
    const order = this.state.contextOrder;
    if (register === null || order === null) return;
    const weightings = {} as Record<StakeholderKey, Record<string, number>>;
    for (const stakeholder of STAKEHOLDERS) {
      weightings[stakeholder] = weightsFromOrder(order[stakeholder]);
    }
    const payload = { ...register.context, weightings };
    try {
      await this.api.putContext(payload);
      this.state.notice = "priorities saved";
      this.state.panel = "board";
      this.state.dirty = false;
      this.state.contextOrder = null;
      this.contextErrors = [];
      await this.refresh();
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        this.contextConflict = true;
      } else if (error instanceof ApiError) {
        this.contextErrors = error.errors;
      } else {
        this.state.error = describeError(error);
      }
      this.render();
    }
  }

  closeContextEditor(): void {
    this.state.contextOrder = null;
    this.state.panel = "board";
    this.state.dirty = false;
    this.contextErrors = [];
    this.contextConflict = false;
    this.render();
  }

  async reloadAfterConflict(): Promise<void> {
    await this.refresh();
    this.openContextEditor();
  }

  // ----- rendering -----

  render(): void {
    const register = this.state.register;
    if (register === null) {
      this.root.innerHTML = `
        <div class="loading">${this.state.error ? `<div class="error-bar">${esc(this.state.error)}</div>` : "Loading register..."}</div>
      `;
      return;
    }
    this.root.innerHTML = `
      <header class="app-header">
        <div>
          <h1>${esc(register.context.title)}</h1>
          <p class="context-id mono">${esc(register.context.id)}</p>
        </div>
        <nav>
          <button type="button" data-action="nav-board"
                  class="${this.state.panel === "board" ? "active" : ""}">Risk board</button>
          <button type="button" data-action="nav-new-risk">New risk</button>
          <button type="button" data-action="nav-context"
                  class="${this.state.panel === "context" ? "active" : ""}">Priorities</button>
        </nav>
      </header>
      ${this.state.error ? `<div class="error-bar" data-role="error-bar">${esc(this.state.error)}</div>` : ""}
      ${this.state.notice ? `<div class="notice-bar" data-role="notice-bar">${esc(this.state.notice)}</div>` : ""}
      <main>${this.renderPanel()}</main>
    `;
  }

  private renderPanel(): string {
    const register = this.state.register!;
    if (this.state.panel === "context" && this.state.contextOrder !== null) {
      return renderContextEditor(this.state.contextOrder, this.contextErrors, this.contextConflict);
    }
    if (this.state.panel === "risk" && this.state.draft !== null) {
      return renderRiskForm(register.context, this.state.draft, this.formErrors);
    }
    const selected = this.state.selectedRiskId;
    return `
      <div class="board-layout">
        <section class="board-section">
          ${renderBoard(this.report, selected)}
        </section>
        ${selected !== null && this.score !== null ? `
          <section class="detail-section">
            <div class="detail-head">
              <h3 class="mono">${esc(selected)}</h3>
              <span>
                <button type="button" data-action="risk-edit" data-risk-id="${esc(selected)}">Edit</button>
                <button type="button" data-action="risk-delete" data-risk-id="${esc(selected)}">
                  ${this.deleteArmed === selected ? "Confirm delete" : "Delete"}
                </button>
              </span>
            </div>
            ${renderScorePanel(this.score)}
            ${renderWhatIfPanel(register, selected, this.whatIfForm, this.state.whatIf)}
          </section>
        ` : ""}
      </div>
    `;
  }

  // ----- event wiring -----

  private bindEvents(): void {
    this.root.addEventListener("click", (event) => {
      void this.onClick(event);
    });
    this.root.addEventListener("input", (event) => {
      this.onInput(event);
    });
    this.root.addEventListener("change", (event) => {
      this.onChange(event);
    });
    this.root.addEventListener("dragstart", (event) => {
      const item = (event.target as HTMLElement).closest?.(".rank-item") as HTMLElement | null;
      if (item === null) return;
      this.dragFrom = {
        stakeholder: item.dataset.stakeholder as StakeholderKey,
        index: Number(item.dataset.index),
      };
    });
    this.root.addEventListener("dragover", (event) => {
      if (this.dragFrom !== null) event.preventDefault();
    });
    this.root.addEventListener("drop", (event) => {
      const item = (event.target as HTMLElement).closest?.(".rank-item") as HTMLElement | null;
      if (item === null || this.dragFrom === null) return;
      event.preventDefault();
      const stakeholder = item.dataset.stakeholder as StakeholderKey;
      if (stakeholder === this.dragFrom.stakeholder) {
        this.moveArea(stakeholder, this.dragFrom.index, Number(item.dataset.index));
      }
      this.dragFrom = null;
    });
  }

  private async onClick(event: Event): Promise<void> {
    const target = event.target as HTMLElement;
    const actionEl = target.closest?.("[data-action]") as HTMLElement | null;
    if (actionEl !== null) {
      await this.runAction(actionEl);
      return;
    }
    const row = target.closest?.(".board-row") as HTMLElement | null;
    if (row !== null && row.dataset.riskId) {
      await this.selectRisk(row.dataset.riskId);
    }
  }

  private async runAction(el: HTMLElement): Promise<void> {
    const action = el.dataset.action!;
    this.state.notice = null;
    switch (action) {
      case "nav-board":
        this.state.panel = "board";
        this.render();
        break;
      case "nav-new-risk":
        this.openNewRisk();
        break;
      case "nav-context":
        this.openContextEditor();
        break;
      case "risk-edit":
        this.openEditRisk(el.dataset.riskId!);
        break;
      case "risk-delete": {
        const riskId = el.dataset.riskId!;
        if (this.deleteArmed === riskId) {
          await this.deleteRisk(riskId);
        } else {
          this.deleteArmed = riskId;
          this.render();
        }
        break;
      }
      case "risk-save":
        await this.saveDraft();
        break;
      case "risk-cancel":
        this.closeDraft();
        break;
      case "rank-up":
      case "rank-down": {
        const item = el.closest(".rank-item") as HTMLElement;
        const stakeholder = item.dataset.stakeholder as StakeholderKey;
        const index = Number(item.dataset.index);
        this.moveArea(stakeholder, index, action === "rank-up" ? index - 1 : index + 1);
        break;
      }
      case "context-save":
        await this.saveContext();
        break;
      case "context-cancel":
        this.closeContextEditor();
        break;
      case "context-reload":
        await this.reloadAfterConflict();
        break;
      case "whatif-add": {
        const refEl = this.root.querySelector('[data-role="whatif-ref"]') as HTMLSelectElement;
        const valueEl = this.root.querySelector('[data-role="whatif-value"]') as HTMLInputElement;
        const value = Number(valueEl.value);
        if (Number.isInteger(value) && value >= 0 && value <= 100) {
          this.whatIfForm.valueOverrides = [
            ...this.whatIfForm.valueOverrides.filter((o) => o.ref !== refEl.value),
            { ref: refEl.value, value },
          ];
          this.render();
        }
        break;
      }
      case "whatif-remove": {
        const index = Number(el.dataset.index);
        this.whatIfForm.valueOverrides = this.whatIfForm.valueOverrides.filter((_, i) => i !== index);
        this.render();
        break;
      }
      case "whatif-run":
        await this.runWhatIf();
        break;
      case "whatif-clear":
        this.clearWhatIf();
        break;
      case "whatif-apply":
        await this.applyWhatIf();
        break;
      default:
        break;
    }
  }

  /** Keystroke-level updates: keep the draft in sync and refresh derived labels. */
  private onInput(event: Event): void {
    const target = event.target as HTMLElement;
    const role = target.dataset.role;
    const draft = this.state.draft;
    if (role === undefined) return;
    if (role === "whatif-ref" || role === "whatif-value" || role === "whatif-likelihood") return;
    if (draft === null) return;
    this.state.dirty = true;
    if (role === "risk-id") draft.id = (target as HTMLInputElement).value;
    else if (role === "risk-title") draft.title = (target as HTMLInputElement).value;
    else if (role === "risk-narrative") draft.narrative = (target as HTMLTextAreaElement).value;
    else if (role === "rating-description" || role === "rating-value") {
      const row = target.closest("tr") as HTMLElement;
      const stakeholder = row.dataset.stakeholder as StakeholderKey;
      const index = Number(row.dataset.index);
      const rating = draft.assessments[stakeholder][index];
      if (role === "rating-description") {
        rating.description = (target as HTMLInputElement).value;
      } else {
        const raw = (target as HTMLInputElement).value;
        rating.value = raw === "" ? Number.NaN : Number(raw);
        this.updateBandCell(row, rating.value, rating.level);
        this.updateSaveState();
      }
    }
  }

  /** Committed updates (selects, blur) that change derived display. */
  private onChange(event: Event): void {
    const target = event.target as HTMLElement;
    const role = target.dataset.role;
    const draft = this.state.draft;
    if (role === undefined) return;
    if (role === "whatif-likelihood") {
      const value = (target as HTMLSelectElement).value;
      this.whatIfForm.likelihood = value === "" ? null : value;
      return;
    }
    if (role === "whatif-ref" || role === "whatif-value") return;
    if (draft === null) return;
    this.state.dirty = true;
    if (role === "rating-level") {
      const row = target.closest("tr") as HTMLElement;
      const stakeholder = row.dataset.stakeholder as StakeholderKey;
      const index = Number(row.dataset.index);
      const rating = draft.assessments[stakeholder][index];
      rating.level = (target as HTMLSelectElement).value;
      this.updateBandCell(row, rating.value, rating.level);
    } else if (role === "evidence-capability") {
      draft.likelihood.threat_capability = (target as HTMLSelectElement).value;
      this.updateLikelihoodHint();
    } else if (role === "evidence-motivation") {
      draft.likelihood.motivation = (target as HTMLSelectElement).value;
      this.updateLikelihoodHint();
    } else if (role === "evidence-controls") {
      draft.likelihood.control_effectiveness = (target as HTMLSelectElement).value;
      this.updateLikelihoodHint();
    } else if (role === "evidence-override") {
      const value = (target as HTMLSelectElement).value;
      draft.likelihood.level_override = value === "" ? null : value;
      this.updateLikelihoodHint();
    }
  }

  /** Refresh one row's band label and mismatch warning without re-rendering. */
  private updateBandCell(row: HTMLElement, value: number, level: string): void {
    const register = this.state.register;
    if (register === null) return;
    const band = bandForValue(register.context, value);
    const bandCell = row.querySelector('[data-role="band-label"]');
    if (bandCell) bandCell.textContent = band ? levelLabel(band.level) : "?";
    const warnCell = row.querySelector(".warn-cell");
    const mismatch = band !== null && band.level !== level;
    row.classList.toggle("mismatch", mismatch);
    if (warnCell) {
      warnCell.innerHTML = mismatch
        ? `<span class="reconcile-warning" data-role="mismatch">value falls in ${levelLabel(band!.level)}</span>`
        : "";
    }
  }

  private updateLikelihoodHint(): void {
    const draft = this.state.draft;
    if (draft === null) return;
    const hintEl = this.root.querySelector('[data-role="likelihood-hint"]');
    if (hintEl === null) return;
    const { threat_capability, motivation, control_effectiveness, level_override } = draft.likelihood;
    hintEl.textContent = levelLabel(
      likelihoodHint(threat_capability, motivation, control_effectiveness, level_override),
    );
  }

  private updateSaveState(): void {
    const draft = this.state.draft;
    if (draft === null) return;
    const button = this.root.querySelector('[data-action="risk-save"]') as HTMLButtonElement | null;
    if (button === null) return;
    button.disabled = draftProblems(draft).length > 0;
  }
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) return error.message;
  if (error instanceof Error) return error.message;
  return String(error);
}
