import type {
  RatingData,
  RegisterData,
  RiskData,
  StakeholderKey,
  WhatIfData,
} from "./types.js";
import { STAKEHOLDERS } from "./types.js";

export type PanelName = "board" | "risk" | "context";

/** Editable copy of one risk, detached from the loaded register snapshot. */
export interface RiskDraft {
  id: string;
  title: string;
  narrative: string;
  identified_at: string | null;
  version: number | null; // null while the risk has never been saved
  assessments: Record<StakeholderKey, RatingData[]>;
  likelihood: {
    threat_capability: string;
    motivation: string;
    control_effectiveness: string;
    historical_notes: string;
    level_override: string | null;
  };
}

export interface SessionViewState {
  register: RegisterData | null;
  panel: PanelName;
  selectedRiskId: string | null;
  draft: RiskDraft | null;
  contextOrder: Record<StakeholderKey, string[]> | null;
  whatIf: WhatIfData | null;
  dirty: boolean;
  error: string | null;
  notice: string | null;
}

export function initialState(): SessionViewState {
  return {
    register: null,
    panel: "board",
    selectedRiskId: null,
    draft: null,
    contextOrder: null,
    whatIf: null,
    dirty: false,
    error: null,
    notice: null,
  };
}

/** Area names per stakeholder, in the priority order the register carries. */
export function areasOf(register: RegisterData): Record<StakeholderKey, string[]> {
  const out = {} as Record<StakeholderKey, string[]>;
  for (const stakeholder of STAKEHOLDERS) {
    out[stakeholder] = Object.keys(register.context.weightings[stakeholder]);
  }
  return out;
}

export function draftFromRisk(risk: RiskData): RiskDraft {
  return {
    id: risk.id,
    title: risk.title,
    narrative: risk.narrative,
    identified_at: risk.identified_at,
    version: risk.version,
    assessments: {
      government: risk.assessments.government.map((r) => ({ ...r })),
      end_users: risk.assessments.end_users.map((r) => ({ ...r })),
      relying_parties: risk.assessments.relying_parties.map((r) => ({ ...r })),
    },
    likelihood: { ...risk.likelihood },
  };
}

export function emptyDraft(register: RegisterData): RiskDraft {
  const assessments = {} as Record<StakeholderKey, RatingData[]>;
  const areas = areasOf(register);
  for (const stakeholder of STAKEHOLDERS) {
    assessments[stakeholder] = areas[stakeholder].map((area) => ({
      area,
      level: "minor",
      value: 0,
      description: "",
    }));
  }
  return {
    id: "",
    title: "",
    narrative: "",
    identified_at: null,
    version: null,
    assessments,
    likelihood: {
      threat_capability: "insufficient",
      motivation: "low",
      control_effectiveness: "effective",
      historical_notes: "",
      level_override: null,
    },
  };
}

/** Wire payload for POST/PUT /risks built from a draft. */
export function draftToPayload(draft: RiskDraft): Record<string, unknown> {
  const payload: Record<string, unknown> = {
    id: draft.id.trim(),
    title: draft.title.trim(),
    narrative: draft.narrative,
    assessments: draft.assessments,
    likelihood: draft.likelihood,
  };
  if (draft.identified_at !== null) payload.identified_at = draft.identified_at;
  if (draft.version !== null) payload.version = draft.version;
  return payload;
}

/**
 * What still blocks saving a draft: blank id/title or rating values that
 * are not integers in 0-100. The server re-validates everything on save;
 * this only keeps obviously unsaveable drafts from producing round trips.
 */
export function draftProblems(draft: RiskDraft): string[] {
  const problems: string[] = [];
  if (!draft.id.trim()) problems.push("risk id is required");
  if (!draft.title.trim()) problems.push("title is required");
  for (const stakeholder of STAKEHOLDERS) {
    for (const rating of draft.assessments[stakeholder]) {
      if (!Number.isInteger(rating.value) || rating.value < 0 || rating.value > 100) {
        problems.push(`${stakeholder}.${rating.area}: value must be an integer 0-100`);
      }
    }
  }
  return problems;
}

/** Move one entry inside a ranking list; used by the drag-to-rank editor. */
export function moveItem<T>(items: T[], from: number, to: number): T[] {
  if (from === to || from < 0 || to < 0 || from >= items.length || to >= items.length) {
    return items.slice();
  }
  const out = items.slice();
  const [taken] = out.splice(from, 1);
  out.splice(to, 0, taken);
  return out;
}

/** Weights derived from a priority order: first item gets N, last gets 1. */
export function weightsFromOrder(order: string[]): Record<string, number> {
  const out: Record<string, number> = {};
  order.forEach((area, index) => {
    out[area] = order.length - index;
  });
  return out;
}
