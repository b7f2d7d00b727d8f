// Shapes of the JSON documents the assessment API serves. Field names
// mirror the wire format exactly; nothing here is recomputed client-side.

export type StakeholderKey = "government" | "end_users" | "relying_parties";

export const STAKEHOLDERS: StakeholderKey[] = [
  "government",
  "end_users",
  "relying_parties",
];

export const STAKEHOLDER_LABELS: Record<StakeholderKey, string> = {
  government: "Government",
  end_users: "End-users",
  relying_parties: "Relying parties",
};

export interface ScaleBand {
  level: string;
  lower: number;
  upper: number | null;
}

export interface ThresholdBand {
  level: string;
  upper: number | null;
}

export interface ContextData {
  id: string;
  title: string;
  scope_notes: string;
  schema_version: number;
  weightings: Record<StakeholderKey, Record<string, number>>;
  impact_scale: { bands: ScaleBand[] };
  likelihood_table: Record<string, number>;
  risk_thresholds: { bands: ThresholdBand[] };
}

export interface RatingData {
  area: string;
  level: string;
  value: number;
  description: string;
}

export interface LikelihoodData {
  threat_capability: string;
  motivation: string;
  control_effectiveness: string;
  historical_notes: string;
  level_override: string | null;
}

export interface RiskData {
  id: string;
  title: string;
  narrative: string;
  technique: string;
  author: string;
  identified_at: string;
  version: number;
  assessments: Record<StakeholderKey, RatingData[]>;
  likelihood: LikelihoodData;
}

export interface RegisterData {
  schema_version: number;
  context: ContextData;
  risks: RiskData[];
}

export interface ScoreLine {
  area: string;
  description: string;
  level: string;
  value: number;
  weight: number;
  line_score: number;
}

export interface StakeholderScore {
  lines: ScoreLine[];
  weighted_total: number;
  weight_sum: number;
  score: number;
}

export interface ScoreData {
  per_stakeholder: Record<StakeholderKey, StakeholderScore>;
  overall_impact: number;
  overall_impact_level: string;
  likelihood_level: string;
  likelihood_score: number;
  risk_value: number;
  risk_level: string;
}

export interface WhatIfData {
  baseline: ScoreData;
  modified: ScoreData;
  delta: {
    stakeholder_scores: Record<StakeholderKey, number>;
    overall_impact: number;
    risk_value: number;
    risk_level_from: string;
    risk_level_to: string;
  };
}

export interface ReportRow {
  rank: number;
  risk_id: string;
  title: string;
  impact_score: number;
  impact_level: string;
  likelihood_level: string;
  likelihood_score: number;
  risk_value: number;
  risk_level: string;
}

export interface WhatIfOverrides {
  values?: Record<string, number>;
  weights?: Partial<Record<StakeholderKey, Record<string, number>>>;
  likelihood?: string;
}

export interface ApiErrorDetail {
  code: string;
  message: string;
  field_path: string | null;
}
