// Hand-built API payloads for stub-backed tests. The scoring numbers in
// here are deliberately inconsistent with the ratings: if the client ever
// computed scores locally, the DOM would disagree with these values and
// the stub tests would catch it.

import type {
  ContextData,
  RatingData,
  RegisterData,
  ReportRow,
  RiskData,
  ScoreData,
  StakeholderKey,
  WhatIfData,
} from "../src/types.js";

export const GOV_AREAS = [
  "rights", "reputation", "political", "economic", "operational", "social", "physical",
];
export const EU_AREAS = [
  "rights", "privacy", "psychological", "economic", "social", "physical",
];
export const RP_AREAS = [
  "economic", "reputation", "operational", "social", "physical",
];

function weights(areas: string[]): Record<string, number> {
  const out: Record<string, number> = {};
  areas.forEach((area, i) => {
    out[area] = areas.length - i;
  });
  return out;
}

export function makeContext(): ContextData {
  return {
    id: "default",
    title: "Stub register",
    scope_notes: "",
    schema_version: 1,
    weightings: {
      government: weights(GOV_AREAS),
      end_users: weights(EU_AREAS),
      relying_parties: weights(RP_AREAS),
    },
    impact_scale: {
      bands: [
        { level: "minor", lower: 0, upper: 30 },
        { level: "moderate", lower: 31, upper: 69 },
        { level: "significant", lower: 70, upper: 100 },
      ],
    },
    likelihood_table: { high: 1, medium: 0.5, low: 0.1 },
    risk_thresholds: {
      bands: [
        { level: "low", upper: 20 },
        { level: "elevated", upper: 50 },
        { level: "significant", upper: null },
      ],
    },
  };
}

function ratings(areas: string[], value: number): RatingData[] {
  return areas.map((area) => ({
    area,
    level: "minor",
    value,
    description: `${area} effect`,
  }));
}

export function makeRisk(id: string, value = 10): RiskData {
  return {
    id,
    title: `Risk ${id}`,
    narrative: "stub narrative",
    technique: "",
    author: "",
    identified_at: "2026-01-12T09:30:00Z",
    version: 1,
    assessments: {
      government: ratings(GOV_AREAS, value),
      end_users: ratings(EU_AREAS, value),
      relying_parties: ratings(RP_AREAS, value),
    },
    likelihood: {
      threat_capability: "sufficient",
      motivation: "high",
      control_effectiveness: "ineffective",
      historical_notes: "",
      level_override: null,
    },
  };
}

export function makeRegister(): RegisterData {
  return {
    schema_version: 1,
    context: makeContext(),
    risks: [makeRisk("alpha"), makeRisk("beta")],
  };
}

/**
 * Rigged score: every rating in makeRisk is 10, so no arithmetic over the
 * ratings could ever produce these numbers. The client must display them
 * anyway, verbatim.
 */
export function riggedScore(): ScoreData {
  const block = (areas: string[]) => ({
    lines: areas.map((area, i) => ({
      area,
      description: `${area} effect`,
      level: "minor",
      value: 10,
      weight: areas.length - i,
      line_score: 10 * (areas.length - i),
    })),
    weighted_total: 4242,
    weight_sum: 77,
    score: 321,
  });
  return {
    per_stakeholder: {
      government: block(GOV_AREAS),
      end_users: block(EU_AREAS),
      relying_parties: block(RP_AREAS),
    },
    overall_impact: 999,
    overall_impact_level: "significant",
    likelihood_level: "high",
    likelihood_score: 1,
    risk_value: 888,
    risk_level: "significant",
  };
}

export function riggedWhatIf(): WhatIfData {
  const baseline = riggedScore();
  const modified = riggedScore();
  modified.overall_impact = 777;
  modified.risk_value = 666;
  modified.risk_level = "elevated";
  const stakeholderDeltas = {} as Record<StakeholderKey, number>;
  (Object.keys(baseline.per_stakeholder) as StakeholderKey[]).forEach((s) => {
    stakeholderDeltas[s] = 0;
  });
  return {
    baseline,
    modified,
    delta: {
      stakeholder_scores: stakeholderDeltas,
      overall_impact: -222,
      risk_value: -222,
      risk_level_from: "significant",
      risk_level_to: "elevated",
    },
  };
}

export function riggedReport(): ReportRow[] {
  return [
    {
      rank: 1,
      risk_id: "beta",
      title: "Risk beta",
      impact_score: 999,
      impact_level: "significant",
      likelihood_level: "high",
      likelihood_score: 1,
      risk_value: 123456,
      risk_level: "significant",
    },
    {
      rank: 2,
      risk_id: "alpha",
      title: "Risk alpha",
      impact_score: 998,
      impact_level: "significant",
      likelihood_level: "medium",
      likelihood_score: 0.5,
      risk_value: 42,
      risk_level: "elevated",
    },
  ];
}
