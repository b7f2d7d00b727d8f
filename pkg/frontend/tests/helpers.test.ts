import { describe, expect, it } from "vitest";

import {
  bandForValue,
  esc,
  formatDelta,
  levelLabel,
  likelihoodHint,
} from "../src/labels.js";
import {
  areasOf,
  draftFromRisk,
  draftProblems,
  draftToPayload,
  emptyDraft,
  moveItem,
  weightsFromOrder,
} from "../src/state.js";
import { splitFormErrors } from "../src/views/riskForm.js";
import { EU_AREAS, GOV_AREAS, RP_AREAS, makeContext, makeRegister, makeRisk } from "./fixtures.js";

describe("labels", () => {
  it("escapes HTML-sensitive characters", () => {
    expect(esc(`<a b="c">&'`)).toBe("&lt;a b=&quot;c&quot;&gt;&amp;&#39;");
  });

  it("turns snake_case levels into readable labels", () => {
    expect(levelLabel("partially_effective")).toBe("Partially effective");
    expect(levelLabel("low")).toBe("Low");
  });

  it("formats deltas with an explicit sign", () => {
    expect(formatDelta(3)).toBe("+3");
    expect(formatDelta(-5)).toBe("-5");
    expect(formatDelta(0)).toBe("0");
  });

  it("looks up the band for a value from the context scale", () => {
    const context = makeContext();
    expect(bandForValue(context, 0)?.level).toBe("minor");
    expect(bandForValue(context, 30)?.level).toBe("minor");
    expect(bandForValue(context, 31)?.level).toBe("moderate");
    expect(bandForValue(context, 69)?.level).toBe("moderate");
    expect(bandForValue(context, 70)?.level).toBe("significant");
    expect(bandForValue(context, 100)?.level).toBe("significant");
  });

  it("returns no band for out-of-range or non-integer values", () => {
    const context = makeContext();
    expect(bandForValue(context, -1)).toBeNull();
    expect(bandForValue(context, 101)).toBeNull();
    expect(bandForValue(context, 49.5)).toBeNull();
    expect(bandForValue(context, Number.NaN)).toBeNull();
  });

  it("previews the likelihood the server will derive", () => {
    // override always wins
    expect(likelihoodHint("sufficient", "high", "ineffective", "medium")).toBe("medium");
    // insufficient capability or effective controls pin low
    expect(likelihoodHint("insufficient", "high", "ineffective", null)).toBe("low");
    expect(likelihoodHint("sufficient", "high", "effective", null)).toBe("low");
    // high motivation against ineffective controls pins high
    expect(likelihoodHint("sufficient", "high", "ineffective", null)).toBe("high");
    // everything else lands in the middle
    expect(likelihoodHint("sufficient", "high", "partially_effective", null)).toBe("medium");
    expect(likelihoodHint("sufficient", "low", "ineffective", null)).toBe("medium");
    expect(likelihoodHint("sufficient", "low", "partially_effective", null)).toBe("medium");
  });
});

describe("state helpers", () => {
  it("lists areas per stakeholder from the register weightings", () => {
    const areas = areasOf(makeRegister());
    expect(areas.government).toEqual(GOV_AREAS);
    expect(areas.end_users).toEqual(EU_AREAS);
    expect(areas.relying_parties).toEqual(RP_AREAS);
  });

  it("moves items without mutating the source array", () => {
    const source = ["a", "b", "c", "d"];
    expect(moveItem(source, 0, 2)).toEqual(["b", "c", "a", "d"]);
    expect(moveItem(source, 3, 0)).toEqual(["d", "a", "b", "c"]);
    expect(moveItem(source, 1, 1)).toEqual(source);
    expect(source).toEqual(["a", "b", "c", "d"]);
  });

  it("returns an unchanged copy for out-of-range moves", () => {
    expect(moveItem(["a", "b"], 0, 5)).toEqual(["a", "b"]);
    expect(moveItem(["a", "b"], 1, -3)).toEqual(["a", "b"]);
  });

  it("derives N..1 weights from an ordering", () => {
    expect(weightsFromOrder(["x", "y", "z"])).toEqual({ x: 3, y: 2, z: 1 });
  });

  it("round-trips a risk through a draft without sharing state", () => {
    const risk = makeRisk("alpha");
    const draft = draftFromRisk(risk);
    draft.assessments.government[0].value = 99;
    draft.likelihood.motivation = "low";
    expect(risk.assessments.government[0].value).toBe(10);
    expect(risk.likelihood.motivation).toBe("high");

    const payload = draftToPayload(draft) as {
      id: string;
      version: number;
      assessments: Record<string, { value: number }[]>;
    };
    expect(payload.id).toBe("alpha");
    expect(payload.version).toBe(1);
    expect(payload.assessments.government[0].value).toBe(99);
  });

  it("builds an empty draft covering every area", () => {
    const draft = emptyDraft(makeRegister());
    expect(draft.version).toBeNull();
    expect(draft.assessments.government).toHaveLength(7);
    expect(draft.assessments.end_users).toHaveLength(6);
    expect(draft.assessments.relying_parties).toHaveLength(5);
    for (const ratings of Object.values(draft.assessments)) {
      for (const rating of ratings) {
        expect(rating.level).toBe("minor");
        expect(rating.value).toBe(0);
      }
    }
  });

  it("reports why a draft cannot be saved", () => {
    const draft = emptyDraft(makeRegister());
    let problems = draftProblems(draft);
    expect(problems.some((p) => p.includes("id"))).toBe(true);
    expect(problems.some((p) => p.includes("title"))).toBe(true);

    draft.id = "r1";
    draft.title = "Something";
    expect(draftProblems(draft)).toEqual([]);

    draft.assessments.end_users[1].value = Number.NaN;
    draft.assessments.government[0].value = 101;
    problems = draftProblems(draft);
    expect(problems).toHaveLength(2);
    expect(problems.some((p) => p.includes("end_users.privacy"))).toBe(true);
    expect(problems.some((p) => p.includes("government.rights"))).toBe(true);
  });
});

describe("splitFormErrors", () => {
  it("maps rating errors onto their rows and keeps the rest general", () => {
    const split = splitFormErrors([
      { code: "invalid_value", message: "value out of range", field_path: "risk.assessments.end_users[2].value" },
      { code: "duplicate_risk", message: "already exists", field_path: null },
      { code: "bad_field", message: "title missing", field_path: "risk.title" },
    ]);
    expect(split.byRow.get("end_users[2]")).toBe("value out of range");
    expect(split.general).toEqual(["already exists", "title missing"]);
  });
});
