"""Scoring engine: stakeholder impact scores, overall impact, likelihood,
risk value and risk level, plus ranking and what-if exploration.

All functions are pure and deterministic over immutable inputs. The impact
path is exact integer arithmetic with rational division at exactly two
points: per-stakeholder scores round half-up (218/15 must give 15, not 14),
overall impact floors (197/3 must give 65, not 66). Only the final
impact x likelihood product is real-valued.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import DomainError, ValidationError
from .model import (
    AREAS,
    AreaName,
    AssessmentContext,
    ControlEffectiveness,
    ImpactArea,
    ImpactLevel,
    ImpactRating,
    LikelihoodEvidence,
    LikelihoodLevel,
    LikelihoodTable,
    Motivation,
    PriorityWeighting,
    RiskLevel,
    RiskRecord,
    RiskThresholds,
    Stakeholder,
    ThreatCapability,
    level_for_impact_value,
    validate_context,
)


@dataclass(frozen=True)
class AreaLine:
    """One table row: a rating joined with its weight and line score."""

    area: AreaName
    description: str
    declared_level: ImpactLevel
    value: int
    weight: int
    line_score: int  # value * weight


@dataclass(frozen=True)
class StakeholderImpactScore:
    """Weighted-mean impact score for one stakeholder class."""

    stakeholder: Stakeholder
    lines: tuple[AreaLine, ...]
    weighted_total: int
    weight_sum: int
    score: int


@dataclass(frozen=True)
class RiskScore:
    """The full computed artifact for one risk under one context."""

    per_stakeholder: dict[Stakeholder, StakeholderImpactScore]
    overall_impact: int
    overall_impact_level: ImpactLevel
    likelihood_level: LikelihoodLevel
    likelihood_score: float
    risk_value: float
    risk_level: RiskLevel


def round_half_up_ratio(numerator: int, denominator: int) -> int:
    """floor(n/d + 1/2) in exact integer arithmetic; d > 0, n >= 0."""
    return (2 * numerator + denominator) // (2 * denominator)


def stakeholder_impact_score(ratings: Iterable[ImpactRating],
                             weighting: PriorityWeighting) -> StakeholderImpactScore:
    """Weighted mean of the ratings under the class's priority weights.

    The rating set must cover the weighting's stakeholder areas exactly
    once; score = round-half-up of (sum of weight*value) / (sum of weights).
    """
    stakeholder = weighting.stakeholder
    expected = AREAS[stakeholder]
    by_area: dict[AreaName, ImpactRating] = {}
    for r in ratings:
        if r.area not in expected:
            raise DomainError(
                f"rating for '{r.area.value}' does not belong to {stakeholder.value}",
                code="assessment_mismatch", field_path=r.area.value)
        if r.area in by_area:
            raise DomainError(f"duplicate rating for '{r.area.value}'",
                              code="duplicate_area_rating", field_path=r.area.value)
        by_area[r.area] = r
    missing = [a.value for a in expected if a not in by_area]
    if missing:
        raise DomainError(
            f"incomplete {stakeholder.value} assessment, missing: {', '.join(missing)}",
            code="incomplete_assessment")

    lines = []
    for area in expected:
        rating = by_area[area]
        weight = weighting.weights.get(area)
        if weight is None:
            raise DomainError(f"no weight assigned for '{area.value}'",
                              code="missing_area", field_path=area.value)
        lines.append(AreaLine(
            area=area,
            description=rating.description,
            declared_level=rating.declared_level,
            value=rating.value,
            weight=weight,
            line_score=rating.value * weight,
        ))
    weighted_total = sum(line.line_score for line in lines)
    weight_sum = sum(line.weight for line in lines)
    if weight_sum <= 0:
        raise DomainError("weights must sum to a positive total", code="weights_not_positive")
    return StakeholderImpactScore(
        stakeholder=stakeholder,
        lines=tuple(lines),
        weighted_total=weighted_total,
        weight_sum=weight_sum,
        score=round_half_up_ratio(weighted_total, weight_sum),
    )


def overall_impact(scores: Sequence[StakeholderImpactScore]) -> int:
    """Floored mean of the three stakeholder scores."""
    seen = {s.stakeholder for s in scores}
    if len(scores) != len(Stakeholder) or seen != set(Stakeholder):
        raise DomainError("need exactly one impact score per stakeholder class",
                          code="stakeholder_set_invalid")
    return sum(s.score for s in scores) // len(scores)


def likelihood_from_evidence(evidence: LikelihoodEvidence) -> LikelihoodLevel:
    """Decision table over the evidence factors; total over all combinations.

    An explicit override wins. Otherwise: effective controls or an incapable
    threat source force low; a capable, highly motivated source against
    ineffective controls is high; everything else is medium (including the
    capable-but-unmotivated, no-controls corner, resolved conservatively).
    """
    if evidence.level_override is not None:
        return evidence.level_override
    if (evidence.threat_capability is ThreatCapability.INSUFFICIENT
            or evidence.control_effectiveness is ControlEffectiveness.EFFECTIVE):
        return LikelihoodLevel.LOW
    if (evidence.motivation is Motivation.HIGH
            and evidence.control_effectiveness is ControlEffectiveness.INEFFECTIVE):
        return LikelihoodLevel.HIGH
    return LikelihoodLevel.MEDIUM


def likelihood_score(level: LikelihoodLevel, table: LikelihoodTable) -> float:
    score = table.scores.get(level)
    if score is None:
        raise DomainError(f"likelihood table has no score for '{level.value}'",
                          code="likelihood_table_incomplete")
    return float(score)


def risk_value(impact: int, likelihood: float) -> float:
    """Impact x likelihood product, real-valued."""
    return impact * likelihood


def risk_level(value: float, thresholds: RiskThresholds) -> RiskLevel:
    for band in thresholds.bands:
        if band.upper is None or value <= band.upper:
            return band.level
    raise DomainError(f"risk thresholds have no band containing {value}",
                      code="thresholds_invalid")


def _require_valid_context(context: AssessmentContext) -> None:
    violations = validate_context(context)
    if violations:
        raise ValidationError(violations)


def score_risk(risk: RiskRecord, context: AssessmentContext) -> RiskScore:
    """Score one risk under a context: per-stakeholder line items and scores,
    overall impact, likelihood, risk value and risk level."""
    _require_valid_context(context)
    per_stakeholder = {
        stakeholder: stakeholder_impact_score(risk.assessments[stakeholder],
                                              context.weightings[stakeholder])
        for stakeholder in Stakeholder
    }
    impact = overall_impact(list(per_stakeholder.values()))
    level = likelihood_from_evidence(risk.likelihood)
    l_score = likelihood_score(level, context.likelihood_table)
    value = risk_value(impact, l_score)
    return RiskScore(
        per_stakeholder=per_stakeholder,
        overall_impact=impact,
        overall_impact_level=level_for_impact_value(context.impact_scale, impact),
        likelihood_level=level,
        likelihood_score=l_score,
        risk_value=value,
        risk_level=risk_level(value, context.risk_thresholds),
    )


def rank_register(risks: Sequence[RiskRecord],
                  context: AssessmentContext) -> list[tuple[str, RiskScore]]:
    """Score all risks and order by risk value descending.

    Ties break by overall impact descending, then risk id ascending, so the
    ranking is deterministic for identical registers.
    """
    scored = [(risk.id, score_risk(risk, context)) for risk in risks]
    scored.sort(key=lambda item: (-item[1].risk_value, -item[1].overall_impact, item[0]))
    return scored


@dataclass(frozen=True)
class WhatIfOverrides:
    """Partial overrides applied on top of a risk and its context."""

    values: dict[ImpactArea, int] = field(default_factory=dict)
    weightings: dict[Stakeholder, PriorityWeighting] = field(default_factory=dict)
    likelihood_level: LikelihoodLevel | None = None


@dataclass(frozen=True)
class WhatIfDelta:
    """Modified-minus-baseline changes per reported field."""

    stakeholder_scores: dict[Stakeholder, int]
    overall_impact: int
    risk_value: float
    risk_level_from: RiskLevel
    risk_level_to: RiskLevel


@dataclass(frozen=True)
class WhatIfResult:
    baseline: RiskScore
    modified: RiskScore
    delta: WhatIfDelta


def what_if(risk: RiskRecord, context: AssessmentContext,
            overrides: WhatIfOverrides) -> WhatIfResult:
    """Recompute a risk under overridden values, weights or likelihood.

    Pure: neither the risk nor the context is mutated; the baseline is
    scored alongside the modified variant and a per-field delta reported.
    """
    for area, value in overrides.values.items():
        if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value <= 100:
            raise ValidationError("value out of range, expected integer 0-100",
                                  code="value_out_of_range", field_path=area.ref)
    for stakeholder, weighting in overrides.weightings.items():
        if weighting.stakeholder != stakeholder:
            raise ValidationError(
                f"replacement weighting for {stakeholder.value} is declared for "
                f"{weighting.stakeholder.value}",
                code="weighting_class_mismatch",
                field_path=f"weightings.{stakeholder.value}")

    baseline = score_risk(risk, context)

    modified_context = context
    if overrides.weightings:
        modified_context = replace(
            context, weightings={**context.weightings, **overrides.weightings})

    modified_risk = risk
    if overrides.values:
        by_class: dict[Stakeholder, dict[AreaName, int]] = {}
        for area, value in overrides.values.items():
            by_class.setdefault(area.stakeholder, {})[area.name] = value
        assessments = {
            stakeholder: tuple(
                replace(r, value=by_class[stakeholder][r.area])
                if stakeholder in by_class and r.area in by_class[stakeholder] else r
                for r in ratings)
            for stakeholder, ratings in risk.assessments.items()
        }
        modified_risk = replace(risk, assessments=assessments)
    if overrides.likelihood_level is not None:
        modified_risk = replace(
            modified_risk,
            likelihood=replace(modified_risk.likelihood,
                               level_override=overrides.likelihood_level))

    modified = score_risk(modified_risk, modified_context)
    delta = WhatIfDelta(
        stakeholder_scores={
            s: modified.per_stakeholder[s].score - baseline.per_stakeholder[s].score
            for s in Stakeholder
        },
        overall_impact=modified.overall_impact - baseline.overall_impact,
        risk_value=modified.risk_value - baseline.risk_value,
        risk_level_from=baseline.risk_level,
        risk_level_to=modified.risk_level,
    )
    return WhatIfResult(baseline=baseline, modified=modified, delta=delta)
