"""Risk assessment workbench for national eID systems.

Multi-stakeholder impact scoring with priority-weighted impact areas,
rule-derived likelihood, risk classification and register management.
"""
from .errors import (
    DomainError,
    EidRiskError,
    ParseError,
    SchemaError,
    UnknownRiskError,
    ValidationError,
    VersionConflictError,
    Violation,
)
from .model import (
    AREAS,
    AreaName,
    AssessmentContext,
    ControlEffectiveness,
    ImpactArea,
    ImpactLevel,
    ImpactRating,
    ImpactScale,
    LikelihoodEvidence,
    LikelihoodLevel,
    LikelihoodTable,
    Motivation,
    PriorityWeighting,
    RiskLevel,
    RiskRecord,
    RiskThresholds,
    ScaleBand,
    Stakeholder,
    ThreatCapability,
    ThresholdBand,
    default_context,
    default_impact_scale,
    default_likelihood_table,
    default_risk_thresholds,
    default_weighting,
    level_for_impact_value,
    parse_area_ref,
    reconcile_declared_level,
    reconcile_risk,
    validate_context,
)
from .scoring import (
    AreaLine,
    RiskScore,
    StakeholderImpactScore,
    WhatIfDelta,
    WhatIfOverrides,
    WhatIfResult,
    likelihood_from_evidence,
    likelihood_score,
    overall_impact,
    rank_register,
    risk_level,
    risk_value,
    round_half_up_ratio,
    score_risk,
    stakeholder_impact_score,
    what_if,
)
from .store import (
    AuditEntry,
    RegisterDocument,
    load_register,
    new_document,
    remove_risk,
    save_register,
    update_context,
    upsert_risk,
    validate_document,
)

__all__ = [name for name in dir() if not name.startswith("_")]
