"""Built-in sample risks used by tests, documentation and `init --with-samples`.

Two contrasting scenarios against the same eID scheme: a single-victim
account takeover and a systemic breach of the issuance chain. Their
scores land in different risk bands, so any regression in the arithmetic
shows up immediately in the sample register.
"""
from __future__ import annotations

from datetime import datetime, timezone

from .model import (
    AreaName,
    ControlEffectiveness,
    ImpactLevel,
    ImpactRating,
    LikelihoodEvidence,
    Motivation,
    RiskRecord,
    Stakeholder,
    ThreatCapability,
    default_context,
)
from .store import RegisterDocument, new_document, upsert_risk

_FIXTURE_TIME = datetime(2026, 1, 12, 9, 30, tzinfo=timezone.utc)

MINOR = ImpactLevel.MINOR
MODERATE = ImpactLevel.MODERATE
SIGNIFICANT = ImpactLevel.SIGNIFICANT


def _ratings(stakeholder: Stakeholder,
             rows: list[tuple[AreaName, ImpactLevel, int, str]]):
    return tuple(
        ImpactRating(area=name, declared_level=level, value=value,
                     description=description)
        for name, level, value, description in rows)


def example_1() -> RiskRecord:
    """Account takeover of one citizen's eID credential."""
    return RiskRecord(
        id="example-1",
        title="Single account takeover via phished credential",
        narrative=(
            "An attacker tricks one citizen into revealing their eID "
            "credential and activation code, then authenticates as that "
            "person at connected online services."),
        technique="scenario-walkthrough",
        author="workbench",
        identified_at=_FIXTURE_TIME,
        assessments={
            Stakeholder.GOVERNMENT: _ratings(Stakeholder.GOVERNMENT, [
                (AreaName.RIGHTS, MINOR, 25, "one person affected"),
                (AreaName.REPUTATION, MINOR, 30, "local press only"),
                (AreaName.POLITICAL, MINOR, 8, "no policy fallout"),
                (AreaName.ECONOMIC, MINOR, 10, "case handling cost"),
                (AreaName.OPERATIONAL, MINOR, 10, "single revocation"),
                (AreaName.SOCIAL, MINOR, 30, "localized distrust"),
                (AreaName.PHYSICAL, MINOR, 8, "none expected"),
            ]),
            Stakeholder.END_USERS: _ratings(Stakeholder.END_USERS, [
                (AreaName.RIGHTS, MINOR, 25, "services blocked briefly"),
                (AreaName.PRIVACY, MINOR, 1, "little data exposed"),
                (AreaName.PSYCHOLOGICAL, SIGNIFICANT, 85, "severe distress"),
                (AreaName.ECONOMIC, MINOR, 10, "small recoverable loss"),
                (AreaName.SOCIAL, SIGNIFICANT, 80, "impersonation stigma"),
                (AreaName.PHYSICAL, MINOR, 8, "none expected"),
            ]),
            Stakeholder.RELYING_PARTIES: _ratings(Stakeholder.RELYING_PARTIES, [
                (AreaName.ECONOMIC, MINOR, 10, "one fraud writeoff"),
                (AreaName.REPUTATION, MINOR, 20, "single complaint"),
                (AreaName.OPERATIONAL, MINOR, 10, "manual rollback"),
                (AreaName.SOCIAL, MINOR, 25, "customer doubt"),
                (AreaName.PHYSICAL, MINOR, 8, "none expected"),
            ]),
        },
        likelihood=LikelihoodEvidence(
            threat_capability=ThreatCapability.SUFFICIENT,
            motivation=Motivation.HIGH,
            control_effectiveness=ControlEffectiveness.INEFFECTIVE,
            historical_notes="recurring phishing campaigns against holders",
        ),
    )


def example_2() -> RiskRecord:
    """Bulk compromise of the credential issuance chain."""
    return RiskRecord(
        id="example-2",
        title="Mass credential compromise in the issuance chain",
        narrative=(
            "A breach of the issuance infrastructure exposes key material "
            "for a large share of active credentials, enabling large scale "
            "impersonation until the affected batches are revoked and "
            "reissued."),
        technique="scenario-walkthrough",
        author="workbench",
        identified_at=datetime(2026, 1, 12, 10, 5, tzinfo=timezone.utc),
        assessments={
            Stakeholder.GOVERNMENT: _ratings(Stakeholder.GOVERNMENT, [
                (AreaName.RIGHTS, SIGNIFICANT, 95, "population scale exposure"),
                (AreaName.REPUTATION, MODERATE, 75, "international coverage"),
                (AreaName.POLITICAL, MODERATE, 60, "inquiry likely"),
                (AreaName.ECONOMIC, SIGNIFICANT, 85, "mass reissuance cost"),
                (AreaName.OPERATIONAL, MODERATE, 60, "issuance suspended"),
                (AreaName.SOCIAL, SIGNIFICANT, 80, "broad distrust"),
                (AreaName.PHYSICAL, MINOR, 8, "none expected"),
            ]),
            Stakeholder.END_USERS: _ratings(Stakeholder.END_USERS, [
                (AreaName.RIGHTS, SIGNIFICANT, 95, "services unusable"),
                (AreaName.PRIVACY, SIGNIFICANT, 90, "identity data exposed"),
                (AreaName.PSYCHOLOGICAL, MODERATE, 58, "widespread anxiety"),
                (AreaName.ECONOMIC, SIGNIFICANT, 82, "fraud across accounts"),
                (AreaName.SOCIAL, SIGNIFICANT, 80, "mass impersonation"),
                (AreaName.PHYSICAL, MINOR, 8, "none expected"),
            ]),
            Stakeholder.RELYING_PARTIES: _ratings(Stakeholder.RELYING_PARTIES, [
                (AreaName.ECONOMIC, MODERATE, 45, "fraud and chargebacks"),
                (AreaName.REPUTATION, MINOR, 20, "blame on scheme"),
                (AreaName.OPERATIONAL, MODERATE, 65, "logins disabled"),
                (AreaName.SOCIAL, SIGNIFICANT, 71, "customers locked out"),
                (AreaName.PHYSICAL, MINOR, 8, "none expected"),
            ]),
        },
        likelihood=LikelihoodEvidence(
            threat_capability=ThreatCapability.SUFFICIENT,
            motivation=Motivation.HIGH,
            control_effectiveness=ControlEffectiveness.INEFFECTIVE,
            historical_notes="issuance chain attacks reported elsewhere",
        ),
    )


def fixture_document() -> RegisterDocument:
    """A complete register with both samples and a deterministic audit log."""
    doc = new_document(default_context(title="National eID risk register"))
    doc = upsert_risk(doc, example_1(), "workbench", now=_FIXTURE_TIME)
    doc = upsert_risk(doc, example_2(), "workbench",
                      now=datetime(2026, 1, 12, 10, 5, tzinfo=timezone.utc))
    return doc
