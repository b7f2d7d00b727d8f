import random
from dataclasses import replace
from datetime import datetime, timezone

import pytest

from eidrisk.model import (
    AREAS,
    ControlEffectiveness,
    ImpactRating,
    LikelihoodEvidence,
    Motivation,
    PriorityWeighting,
    RiskRecord,
    Stakeholder,
    ThreatCapability,
    default_context,
    default_impact_scale,
    level_for_impact_value,
)
from eidrisk.samples import fixture_document
from eidrisk.store import save_register

FIXED_TIME = datetime(2026, 2, 2, 12, 0, tzinfo=timezone.utc)


@pytest.fixture
def fixture_doc():
    return fixture_document()


@pytest.fixture
def register_path(tmp_path):
    path = tmp_path / "register.json"
    save_register(fixture_document(), path)
    return path


def make_risk(rng: random.Random, risk_id: str = "random-risk",
              version: int = 1) -> RiskRecord:
    """A structurally valid risk with randomized values and evidence."""
    scale = default_impact_scale()
    assessments = {}
    for stakeholder in Stakeholder:
        ratings = []
        for area in AREAS[stakeholder]:
            value = rng.randint(0, 100)
            ratings.append(ImpactRating(
                area=area,
                declared_level=level_for_impact_value(scale, value),
                value=value,
            ))
        rng.shuffle(ratings)
        assessments[stakeholder] = tuple(ratings)
    return RiskRecord(
        id=risk_id,
        title="randomized case",
        narrative="",
        technique="generated",
        author="tests",
        identified_at=FIXED_TIME,
        assessments=assessments,
        likelihood=LikelihoodEvidence(
            threat_capability=rng.choice(list(ThreatCapability)),
            motivation=rng.choice(list(Motivation)),
            control_effectiveness=rng.choice(list(ControlEffectiveness)),
        ),
        version=version,
    )


def make_context(rng: random.Random):
    """Default context with each class's weights randomly permuted."""
    weightings = {}
    for stakeholder in Stakeholder:
        areas = list(AREAS[stakeholder])
        ranks = list(range(1, len(areas) + 1))
        rng.shuffle(ranks)
        weightings[stakeholder] = PriorityWeighting(
            stakeholder, dict(zip(areas, ranks)))
    return replace(default_context(), weightings=weightings)
