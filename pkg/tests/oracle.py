"""Independent straight-line recomputation of every scoring rule.

Written over exact rationals with no code shared with the package, so an
arithmetic slip in the engine cannot cancel out here. Tests freeze the
engine against this module.
"""
from __future__ import annotations

import math
from fractions import Fraction

GOVERNMENT_AREAS = ("rights", "reputation", "political", "economic",
                    "operational", "social", "physical")
END_USER_AREAS = ("rights", "privacy", "psychological", "economic",
                  "social", "physical")
RELYING_PARTY_AREAS = ("economic", "reputation", "operational", "social",
                       "physical")

AREA_SETS = {
    "government": GOVERNMENT_AREAS,
    "end_users": END_USER_AREAS,
    "relying_parties": RELYING_PARTY_AREAS,
}


def stakeholder_score(pairs) -> int:
    """Round-half-up weighted mean of (value, weight) pairs."""
    total = sum(Fraction(value) * weight for value, weight in pairs)
    weight_sum = sum(weight for _, weight in pairs)
    return math.floor(total / weight_sum + Fraction(1, 2))


def overall_impact(scores) -> int:
    """Floored mean of the per-stakeholder scores."""
    return math.floor(Fraction(sum(scores), len(scores)))


def risk_value(impact: int, likelihood_score: float) -> Fraction:
    return Fraction(impact) * Fraction(likelihood_score)


def risk_level(value) -> str:
    if value <= 20:
        return "low"
    if value <= 50:
        return "elevated"
    return "significant"


def impact_level(value: int) -> str:
    if 0 <= value <= 30:
        return "minor"
    if 31 <= value <= 69:
        return "moderate"
    if 70 <= value <= 100:
        return "significant"
    raise ValueError(value)


# Every (threat_capability, motivation, control_effectiveness) combination,
# spelled out row by row rather than re-deriving the rule.
LIKELIHOOD = {
    ("sufficient", "high", "ineffective"): "high",
    ("sufficient", "high", "partially_effective"): "medium",
    ("sufficient", "high", "effective"): "low",
    ("sufficient", "low", "ineffective"): "medium",
    ("sufficient", "low", "partially_effective"): "medium",
    ("sufficient", "low", "effective"): "low",
    ("insufficient", "high", "ineffective"): "low",
    ("insufficient", "high", "partially_effective"): "low",
    ("insufficient", "high", "effective"): "low",
    ("insufficient", "low", "ineffective"): "low",
    ("insufficient", "low", "partially_effective"): "low",
    ("insufficient", "low", "effective"): "low",
}

LIKELIHOOD_SCORES = {"high": 1.0, "medium": 0.5, "low": 0.1}
