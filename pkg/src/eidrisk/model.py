"""Domain vocabulary for eID risk assessment.

Fixed stakeholder classes and their impact areas, rating scales, priority
weightings, likelihood evidence, and the assessment context that binds the
measurement criteria together. All types are immutable values; structural
rules are enforced at construction, while tunable-context rules (weight
permutations, band coverage) are reported by :func:`validate_context` so
that broken configurations can be loaded, inspected and repaired.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum

from .errors import ValidationError, Violation


class Stakeholder(str, Enum):
    """The three parties a risk is scored against."""

    GOVERNMENT = "government"
    END_USERS = "end_users"
    RELYING_PARTIES = "relying_parties"


class AreaName(str, Enum):
    """Impact area identifiers; each stakeholder uses a fixed subset."""

    RIGHTS = "rights"
    REPUTATION = "reputation"
    POLITICAL = "political"
    ECONOMIC = "economic"
    OPERATIONAL = "operational"
    SOCIAL = "social"
    PHYSICAL = "physical"
    PRIVACY = "privacy"
    PSYCHOLOGICAL = "psychological"


# Canonical area sets, in the order used for weighting defaults, table
# rendering and serialization. Order is part of the file format contract.
AREAS: dict[Stakeholder, tuple[AreaName, ...]] = {
    Stakeholder.GOVERNMENT: (
        AreaName.RIGHTS,
        AreaName.REPUTATION,
        AreaName.POLITICAL,
        AreaName.ECONOMIC,
        AreaName.OPERATIONAL,
        AreaName.SOCIAL,
        AreaName.PHYSICAL,
    ),
    Stakeholder.END_USERS: (
        AreaName.RIGHTS,
        AreaName.PRIVACY,
        AreaName.PSYCHOLOGICAL,
        AreaName.ECONOMIC,
        AreaName.SOCIAL,
        AreaName.PHYSICAL,
    ),
    Stakeholder.RELYING_PARTIES: (
        AreaName.ECONOMIC,
        AreaName.REPUTATION,
        AreaName.OPERATIONAL,
        AreaName.SOCIAL,
        AreaName.PHYSICAL,
    ),
}

RATINGS_PER_RISK = sum(len(a) for a in AREAS.values())  # 7 + 6 + 5 = 18


class ImpactLevel(str, Enum):
    MINOR = "minor"
    MODERATE = "moderate"
    SIGNIFICANT = "significant"


class LikelihoodLevel(str, Enum):
    HIGH = "high"
    MEDIUM = "medium"
    LOW = "low"


class RiskLevel(str, Enum):
    LOW = "low"
    ELEVATED = "elevated"
    SIGNIFICANT = "significant"


class ThreatCapability(str, Enum):
    SUFFICIENT = "sufficient"
    INSUFFICIENT = "insufficient"


class Motivation(str, Enum):
    HIGH = "high"
    LOW = "low"


class ControlEffectiveness(str, Enum):
    INEFFECTIVE = "ineffective"
    PARTIALLY_EFFECTIVE = "partially_effective"
    EFFECTIVE = "effective"


@dataclass(frozen=True)
class ImpactArea:
    """A (stakeholder, area) pair; the address of one rating."""

    stakeholder: Stakeholder
    name: AreaName

    def __post_init__(self):
        if self.name not in AREAS[self.stakeholder]:
            valid = ", ".join(a.value for a in AREAS[self.stakeholder])
            raise ValidationError(
                f"'{self.name.value}' is not an impact area of {self.stakeholder.value}; "
                f"valid areas: {valid}",
                code="unknown_area",
                field_path=f"{self.stakeholder.value}.{self.name.value}",
            )

    @property
    def ref(self) -> str:
        return f"{self.stakeholder.value}.{self.name.value}"


def parse_area_ref(ref: str) -> ImpactArea:
    """Parse ``stakeholder.area`` (e.g. ``end_users.psychological``).

    Stakeholder aliases without underscores (``endusers``, ``relyingparties``)
    are accepted for CLI convenience.
    """
    head, sep, tail = ref.partition(".")
    aliases = {s.value.replace("_", ""): s for s in Stakeholder}
    stakeholder = aliases.get(head.lower().replace("_", "").replace("-", ""))
    if not sep or stakeholder is None:
        raise ValidationError(
            f"'{ref}' is not a valid area reference; expected "
            "<stakeholder>.<area> with stakeholder one of "
            + ", ".join(s.value for s in Stakeholder),
            code="unknown_area",
            field_path=ref,
        )
    try:
        name = AreaName(tail.lower())
    except ValueError:
        name = None
    if name is None or name not in AREAS[stakeholder]:
        valid = ", ".join(a.value for a in AREAS[stakeholder])
        raise ValidationError(
            f"'{tail}' is not an impact area of {stakeholder.value}; valid areas: {valid}",
            code="unknown_area",
            field_path=ref,
        )
    return ImpactArea(stakeholder, name)


@dataclass(frozen=True)
class ScaleBand:
    """One labelled value range of the impact scale, bounds inclusive."""

    level: ImpactLevel
    lower: int
    upper: int


@dataclass(frozen=True)
class ImpactScale:
    """Ordered impact bands; must tile [0, 100] exactly to be valid."""

    bands: tuple[ScaleBand, ...]


def default_impact_scale() -> ImpactScale:
    return ImpactScale(bands=(
        ScaleBand(ImpactLevel.MINOR, 0, 30),
        ScaleBand(ImpactLevel.MODERATE, 31, 69),
        ScaleBand(ImpactLevel.SIGNIFICANT, 70, 100),
    ))


@dataclass(frozen=True)
class PriorityWeighting:
    """Rank weights for one stakeholder's areas; a permutation of 1..N.

    Construction is deliberately permissive (any int-valued mapping) so a
    broken weighting can be loaded and reported; :func:`validate_context`
    owns the permutation rule.
    """

    stakeholder: Stakeholder
    weights: dict[AreaName, int]

    def __post_init__(self):
        for area, weight in self.weights.items():
            if not isinstance(weight, int) or isinstance(weight, bool):
                raise ValidationError(
                    f"weight for '{area.value}' must be an integer",
                    code="weight_not_integer",
                    field_path=f"weightings.{self.stakeholder.value}.{area.value}",
                )


def default_weighting(stakeholder: Stakeholder) -> PriorityWeighting:
    """Rank weights N..1 down the canonical area order."""
    areas = AREAS[stakeholder]
    n = len(areas)
    return PriorityWeighting(stakeholder, {area: n - i for i, area in enumerate(areas)})


@dataclass(frozen=True)
class ImpactRating:
    """One analyst judgment: area, declared band label, numeric value."""

    area: AreaName
    declared_level: ImpactLevel
    value: int
    description: str = ""

    def __post_init__(self):
        if not isinstance(self.value, int) or isinstance(self.value, bool) \
                or not 0 <= self.value <= 100:
            raise ValidationError(
                "value out of range, expected integer 0-100",
                code="value_out_of_range",
                field_path=self.area.value,
            )


@dataclass(frozen=True)
class LikelihoodEvidence:
    """Observable factors the likelihood level is derived from."""

    threat_capability: ThreatCapability
    motivation: Motivation
    control_effectiveness: ControlEffectiveness
    historical_notes: str = ""
    level_override: LikelihoodLevel | None = None


@dataclass(frozen=True)
class LikelihoodTable:
    """Level-to-score mapping used when combining impact with likelihood."""

    scores: dict[LikelihoodLevel, float]


def default_likelihood_table() -> LikelihoodTable:
    return LikelihoodTable(scores={
        LikelihoodLevel.HIGH: 1.0,
        LikelihoodLevel.MEDIUM: 0.5,
        LikelihoodLevel.LOW: 0.1,
    })


@dataclass(frozen=True)
class ThresholdBand:
    """Risk level for values up to ``upper`` (inclusive); None = unbounded."""

    level: RiskLevel
    upper: float | None


@dataclass(frozen=True)
class RiskThresholds:
    """Ordered risk-value bands, compared on reals (risk values may be fractional)."""

    bands: tuple[ThresholdBand, ...]


def default_risk_thresholds() -> RiskThresholds:
    return RiskThresholds(bands=(
        ThresholdBand(RiskLevel.LOW, 20),
        ThresholdBand(RiskLevel.ELEVATED, 50),
        ThresholdBand(RiskLevel.SIGNIFICANT, None),
    ))


@dataclass(frozen=True)
class AssessmentContext:
    """The basic measurement criteria one register is scored under."""

    id: str
    title: str
    weightings: dict[Stakeholder, PriorityWeighting]
    impact_scale: ImpactScale = field(default_factory=default_impact_scale)
    likelihood_table: LikelihoodTable = field(default_factory=default_likelihood_table)
    risk_thresholds: RiskThresholds = field(default_factory=default_risk_thresholds)
    scope_notes: str = ""
    schema_version: int = 1


def default_context(context_id: str = "default", title: str = "eID risk assessment") -> AssessmentContext:
    """Context with default scale, likelihood table, thresholds and N..1 weights."""
    return AssessmentContext(
        id=context_id,
        title=title,
        weightings={s: default_weighting(s) for s in Stakeholder},
    )


@dataclass(frozen=True)
class RiskRecord:
    """One identified risk with its complete 18-area assessment.

    Completeness (exactly one rating per area of every stakeholder class)
    is enforced here: an incomplete record cannot exist. Ratings are stored
    in canonical area order regardless of input order.
    """

    id: str
    title: str
    narrative: str
    technique: str
    author: str
    identified_at: datetime
    assessments: dict[Stakeholder, tuple[ImpactRating, ...]]
    likelihood: LikelihoodEvidence
    version: int = 1

    def __post_init__(self):
        if not self.id:
            raise ValidationError("risk id must not be empty", code="empty_risk_id", field_path="id")
        if not isinstance(self.version, int) or self.version < 1:
            raise ValidationError(
                "version must be a positive integer", code="bad_version", field_path="version",
            )
        if self.identified_at.tzinfo is None or self.identified_at.utcoffset() != timezone.utc.utcoffset(None):
            raise ValidationError(
                "identified_at must be a timezone-aware UTC timestamp",
                code="timestamp_not_utc",
                field_path="identified_at",
            )
        canonical: dict[Stakeholder, tuple[ImpactRating, ...]] = {}
        problems: list[Violation] = []
        for stakeholder in Stakeholder:
            try:
                canonical[stakeholder] = _canonical_ratings(
                    self.id, stakeholder, self.assessments.get(stakeholder, ()))
            except ValidationError as exc:
                problems.extend(exc.violations())
        if problems:
            raise ValidationError(problems, code="incomplete_assessment")
        object.__setattr__(self, "assessments", canonical)

    def rating(self, area: ImpactArea) -> ImpactRating:
        for r in self.assessments[area.stakeholder]:
            if r.area == area.name:
                return r
        raise KeyError(area.ref)


def _canonical_ratings(risk_id: str, stakeholder: Stakeholder,
                       ratings: tuple[ImpactRating, ...]) -> tuple[ImpactRating, ...]:
    expected = AREAS[stakeholder]
    by_area: dict[AreaName, ImpactRating] = {}
    problems: list[Violation] = []
    for r in ratings:
        path = f"assessments.{stakeholder.value}.{r.area.value}"
        if r.area not in expected:
            problems.append(Violation("unknown_area",
                                      f"'{r.area.value}' is not an impact area of {stakeholder.value}", path))
        elif r.area in by_area:
            problems.append(Violation("duplicate_area_rating",
                                      f"duplicate rating for '{r.area.value}'", path))
        else:
            by_area[r.area] = r
    missing = [a for a in expected if a not in by_area]
    if missing:
        names = ", ".join(a.value for a in missing)
        problems.append(Violation(
            "incomplete_assessment",
            f"risk '{risk_id}' is missing {stakeholder.value} ratings for: {names}",
            f"assessments.{stakeholder.value}",
        ))
    if problems:
        raise ValidationError(problems, code="incomplete_assessment")
    return tuple(by_area[a] for a in expected)


@dataclass(frozen=True)
class LevelMismatch:
    """Declared band label disagrees with the label derived from the value."""

    area: ImpactArea
    declared: ImpactLevel
    derived: ImpactLevel


def level_for_impact_value(scale: ImpactScale, value: int) -> ImpactLevel:
    """Band label containing ``value`` (0-100) under a valid scale."""
    if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value <= 100:
        raise ValidationError("value out of range, expected integer 0-100",
                              code="value_out_of_range")
    for band in scale.bands:
        if band.lower <= value <= band.upper:
            return band.level
    raise ValidationError(f"impact scale has no band containing {value}",
                          code="scale_not_contiguous")


def reconcile_declared_level(rating: ImpactRating, scale: ImpactScale,
                             stakeholder: Stakeholder) -> LevelMismatch | None:
    """Flag a declared/derived label disagreement; None when consistent.

    The numeric value stays authoritative for scoring either way; this is
    an advisory check for analyst review.
    """
    derived = level_for_impact_value(scale, rating.value)
    if derived == rating.declared_level:
        return None
    return LevelMismatch(ImpactArea(stakeholder, rating.area), rating.declared_level, derived)


def reconcile_risk(risk: RiskRecord, scale: ImpactScale) -> list[LevelMismatch]:
    """All declared/derived label disagreements in one risk, in area order."""
    out = []
    for stakeholder in Stakeholder:
        for rating in risk.assessments[stakeholder]:
            mismatch = reconcile_declared_level(rating, scale, stakeholder)
            if mismatch is not None:
                out.append(mismatch)
    return out


def validate_context(context: AssessmentContext) -> list[Violation]:
    """Check every context invariant; returns all violations (empty = valid).

    Violations are data, not exceptions: an invalid context can be held and
    inspected, it just cannot be saved or used for scoring.
    """
    out: list[Violation] = []
    out.extend(_validate_weightings(context))
    out.extend(_validate_scale(context.impact_scale))
    out.extend(_validate_likelihood_table(context.likelihood_table))
    out.extend(_validate_thresholds(context.risk_thresholds))
    if not isinstance(context.schema_version, int) or context.schema_version < 1:
        out.append(Violation("bad_schema_version", "schema_version must be a positive integer",
                             "schema_version"))
    return out


def _validate_weightings(context: AssessmentContext) -> list[Violation]:
    out: list[Violation] = []
    for stakeholder in Stakeholder:
        path = f"weightings.{stakeholder.value}"
        weighting = context.weightings.get(stakeholder)
        if weighting is None:
            out.append(Violation("missing_weighting",
                                 f"no priority weighting for {stakeholder.value}", path))
            continue
        if weighting.stakeholder != stakeholder:
            out.append(Violation("weighting_class_mismatch",
                                 f"weighting stored under {stakeholder.value} is declared for "
                                 f"{weighting.stakeholder.value}", path))
            continue
        expected = AREAS[stakeholder]
        unknown = [a for a in weighting.weights if a not in expected]
        missing = [a for a in expected if a not in weighting.weights]
        for area in unknown:
            out.append(Violation("unknown_area",
                                 f"'{area.value}' is not an impact area of {stakeholder.value}",
                                 f"{path}.{area.value}"))
        if missing:
            names = ", ".join(a.value for a in missing)
            out.append(Violation("missing_area", f"no weight assigned for: {names}", path))
        if not unknown and not missing:
            n = len(expected)
            if sorted(weighting.weights.values()) != list(range(1, n + 1)):
                out.append(Violation(
                    "weights_not_permutation",
                    f"weights not a permutation of 1..{n}", path))
    return out


def _validate_scale(scale: ImpactScale) -> list[Violation]:
    out: list[Violation] = []
    path = "impact_scale"
    levels = [band.level for band in scale.bands]
    if levels != list(ImpactLevel):
        out.append(Violation("scale_levels_invalid",
                             "impact scale must have one band per level in order "
                             "minor, moderate, significant", path))
        return out
    for i, band in enumerate(scale.bands):
        if band.lower > band.upper:
            out.append(Violation("scale_band_empty",
                                 f"band '{band.level.value}' has lower {band.lower} > upper {band.upper}",
                                 f"{path}.bands[{i}]"))
    if out:
        return out
    if scale.bands[0].lower != 0:
        out.append(Violation("scale_not_contiguous", "scale must start at 0", path))
    if scale.bands[-1].upper != 100:
        out.append(Violation("scale_not_contiguous", "scale must end at 100", path))
    for prev, nxt in zip(scale.bands, scale.bands[1:]):
        if nxt.lower > prev.upper + 1:
            out.append(Violation("scale_not_contiguous",
                                 f"gap at {prev.upper + 1}", path))
        elif nxt.lower < prev.upper + 1:
            out.append(Violation("scale_not_contiguous",
                                 f"bands overlap at {nxt.lower}", path))
    return out


def _validate_likelihood_table(table: LikelihoodTable) -> list[Violation]:
    out: list[Violation] = []
    path = "likelihood_table"
    missing = [lvl for lvl in LikelihoodLevel if lvl not in table.scores]
    if missing:
        names = ", ".join(lvl.value for lvl in missing)
        out.append(Violation("likelihood_table_incomplete", f"no score for: {names}", path))
        return out
    for lvl, score in table.scores.items():
        if not 0 < score <= 1:
            out.append(Violation("likelihood_score_out_of_range",
                                 f"score for '{lvl.value}' must be in (0, 1]",
                                 f"{path}.{lvl.value}"))
    scores = table.scores
    if not scores[LikelihoodLevel.HIGH] > scores[LikelihoodLevel.MEDIUM] > scores[LikelihoodLevel.LOW]:
        out.append(Violation("likelihood_scores_not_decreasing",
                             "scores must strictly decrease from high to medium to low", path))
    return out


def _validate_thresholds(thresholds: RiskThresholds) -> list[Violation]:
    out: list[Violation] = []
    path = "risk_thresholds"
    levels = [band.level for band in thresholds.bands]
    if levels != list(RiskLevel):
        out.append(Violation("thresholds_invalid",
                             "risk thresholds must have one band per level in order "
                             "low, elevated, significant", path))
        return out
    *bounded, last = thresholds.bands
    if last.upper is not None:
        out.append(Violation("thresholds_invalid", "last band must be unbounded", path))
    uppers = [band.upper for band in bounded]
    if any(u is None for u in uppers):
        out.append(Violation("thresholds_invalid", "only the last band may be unbounded", path))
    elif any(u <= 0 for u in uppers) or sorted(uppers) != uppers or len(set(uppers)) != len(uppers):
        out.append(Violation("thresholds_invalid",
                             "band bounds must be positive and strictly increasing", path))
    return out
