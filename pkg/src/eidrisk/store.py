"""Register persistence: canonical JSON documents with an audit trail.

One register = one human-readable JSON file holding the assessment context,
the risk records and an append-only audit log. Serialization is canonical
(fixed key order, areas in enumeration order, UTC ISO-8601 timestamps) so
re-serializing an unmodified document is byte-identical and files diff
cleanly. Writers are serialized per file and writes are atomic
(temp file + rename), so readers never observe partial documents.
"""
from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable

from .errors import (
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
    validate_context,
)

SCHEMA_VERSION = 1

# Forward migrations keyed by source version; applied in order on load.
_MIGRATIONS: dict[int, Callable[[dict], dict]] = {}

_locks_guard = threading.Lock()
_write_locks: dict[str, threading.Lock] = {}


def _lock_for(path: Path) -> threading.Lock:
    key = str(Path(path).resolve())
    with _locks_guard:
        return _write_locks.setdefault(key, threading.Lock())


def utc_now() -> datetime:
    """Current UTC time truncated to whole seconds (canonical precision)."""
    return datetime.now(timezone.utc).replace(microsecond=0)


@dataclass(frozen=True)
class AuditEntry:
    """One append-only log line describing a register mutation."""

    at: datetime
    actor: str
    action: str
    risk_id: str | None = None
    old_version: int | None = None
    new_version: int | None = None


@dataclass(frozen=True)
class RegisterDocument:
    """A register: context, risks and audit log, as one immutable value."""

    context: AssessmentContext
    risks: tuple[RiskRecord, ...] = ()
    audit_log: tuple[AuditEntry, ...] = ()
    schema_version: int = SCHEMA_VERSION

    def risk(self, risk_id: str) -> RiskRecord:
        for r in self.risks:
            if r.id == risk_id:
                return r
        raise UnknownRiskError(f"no risk with id '{risk_id}' in the register")


def new_document(context: AssessmentContext) -> RegisterDocument:
    return RegisterDocument(context=context)


def validate_document(doc: RegisterDocument) -> list[Violation]:
    """All document-level violations: context rules plus risk id uniqueness."""
    out = validate_context(doc.context)
    if doc.schema_version != SCHEMA_VERSION:
        out.append(Violation("unsupported_schema_version",
                             f"document schema_version must be {SCHEMA_VERSION}",
                             "schema_version"))
    seen: set[str] = set()
    for risk in doc.risks:
        if risk.id in seen:
            out.append(Violation("duplicate_risk_id",
                                 f"risk id '{risk.id}' appears more than once", "risks"))
        seen.add(risk.id)
    return out


def upsert_risk(doc: RegisterDocument, risk: RiskRecord, actor: str,
                *, now: datetime | None = None) -> RegisterDocument:
    """Insert or update a risk, returning a new document value.

    Updates are optimistic: the incoming record must carry the stored
    version, and the stored version is bumped by one. Inserts always land
    at version 1. The input document is never mutated.
    """
    at = now or utc_now()
    stored = next((r for r in doc.risks if r.id == risk.id), None)
    if stored is None:
        new_risk = risk if risk.version == 1 else replace(risk, version=1)
        risks = doc.risks + (new_risk,)
        entry = AuditEntry(at, actor, "add_risk", risk.id, 0, 1)
    else:
        if risk.version != stored.version:
            raise VersionConflictError(
                f"risk '{risk.id}' is at version {stored.version}, "
                f"but the update is based on version {risk.version}")
        new_risk = replace(risk, version=stored.version + 1)
        risks = tuple(new_risk if r.id == risk.id else r for r in doc.risks)
        entry = AuditEntry(at, actor, "update_risk", risk.id,
                           stored.version, stored.version + 1)
    return replace(doc, risks=risks, audit_log=doc.audit_log + (entry,))


def remove_risk(doc: RegisterDocument, risk_id: str, actor: str,
                *, now: datetime | None = None) -> RegisterDocument:
    stored = doc.risk(risk_id)
    entry = AuditEntry(now or utc_now(), actor, "remove_risk", risk_id,
                       stored.version, stored.version + 1)
    return replace(doc,
                   risks=tuple(r for r in doc.risks if r.id != risk_id),
                   audit_log=doc.audit_log + (entry,))


def update_context(doc: RegisterDocument, context: AssessmentContext, actor: str,
                   *, now: datetime | None = None) -> RegisterDocument:
    """Replace the context; identical content is a no-op with no audit entry."""
    if context == doc.context:
        return doc
    entry = AuditEntry(now or utc_now(), actor, "update_context")
    return replace(doc, context=context, audit_log=doc.audit_log + (entry,))


# ---------------------------------------------------------------------------
# Canonical serialization
# ---------------------------------------------------------------------------

def format_timestamp(dt: datetime) -> str:
    if dt.microsecond:
        return dt.strftime("%Y-%m-%dT%H:%M:%S.%fZ")
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_timestamp(raw: Any, path: str) -> datetime:
    if isinstance(raw, str):
        for fmt in ("%Y-%m-%dT%H:%M:%SZ", "%Y-%m-%dT%H:%M:%S.%fZ"):
            try:
                return datetime.strptime(raw, fmt).replace(tzinfo=timezone.utc)
            except ValueError:
                continue
    raise ValidationError("expected a UTC ISO-8601 timestamp ending in Z",
                          code="bad_timestamp", field_path=path)


def _num(x: float | int | None) -> float | int | None:
    """Collapse integral floats so 1.0 serializes as 1."""
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return x


def context_to_dict(context: AssessmentContext) -> dict:
    weightings = {}
    for stakeholder in Stakeholder:
        weighting = context.weightings.get(stakeholder)
        if weighting is None:
            continue
        known = [a for a in AREAS[stakeholder] if a in weighting.weights]
        extra = [a for a in weighting.weights if a not in AREAS[stakeholder]]
        weightings[stakeholder.value] = {
            a.value: weighting.weights[a] for a in known + extra}
    return {
        "id": context.id,
        "title": context.title,
        "scope_notes": context.scope_notes,
        "schema_version": context.schema_version,
        "weightings": weightings,
        "impact_scale": {
            "bands": [{"level": b.level.value, "lower": b.lower, "upper": b.upper}
                      for b in context.impact_scale.bands],
        },
        "likelihood_table": {
            lvl.value: _num(context.likelihood_table.scores[lvl])
            for lvl in LikelihoodLevel if lvl in context.likelihood_table.scores
        },
        "risk_thresholds": {
            "bands": [{"level": b.level.value, "upper": _num(b.upper)}
                      for b in context.risk_thresholds.bands],
        },
    }


def risk_to_dict(risk: RiskRecord) -> dict:
    return {
        "id": risk.id,
        "title": risk.title,
        "narrative": risk.narrative,
        "technique": risk.technique,
        "author": risk.author,
        "identified_at": format_timestamp(risk.identified_at),
        "version": risk.version,
        "assessments": {
            stakeholder.value: [
                {
                    "area": r.area.value,
                    "level": r.declared_level.value,
                    "value": r.value,
                    "description": r.description,
                }
                for r in risk.assessments[stakeholder]
            ]
            for stakeholder in Stakeholder
        },
        "likelihood": {
            "threat_capability": risk.likelihood.threat_capability.value,
            "motivation": risk.likelihood.motivation.value,
            "control_effectiveness": risk.likelihood.control_effectiveness.value,
            "historical_notes": risk.likelihood.historical_notes,
            "level_override": (risk.likelihood.level_override.value
                               if risk.likelihood.level_override else None),
        },
    }


def audit_entry_to_dict(entry: AuditEntry) -> dict:
    return {
        "at": format_timestamp(entry.at),
        "actor": entry.actor,
        "action": entry.action,
        "risk_id": entry.risk_id,
        "old_version": entry.old_version,
        "new_version": entry.new_version,
    }


def document_to_dict(doc: RegisterDocument, *, include_audit: bool = True) -> dict:
    out = {
        "schema_version": doc.schema_version,
        "context": context_to_dict(doc.context),
        "risks": [risk_to_dict(r) for r in doc.risks],
    }
    if include_audit:
        out["audit_log"] = [audit_entry_to_dict(e) for e in doc.audit_log]
    return out


def dumps_document(doc: RegisterDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2) + "\n"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _require(data: Any, path: str) -> dict:
    if not isinstance(data, dict):
        raise ValidationError(f"expected an object", code="bad_field", field_path=path)
    return data


def _str_field(data: dict, key: str, path: str, *, default: str | None = None) -> str:
    value = data.get(key, default)
    if not isinstance(value, str):
        raise ValidationError(f"expected a string for '{key}'",
                              code="bad_field", field_path=f"{path}.{key}")
    return value


def _int_field(data: dict, key: str, path: str, *, default: int | None = None) -> int:
    value = data.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValidationError(f"expected an integer for '{key}'",
                              code="bad_field", field_path=f"{path}.{key}")
    return value


def _enum_field(enum_cls, data: dict, key: str, path: str):
    raw = data.get(key)
    try:
        return enum_cls(raw)
    except ValueError:
        valid = ", ".join(m.value for m in enum_cls)
        raise ValidationError(f"'{raw}' is not one of: {valid}",
                              code="bad_field", field_path=f"{path}.{key}") from None


def context_from_dict(data: Any, path: str = "context") -> AssessmentContext:
    data = _require(data, path)
    weightings_raw = _require(data.get("weightings", {}), f"{path}.weightings")
    weightings: dict[Stakeholder, PriorityWeighting] = {}
    for key, weights_raw in weightings_raw.items():
        try:
            stakeholder = Stakeholder(key)
        except ValueError:
            raise ValidationError(
                f"'{key}' is not a stakeholder class",
                code="unknown_stakeholder", field_path=f"{path}.weightings.{key}") from None
        weights_raw = _require(weights_raw, f"{path}.weightings.{key}")
        weights: dict[AreaName, int] = {}
        for area_key, weight in weights_raw.items():
            try:
                area = AreaName(area_key)
            except ValueError:
                raise ValidationError(
                    f"'{area_key}' is not an impact area name",
                    code="unknown_area",
                    field_path=f"{path}.weightings.{key}.{area_key}") from None
            if not isinstance(weight, int) or isinstance(weight, bool):
                raise ValidationError(
                    f"expected an integer weight for '{area_key}'",
                    code="bad_field", field_path=f"{path}.weightings.{key}.{area_key}")
            weights[area] = weight
        weightings[stakeholder] = PriorityWeighting(stakeholder, weights)

    scale_raw = _require(data.get("impact_scale", {}), f"{path}.impact_scale")
    bands = []
    for i, band_raw in enumerate(scale_raw.get("bands", [])):
        band_path = f"{path}.impact_scale.bands[{i}]"
        band_raw = _require(band_raw, band_path)
        bands.append(ScaleBand(
            level=_enum_field(ImpactLevel, band_raw, "level", band_path),
            lower=_int_field(band_raw, "lower", band_path),
            upper=_int_field(band_raw, "upper", band_path),
        ))

    table_raw = _require(data.get("likelihood_table", {}), f"{path}.likelihood_table")
    scores: dict[LikelihoodLevel, float] = {}
    for key, raw in table_raw.items():
        try:
            level = LikelihoodLevel(key)
        except ValueError:
            raise ValidationError(f"'{key}' is not a likelihood level",
                                  code="bad_field",
                                  field_path=f"{path}.likelihood_table.{key}") from None
        if not isinstance(raw, (int, float)) or isinstance(raw, bool):
            raise ValidationError("expected a number",
                                  code="bad_field",
                                  field_path=f"{path}.likelihood_table.{key}")
        scores[level] = float(raw)

    thresholds_raw = _require(data.get("risk_thresholds", {}), f"{path}.risk_thresholds")
    threshold_bands = []
    for i, band_raw in enumerate(thresholds_raw.get("bands", [])):
        band_path = f"{path}.risk_thresholds.bands[{i}]"
        band_raw = _require(band_raw, band_path)
        upper = band_raw.get("upper")
        if upper is not None and (not isinstance(upper, (int, float)) or isinstance(upper, bool)):
            raise ValidationError("expected a number or null for 'upper'",
                                  code="bad_field", field_path=f"{band_path}.upper")
        threshold_bands.append(ThresholdBand(
            level=_enum_field(RiskLevel, band_raw, "level", band_path),
            upper=upper,
        ))

    return AssessmentContext(
        id=_str_field(data, "id", path, default="default"),
        title=_str_field(data, "title", path, default=""),
        scope_notes=_str_field(data, "scope_notes", path, default=""),
        schema_version=_int_field(data, "schema_version", path, default=1),
        weightings=weightings,
        impact_scale=ImpactScale(bands=tuple(bands)),
        likelihood_table=LikelihoodTable(scores=scores),
        risk_thresholds=RiskThresholds(bands=tuple(threshold_bands)),
    )


def risk_from_dict(data: Any, path: str = "risk", *,
                   identified_at_default: datetime | None = None) -> RiskRecord:
    data = _require(data, path)
    assessments_raw = _require(data.get("assessments", {}), f"{path}.assessments")
    assessments: dict[Stakeholder, tuple[ImpactRating, ...]] = {}
    for key, ratings_raw in assessments_raw.items():
        try:
            stakeholder = Stakeholder(key)
        except ValueError:
            raise ValidationError(f"'{key}' is not a stakeholder class",
                                  code="unknown_stakeholder",
                                  field_path=f"{path}.assessments.{key}") from None
        if not isinstance(ratings_raw, list):
            raise ValidationError("expected a list of ratings", code="bad_field",
                                  field_path=f"{path}.assessments.{key}")
        ratings = []
        for i, rating_raw in enumerate(ratings_raw):
            rating_path = f"{path}.assessments.{key}[{i}]"
            rating_raw = _require(rating_raw, rating_path)
            area = _enum_field(AreaName, rating_raw, "area", rating_path)
            value = rating_raw.get("value")
            if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value <= 100:
                raise ValidationError(
                    f"{area.value}: value out of range, expected integer 0-100",
                    code="value_out_of_range", field_path=f"{rating_path}.value")
            ratings.append(ImpactRating(
                area=area,
                declared_level=_enum_field(ImpactLevel, rating_raw, "level", rating_path),
                value=value,
                description=_str_field(rating_raw, "description", rating_path, default=""),
            ))
        assessments[stakeholder] = tuple(ratings)

    likelihood_raw = _require(data.get("likelihood", {}), f"{path}.likelihood")
    override_raw = likelihood_raw.get("level_override")
    override = None
    if override_raw is not None:
        override = _enum_field(LikelihoodLevel, likelihood_raw, "level_override",
                               f"{path}.likelihood")
    likelihood = LikelihoodEvidence(
        threat_capability=_enum_field(ThreatCapability, likelihood_raw,
                                      "threat_capability", f"{path}.likelihood"),
        motivation=_enum_field(Motivation, likelihood_raw, "motivation",
                               f"{path}.likelihood"),
        control_effectiveness=_enum_field(ControlEffectiveness, likelihood_raw,
                                          "control_effectiveness", f"{path}.likelihood"),
        historical_notes=_str_field(likelihood_raw, "historical_notes",
                                    f"{path}.likelihood", default=""),
        level_override=override,
    )

    if "identified_at" in data:
        identified_at = parse_timestamp(data["identified_at"], f"{path}.identified_at")
    elif identified_at_default is not None:
        identified_at = identified_at_default
    else:
        raise ValidationError("missing 'identified_at' timestamp",
                              code="bad_field", field_path=f"{path}.identified_at")

    return RiskRecord(
        id=_str_field(data, "id", path),
        title=_str_field(data, "title", path, default=""),
        narrative=_str_field(data, "narrative", path, default=""),
        technique=_str_field(data, "technique", path, default=""),
        author=_str_field(data, "author", path, default=""),
        identified_at=identified_at,
        version=_int_field(data, "version", path, default=1),
        assessments=assessments,
        likelihood=likelihood,
    )


def audit_entry_from_dict(data: Any, path: str) -> AuditEntry:
    data = _require(data, path)
    risk_id = data.get("risk_id")
    if risk_id is not None and not isinstance(risk_id, str):
        raise ValidationError("expected a string or null for 'risk_id'",
                              code="bad_field", field_path=f"{path}.risk_id")
    versions = []
    for key in ("old_version", "new_version"):
        v = data.get(key)
        if v is not None and (not isinstance(v, int) or isinstance(v, bool)):
            raise ValidationError(f"expected an integer or null for '{key}'",
                                  code="bad_field", field_path=f"{path}.{key}")
        versions.append(v)
    return AuditEntry(
        at=parse_timestamp(data.get("at"), f"{path}.at"),
        actor=_str_field(data, "actor", path, default=""),
        action=_str_field(data, "action", path),
        risk_id=risk_id,
        old_version=versions[0],
        new_version=versions[1],
    )


def document_from_dict(data: Any) -> RegisterDocument:
    data = _require(data, "document")
    risks_raw = data.get("risks", [])
    if not isinstance(risks_raw, list):
        raise ValidationError("expected a list of risks", code="bad_field", field_path="risks")
    audit_raw = data.get("audit_log", [])
    if not isinstance(audit_raw, list):
        raise ValidationError("expected a list of audit entries", code="bad_field",
                              field_path="audit_log")
    return RegisterDocument(
        schema_version=_int_field(data, "schema_version", "document", default=SCHEMA_VERSION),
        context=context_from_dict(data.get("context")),
        risks=tuple(risk_from_dict(r, f"risks[{i}]") for i, r in enumerate(risks_raw)),
        audit_log=tuple(audit_entry_from_dict(e, f"audit_log[{i}]")
                        for i, e in enumerate(audit_raw)),
    )


# ---------------------------------------------------------------------------
# File I/O
# ---------------------------------------------------------------------------

def save_register(doc: RegisterDocument, destination: Path | str) -> None:
    """Validate then atomically write the canonical serialization.

    An invalid document raises before anything touches the filesystem.
    """
    violations = validate_document(doc)
    if violations:
        raise ValidationError(violations)
    destination = Path(destination)
    payload = dumps_document(doc)
    with _lock_for(destination):
        fd, tmp_name = tempfile.mkstemp(
            dir=destination.parent or Path("."), prefix=f".{destination.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(payload)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp_name, destination)
        except BaseException:
            try:
                os.unlink(tmp_name)
            except OSError:
                pass
            raise


def load_register(source: Path | str) -> RegisterDocument:
    """Parse, migrate forward if needed, and fully validate a register file."""
    text = Path(source).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not a register document: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("not a register document: top level must be an object")
    version = data.get("schema_version")
    if not isinstance(version, int) or isinstance(version, bool):
        raise SchemaError("missing or non-integer schema_version")
    if not 1 <= version <= SCHEMA_VERSION:
        raise SchemaError(
            f"unknown schema version {version}; this build reads versions "
            f"1..{SCHEMA_VERSION}")
    for v in range(version, SCHEMA_VERSION):
        data = _MIGRATIONS[v](data)
        data["schema_version"] = v + 1
    doc = document_from_dict(data)
    violations = validate_document(doc)
    if violations:
        raise ValidationError(violations)
    return doc
