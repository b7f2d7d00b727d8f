"""Acceptance suite: the committed result-level checks, one test each.

Run `pytest -s tests/test_acceptance.py` to see one PASS line per
criterion. Every numeric check is exact; the randomized property check is
seeded, so the whole suite is deterministic.
"""
import itertools
import json
import random
import time
from dataclasses import replace
from pathlib import Path

from click.testing import CliRunner
from fastapi.testclient import TestClient

import oracle
from conftest import make_context, make_risk
from eidrisk.api import create_app
from eidrisk.cli import main as cli_main
from eidrisk.model import (
    AREAS,
    ControlEffectiveness,
    ImpactLevel,
    ImpactRating,
    LikelihoodLevel,
    Motivation,
    Stakeholder,
    ThreatCapability,
    default_context,
)
from eidrisk.report import risk_score_to_dict
from eidrisk.samples import example_1, example_2, fixture_document
from eidrisk.scoring import (
    LikelihoodEvidence,
    score_risk,
    stakeholder_impact_score,
)
from eidrisk.store import dumps_document, load_register, save_register

GOLDEN = Path(__file__).parent / "golden"


def _passed(line: str) -> None:
    print(f"PASS  {line}")


def test_worked_example_1_stakeholder_and_overall_scores():
    score = score_risk(example_1(), default_context())
    gov = score.per_stakeholder[Stakeholder.GOVERNMENT]
    eu = score.per_stakeholder[Stakeholder.END_USERS]
    rp = score.per_stakeholder[Stakeholder.RELYING_PARTIES]
    assert (gov.weighted_total, gov.weight_sum, gov.score) == (533, 28, 19)
    assert (eu.weighted_total, eu.weight_sum, eu.score) == (693, 21, 33)
    assert (rp.weighted_total, rp.weight_sum, rp.score) == (218, 15, 15)
    assert score.overall_impact == 22
    _passed("example 1 scores: government 19 (533/28), end-users 33 (693/21), "
            "relying parties 15 (218/15), overall impact 22 (exact)")


def test_worked_example_2_stakeholder_and_overall_scores():
    score = score_risk(example_2(), default_context())
    gov = score.per_stakeholder[Stakeholder.GOVERNMENT]
    eu = score.per_stakeholder[Stakeholder.END_USERS]
    rp = score.per_stakeholder[Stakeholder.RELYING_PARTIES]
    assert (gov.weighted_total, gov.weight_sum, gov.score) == (2103, 28, 75)
    assert (eu.weighted_total, eu.weight_sum, eu.score) == (1666, 21, 79)
    assert (rp.weighted_total, rp.weight_sum, rp.score) == (650, 15, 43)
    assert score.overall_impact == 65
    _passed("example 2 scores: government 75 (2103/28), end-users 79 (1666/21), "
            "relying parties 43 (650/15), overall impact 65 (exact)")


def test_risk_values_and_levels_for_both_examples():
    context = default_context()
    one = score_risk(example_1(), context)
    two = score_risk(example_2(), context)
    assert one.likelihood_score == 1.0
    assert two.likelihood_score == 1.0
    assert one.risk_value == 22.0
    assert one.risk_level.value == "elevated"
    assert two.risk_value == 65.0
    assert two.risk_level.value == "significant"
    _passed("risk values with likelihood score 1: 22 (elevated) and "
            "65 (significant), exact")


def test_likelihood_decision_table_is_total_with_anchored_rows():
    from eidrisk.scoring import likelihood_from_evidence

    combos = list(itertools.product(
        ThreatCapability, Motivation, ControlEffectiveness))
    assert len(combos) == 12
    for capability, motivation, controls in combos:
        level = likelihood_from_evidence(
            LikelihoodEvidence(capability, motivation, controls))
        assert level.value == oracle.LIKELIHOOD[
            (capability.value, motivation.value, controls.value)]

    anchored = [
        ((ThreatCapability.SUFFICIENT, Motivation.HIGH,
          ControlEffectiveness.INEFFECTIVE), LikelihoodLevel.HIGH),
        ((ThreatCapability.SUFFICIENT, Motivation.HIGH,
          ControlEffectiveness.PARTIALLY_EFFECTIVE), LikelihoodLevel.MEDIUM),
    ]
    for evidence, expected in anchored:
        assert likelihood_from_evidence(LikelihoodEvidence(*evidence)) is expected
    for motivation in Motivation:
        for controls in ControlEffectiveness:
            level = likelihood_from_evidence(LikelihoodEvidence(
                ThreatCapability.INSUFFICIENT, motivation, controls))
            assert level is LikelihoodLevel.LOW
    _passed("likelihood decision table: total over all 12 evidence "
            "combinations, anchored rows hold (exact)")


def _assert_matches_oracle(risk, context, score):
    per_class = []
    for stakeholder in Stakeholder:
        pairs = [
            (r.value, context.weightings[stakeholder].weights[r.area])
            for r in risk.assessments[stakeholder]
        ]
        expected = oracle.stakeholder_score(pairs)
        assert score.per_stakeholder[stakeholder].score == expected
        per_class.append(expected)
    impact = oracle.overall_impact(per_class)
    assert score.overall_impact == impact
    combo = (risk.likelihood.threat_capability.value,
             risk.likelihood.motivation.value,
             risk.likelihood.control_effectiveness.value)
    level = oracle.LIKELIHOOD[combo]
    assert score.likelihood_level.value == level
    value = oracle.risk_value(impact, oracle.LIKELIHOOD_SCORES[level])
    assert score.risk_value == float(value)
    assert score.risk_level.value == oracle.risk_level(value)
    return per_class


def test_property_suite_with_rational_oracle():
    started = time.monotonic()
    rng = random.Random(20260819)

    instances = 10_000
    for _ in range(instances):
        risk = make_risk(rng)
        context = make_context(rng)
        score = score_risk(risk, context)
        _assert_matches_oracle(risk, context, score)
        # bounds and attenuation on the same instances
        for stakeholder in Stakeholder:
            values = [r.value for r in risk.assessments[stakeholder]]
            assert min(values) <= score.per_stakeholder[stakeholder].score <= max(values)
        assert 0 <= score.risk_value <= 100
        assert score.risk_value <= score.overall_impact
        if score.likelihood_level is LikelihoodLevel.HIGH:
            assert score.risk_value == score.overall_impact
        elif score.overall_impact > 0:
            assert score.risk_value < score.overall_impact

    for _ in range(1_000):
        risk = make_risk(rng)
        context = make_context(rng)
        stakeholder = rng.choice(list(Stakeholder))
        ratings = risk.assessments[stakeholder]
        index = rng.randrange(len(ratings))
        bumped_value = rng.randint(ratings[index].value, 100)
        bumped = replace(risk, assessments={
            **risk.assessments,
            stakeholder: tuple(
                replace(r, value=bumped_value) if i == index else r
                for i, r in enumerate(ratings)),
        })
        low, high = score_risk(risk, context), score_risk(bumped, context)
        assert (high.per_stakeholder[stakeholder].score
                >= low.per_stakeholder[stakeholder].score)
        assert high.overall_impact >= low.overall_impact
        assert high.risk_value >= low.risk_value

    for _ in range(1_000):
        stakeholder = rng.choice(list(Stakeholder))
        context = make_context(rng)
        weighting = context.weightings[stakeholder]
        value = rng.randint(0, 100)
        ratings = [
            ImpactRating(area, rng.choice(list(ImpactLevel)), value)
            for area in AREAS[stakeholder]
        ]
        assert stakeholder_impact_score(ratings, weighting).score == value
        shuffled = list(ratings)
        rng.shuffle(shuffled)
        assert (stakeholder_impact_score(shuffled, weighting)
                == stakeholder_impact_score(ratings, weighting))

    elapsed = time.monotonic() - started
    assert elapsed < 30.0
    _passed(f"property suite: bounds, monotonicity, permutation invariance, "
            f"equal-value collapse, likelihood attenuation, and oracle "
            f"equivalence on {instances} randomized instances "
            f"({elapsed:.1f}s < 30s)")


def test_round_trip_and_golden_files(tmp_path):
    rng = random.Random(7)
    from eidrisk.store import new_document, upsert_risk

    for case in range(60):
        doc = new_document(make_context(rng))
        for i in range(rng.randint(0, 4)):
            doc = upsert_risk(doc, make_risk(rng, f"risk-{case}-{i}"), "tests")
        path = tmp_path / f"doc-{case}.json"
        save_register(doc, path)
        loaded = load_register(path)
        assert loaded == doc
        assert dumps_document(loaded) == dumps_document(doc)

    register = tmp_path / "register.json"
    save_register(fixture_document(), register)
    assert register.read_text() == (GOLDEN / "register.json").read_text()

    runner = CliRunner()
    golden_by_args = {
        ("score", "example-1"): "score_example_1.txt",
        ("score", "example-2"): "score_example_2.txt",
        ("report",): "report_table.txt",
        ("report", "--format", "markdown"): "report_markdown.md",
        ("report", "--format", "csv"): "report.csv",
    }
    for args, golden_name in golden_by_args.items():
        result = runner.invoke(cli_main, ["--register", str(register), *args],
                               catch_exceptions=False)
        assert result.exit_code == 0
        assert result.output == (GOLDEN / golden_name).read_text(), golden_name
    _passed("round-trip identity on 60 randomized registers; register file "
            "and 5 CLI outputs match golden files byte-for-byte")


def test_api_score_parity_with_library(tmp_path):
    register = tmp_path / "register.json"
    doc = fixture_document()
    save_register(doc, register)
    with TestClient(create_app(register)) as client:
        for risk in doc.risks:
            response = client.get(f"/risks/{risk.id}/score")
            assert response.status_code == 200
            expected = risk_score_to_dict(score_risk(risk, doc.context))
            assert response.json() == json.loads(json.dumps(expected))
    _passed("API parity: GET /risks/{id}/score equals in-process scoring "
            "field-for-field for both fixtures")
