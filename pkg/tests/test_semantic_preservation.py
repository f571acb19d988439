"""Every variant of every mini-corpus unit passes exactly the cases its original passes."""

from concurrent.futures import ThreadPoolExecutor

import pytest

from app.core.rules import RULE_ORDER
from app.core.source import LangId, SourceUnit
from app.core.transforms import generate_candidates
from app.models.schemas import TestCase, TestSuite, VerdictValue
from tests.fixtures.mini_corpus import JAVA_UNITS, PYTHON_UNITS
from tests.support import requires_jdk


def recorded_suite(executor, unit_id, lang, text, drivers):
    """Suite whose expected output is whatever the original prints."""
    recording = TestSuite(
        sample_id=unit_id,
        cases=[TestCase(name=f"case{i}", drivers={lang: d}, expected_stdout="") for i, d in enumerate(drivers)],
    )
    baseline = executor.passes_all(text, lang, recording, early_stop=False)
    assert all(v.value in (VerdictValue.PASS, VerdictValue.WRONG_OUTPUT) for v in baseline.verdicts), baseline
    return TestSuite(
        sample_id=unit_id,
        cases=[
            case.model_copy(update={"expected_stdout": verdict.stdout})
            for case, verdict in zip(recording.cases, baseline.verdicts)
        ],
    )


def check_unit(executor, unit_id, lang, text, drivers):
    suite = recorded_suite(executor, unit_id, lang, text, drivers)
    assert executor.passes_all(text, lang, suite).overall_pass
    variants = generate_candidates(SourceUnit(unit_id, lang, text), RULE_ORDER, seed=0)
    with ThreadPoolExecutor(max_workers=4) as pool:
        reports = list(pool.map(lambda v: executor.passes_all(v.text, lang, suite, early_stop=False), variants))
    failures = [(str(v.plan), v.text, r.verdicts) for v, r in zip(variants, reports) if not r.overall_pass]
    assert failures == []
    return len(variants)


def test_mini_corpus_size():
    assert len(PYTHON_UNITS) >= 20 and len(JAVA_UNITS) >= 20
    assert all(len(drivers) >= 3 for _, _, drivers in PYTHON_UNITS + JAVA_UNITS)


@pytest.mark.parametrize("unit_id,text,drivers", PYTHON_UNITS, ids=[u[0] for u in PYTHON_UNITS])
def test_python_variants_preserve_behaviour(executor, unit_id, text, drivers):
    check_unit(executor, unit_id, LangId.PYTHON, text, drivers)


@requires_jdk
@pytest.mark.parametrize("unit_id,text,drivers", JAVA_UNITS, ids=[u[0] for u in JAVA_UNITS])
def test_java_variants_preserve_behaviour(executor, unit_id, text, drivers):
    check_unit(executor, unit_id, LangId.JAVA, text, drivers)


def test_python_corpus_yields_variants():
    total = sum(len(generate_candidates(SourceUnit(u, LangId.PYTHON, t), RULE_ORDER, seed=0)) for u, t, _ in PYTHON_UNITS)
    assert total >= len(PYTHON_UNITS)


def test_java_corpus_yields_variants():
    total = sum(len(generate_candidates(SourceUnit(u, LangId.JAVA, t), RULE_ORDER, seed=0)) for u, t, _ in JAVA_UNITS)
    assert total >= len(JAVA_UNITS)
