import pytest

from app.core.errors import EmptyInput, GateViolation, UsageError
from app.core.source import LangId
from app.models.schemas import AttackRecordOut, AttackStatus, CorpusRecord, EvalReport
from app.services import eval_service
from app.services.eval_service import EvalService, check_gate

TARGET = "def f(a):\n    return a + 1"


def ref(record_id):
    return CorpusRecord(id=record_id, src_lang="java", tgt_lang="python", source="static int f(int a) {\n    return a + 1;\n}", target=TARGET)


def row(record_id, status, translation, passed):
    return AttackRecordOut(
        id=record_id,
        status=status,
        source="",
        translation=translation,
        passed=passed,
        candidates_tried=0,
    )


RECORDS = [
    row("a", AttackStatus.ADVERSARIAL_FOUND, "def f(*args):\n    return -999", False),
    row("b", AttackStatus.ROBUST, TARGET + "\n", True),
    row("c", AttackStatus.ORIGINAL_FAILURE, "def f(a:\n    return a", False),
    row("d", AttackStatus.ERROR, "", False),
]
REFS = [ref(name) for name in "abcd"]


def test_scores(executor):
    report = EvalService(executor).evaluate(RECORDS, REFS)
    assert report.n == 3
    assert report.pass_at_1 == 66.67
    assert report.rp_at_1 == 33.33
    assert report.rd_at_1 == 50.0
    assert report.em == 33.33
    assert report.code_exec == 66.67
    assert 33.33 < report.bleu < 100.0
    assert report.codebleu is None


def test_code_exec_is_checked_per_target_language(executor, monkeypatch):
    seen = []

    def counting(codes, lang, checker):
        seen.append((lang, len(codes)))
        return 100.0 if lang is LangId.PYTHON else 0.0

    monkeypatch.setattr(eval_service, "code_exec_rate", counting)
    refs = REFS[:2] + [ref("c").model_copy(update={"tgt_lang": LangId.JAVA})]
    report = EvalService(executor).evaluate(RECORDS, refs)
    assert sorted(seen) == [(LangId.JAVA, 1), (LangId.PYTHON, 2)]
    assert report.code_exec == 66.67


def test_error_records_need_no_reference(executor):
    report = EvalService(executor).evaluate(RECORDS, REFS[:3])
    assert report.n == 3


def test_zero_pass_leaves_drop_undefined(executor):
    failures = [row("c", AttackStatus.ORIGINAL_FAILURE, "x = 1", False)]
    report = EvalService(executor).evaluate(failures, REFS)
    assert report.pass_at_1 == 0.0
    assert report.rd_at_1 is None


def test_missing_reference(executor):
    with pytest.raises(UsageError):
        EvalService(executor).evaluate(RECORDS, REFS[1:])


def test_nothing_to_score(executor):
    with pytest.raises(EmptyInput):
        EvalService(executor).evaluate(RECORDS[3:], REFS)


def test_gate():
    report = EvalReport(n=1, pass_at_1=100.0, rp_at_1=40.0, rd_at_1=60.0, em=0.0, bleu=0.0, code_exec=0.0)
    check_gate(report, None)
    check_gate(report, 60.0)
    with pytest.raises(GateViolation) as caught:
        check_gate(report, 10.0)
    assert caught.value.exit_code == 3
    check_gate(report.model_copy(update={"rd_at_1": None}), 0.0)
