import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.config import Config
from app.core.errors import CodeSyntaxError, EmptyTranslation, ToolkitError, TranslatorTimeout, TransportError, UsageError
from app.core.metrics import pass_at_1, rd_at_1, round_half_up
from app.core.rules import RuleId
from app.core.source import SourceUnit
from app.core.transforms import Plan, generate_candidates, verify_constraints
from app.models.schemas import AttackRecordOut, AttackStatus, AttackSummary, CorpusRecord, RunReport, TestSuite
from app.services.exec_service import ExecService
from app.services.translator_service import TranslatorService
from app.storage.memory import DiagnosticEntry, RunStore

logger = logging.getLogger(__name__)


@dataclass
class AttackOptions:
    rules: str = "LEPC"
    seed: int = 0
    parallelism: int = 1
    verify_g: bool = False
    early_stop: bool = True

    @classmethod
    def from_config(cls, config: Config) -> "AttackOptions":
        return cls(
            rules=config.rules,
            seed=config.seed,
            parallelism=config.parallelism,
            verify_g=config.attack.verify_g,
            early_stop=config.attack.early_stop,
        )


@dataclass
class AdversarialRecord:
    sample_id: str
    status: AttackStatus
    chosen_source: str
    plan: Optional[Plan]
    translation: str
    run_report: Optional[RunReport]
    candidates_tried: int = 0
    candidates_total: int = 0
    skipped_g: int = 0
    translator_failures: int = 0
    diagnostic: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.run_report is not None and self.run_report.overall_pass

    def to_row(self) -> dict:
        out = AttackRecordOut(
            id=self.sample_id,
            status=self.status,
            source=self.chosen_source,
            plan=[rule.value for rule in self.plan.sequence] if self.plan is not None else None,
            translation=self.translation,
            passed=self.passed,
            candidates_tried=self.candidates_tried,
        )
        return out.model_dump(mode="json", by_alias=True)


@dataclass
class AttackResult:
    records: List[AdversarialRecord]
    summary: AttackSummary
    diagnostics: List[DiagnosticEntry] = field(default_factory=list)


class AttackService:
    def __init__(self, translator: TranslatorService, executor: ExecService, store: RunStore) -> None:
        self._translator = translator
        self._executor = executor
        self._store = store

    def _translate(self, text: str, sample: CorpusRecord) -> str:
        try:
            return self._translator.translate(text, sample.src_lang, sample.tgt_lang)
        except EmptyTranslation:
            return ""

    def _error(self, sample: CorpusRecord, stage: str, exc: ToolkitError, **counts: int) -> AdversarialRecord:
        self._store.add_diagnostic(DiagnosticEntry(sample.id, stage, exc.error_code, exc.detail))
        logger.warning("sample %s: %s failed: %s", sample.id, stage, exc.detail)
        return AdversarialRecord(
            sample_id=sample.id,
            status=AttackStatus.ERROR,
            chosen_source=sample.source,
            plan=None,
            translation="",
            run_report=None,
            diagnostic=f"{exc.error_code}: {exc.detail}",
            **counts,
        )

    def attack_sample(self, sample: CorpusRecord, suite: TestSuite, options: AttackOptions) -> AdversarialRecord:
        try:
            translation = self._translate(sample.source, sample)
            report = self._executor.passes_all(translation, sample.tgt_lang, suite, early_stop=options.early_stop)
        except ToolkitError as exc:
            return self._error(sample, "original", exc)

        def keep_original(status: AttackStatus, **counts: int) -> AdversarialRecord:
            return AdversarialRecord(sample.id, status, sample.source, None, translation, report, **counts)

        if not report.overall_pass:
            return keep_original(AttackStatus.ORIGINAL_FAILURE)

        unit = SourceUnit(sample.id, sample.src_lang, sample.source)
        try:
            candidates = generate_candidates(unit, [RuleId(letter) for letter in options.rules], options.seed)
        except CodeSyntaxError as exc:
            logger.warning("sample %s does not parse, no variants: %s", sample.id, exc.detail)
            candidates = []
        if not candidates:
            return keep_original(AttackStatus.NO_VARIANTS)

        tried = skipped = failures = 0
        for variant in candidates:
            if options.verify_g:
                try:
                    consistent = verify_constraints(variant, unit, suite, self._executor)
                except ToolkitError as exc:
                    return self._error(sample, "verify", exc, candidates_total=len(candidates))
                if not consistent:
                    skipped += 1
                    logger.debug("sample %s: plan %s skipped by consistency check", sample.id, variant.plan)
                    continue
            tried += 1
            try:
                candidate_translation = self._translate(variant.text, sample)
            except (TranslatorTimeout, TransportError) as exc:
                failures += 1
                logger.debug("sample %s: translator failed on plan %s: %s", sample.id, variant.plan, exc.detail)
                continue
            try:
                candidate_report = self._executor.passes_all(
                    candidate_translation, sample.tgt_lang, suite, early_stop=options.early_stop
                )
            except ToolkitError as exc:
                return self._error(sample, "candidate", exc, candidates_total=len(candidates))
            if not candidate_report.overall_pass:
                logger.debug("sample %s: adversarial plan %s", sample.id, variant.plan)
                return AdversarialRecord(
                    sample_id=sample.id,
                    status=AttackStatus.ADVERSARIAL_FOUND,
                    chosen_source=variant.text,
                    plan=variant.plan,
                    translation=candidate_translation,
                    run_report=candidate_report,
                    candidates_tried=tried,
                    candidates_total=len(candidates),
                    skipped_g=skipped,
                    translator_failures=failures,
                )
        return keep_original(
            AttackStatus.ROBUST,
            candidates_tried=tried,
            candidates_total=len(candidates),
            skipped_g=skipped,
            translator_failures=failures,
        )

    def attack_dataset(
        self,
        samples: Sequence[CorpusRecord],
        suites: Dict[str, TestSuite],
        options: AttackOptions,
    ) -> AttackResult:
        missing = [sample.id for sample in samples if sample.id not in suites]
        if missing:
            raise UsageError(f"no test suite for samples: {', '.join(missing[:5])}")
        logger.info("attacking %d samples with rules %s", len(samples), options.rules)
        with ThreadPoolExecutor(max_workers=options.parallelism) as pool:
            records = list(pool.map(lambda sample: self.attack_sample(sample, suites[sample.id], options), samples))
        summary = summarize(records)
        logger.info("attack finished: %s", ", ".join(f"{key}={value}" for key, value in summary.statuses.items()))
        return AttackResult(records, summary, self._store.list_diagnostics())


def summarize(records: Sequence[AdversarialRecord]) -> AttackSummary:
    statuses = Counter(record.status.value for record in records)
    found = [record for record in records if record.status is AttackStatus.ADVERSARIAL_FOUND and record.plan]
    rules = Counter(rule.value for record in found for rule in record.plan.sequence)
    lengths = Counter(str(len(record.plan.sequence)) for record in found)
    scored = [record for record in records if record.status is not AttackStatus.ERROR]
    summary = AttackSummary(
        total=len(records),
        statuses={status.value: statuses.get(status.value, 0) for status in AttackStatus},
        candidates_total=sum(record.candidates_total for record in records),
        skipped_g=sum(record.skipped_g for record in records),
        translator_failures=sum(record.translator_failures for record in records),
        rules={rule.value: rules.get(rule.value, 0) for rule in RuleId},
        plan_lengths=dict(sorted(lengths.items())),
    )
    if scored:
        pass_pct, rp_pct = pass_and_robust_pass(scored)
        summary.pass_at_1 = round_half_up(pass_pct)
        summary.rp_at_1 = round_half_up(rp_pct)
        summary.rd_at_1 = round_half_up(rd_at_1(pass_pct, rp_pct)) if pass_pct > 0 else None
    return summary


def pass_and_robust_pass(records: Sequence[AdversarialRecord]) -> Tuple[float, float]:
    """Pass@1 over the original translations and Pass@1 over the attacked set."""
    original = pass_at_1([record.status is not AttackStatus.ORIGINAL_FAILURE for record in records])
    return original, pass_at_1([record.passed for record in records])


def adversarial_training_rows(records: Sequence[AdversarialRecord], samples: Sequence[CorpusRecord]) -> List[dict]:
    """Adversarial sources paired with their reference targets, in corpus format."""
    by_id = {sample.id: sample for sample in samples}
    rows = []
    for record in records:
        if record.status is not AttackStatus.ADVERSARIAL_FOUND:
            continue
        sample = by_id[record.sample_id]
        row = CorpusRecord(
            id=f"{sample.id}#adv",
            src_lang=sample.src_lang,
            tgt_lang=sample.tgt_lang,
            source=record.chosen_source,
            target=sample.target,
        )
        rows.append(row.model_dump(mode="json"))
    return rows

