import logging
from collections import defaultdict
from typing import Dict, List, Optional, Sequence

from app.core.errors import EmptyInput, GateViolation, UsageError
from app.core.metrics import bleu, code_exec_rate, exact_match, pass_at_1, rd_at_1, round_half_up, share
from app.core.source import LangId
from app.core.tokens import tokenize
from app.models.schemas import AttackRecordOut, AttackStatus, CorpusRecord, EvalReport
from app.services.exec_service import ExecService

logger = logging.getLogger(__name__)


class EvalService:
    def __init__(self, executor: ExecService) -> None:
        self._executor = executor

    def evaluate(self, records: Sequence[AttackRecordOut], refs: Sequence[CorpusRecord]) -> EvalReport:
        """Pass@1, RP@1 and RD@1 from attack records, plus EM, BLEU and Code-Exec
        of the recorded translations against the reference targets."""
        scored = [record for record in records if record.status is not AttackStatus.ERROR]
        if not scored:
            raise EmptyInput("no evaluable attack records")
        by_id: Dict[str, CorpusRecord] = {ref.id: ref for ref in refs}
        missing = [record.id for record in scored if record.id not in by_id]
        if missing:
            raise UsageError(f"no reference for records: {', '.join(missing[:5])}")

        n = len(scored)
        pass_pct = pass_at_1([record.status is not AttackStatus.ORIGINAL_FAILURE for record in scored])
        rp_pct = pass_at_1([record.passed for record in scored])
        rd: Optional[float] = None
        if pass_pct > 0:
            rd = round_half_up(rd_at_1(pass_pct, rp_pct))
        else:
            logger.warning("Pass@1 is zero, RD@1 is undefined")

        matches = bleu_total = 0
        codes: Dict[LangId, List[str]] = defaultdict(list)
        for record in scored:
            ref = by_id[record.id]
            matches += exact_match(record.translation, ref.target)
            bleu_total += bleu(tokenize(record.translation), tokenize(ref.target))
            codes[ref.tgt_lang].append(record.translation)
        code_exec = sum(code_exec_rate(group, lang, self._executor) * len(group) for lang, group in codes.items()) / n

        report = EvalReport(
            n=n,
            pass_at_1=round_half_up(pass_pct),
            rp_at_1=round_half_up(rp_pct),
            rd_at_1=rd,
            em=round_half_up(share(matches, n)),
            bleu=round_half_up(bleu_total / n),
            code_exec=round_half_up(code_exec),
        )
        logger.info("evaluated %d records: pass@1=%s rp@1=%s rd@1=%s", n, report.pass_at_1, report.rp_at_1, report.rd_at_1)
        return report


def check_gate(report: EvalReport, max_rd: Optional[float]) -> None:
    if max_rd is None or report.rd_at_1 is None:
        return
    if report.rd_at_1 > max_rd:
        raise GateViolation(f"RD@1 {report.rd_at_1:.2f} exceeds {max_rd:.2f}")

