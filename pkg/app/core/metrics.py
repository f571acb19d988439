import logging
from decimal import ROUND_HALF_UP, Decimal
from typing import TYPE_CHECKING, List, Sequence, Union

from sacrebleu.metrics import BLEU

from app.core.errors import EmptyInput, EmptyReference, UndefinedForZeroPass
from app.core.source import LangId
from app.models.schemas import RunReport

if TYPE_CHECKING:
    from app.services.exec_service import ExecService

logger = logging.getLogger(__name__)


def round_half_up(value: float, places: int = 2) -> float:
    quantum = Decimal(1).scaleb(-places)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def share(count: int, total: int) -> float:
    if total <= 0:
        raise EmptyInput("cannot compute a percentage over zero samples")
    return 100.0 * count / total


def pass_at_1(reports: Sequence[Union[RunReport, bool]]) -> float:
    """Share of samples whose single translation passes all of its tests.

    Items are run reports or, where only the outcome was kept, plain pass flags.
    """
    if not reports:
        raise EmptyInput("pass@1 needs at least one run report")
    passed = sum(1 for report in reports if (report.overall_pass if isinstance(report, RunReport) else report))
    return share(passed, len(reports))


def rd_at_1(pass_pct: float, rp_pct: float) -> float:
    """Relative drop of robust pass against plain pass, in percent."""
    if pass_pct <= 0:
        raise UndefinedForZeroPass("RD@1 is undefined when Pass@1 is zero")
    if rp_pct > pass_pct:
        logger.warning("robust pass %.2f exceeds pass %.2f", rp_pct, pass_pct)
    return 100.0 * (1.0 - rp_pct / pass_pct)


def normalize_code(text: str) -> str:
    lines = [line.rstrip() for line in text.replace("\r\n", "\n").split("\n")]
    while lines and not lines[0]:
        lines.pop(0)
    while lines and not lines[-1]:
        lines.pop()
    return "\n".join(lines)


def exact_match(candidate: str, reference: str) -> bool:
    return normalize_code(candidate) == normalize_code(reference)


# zero-match orders above unigrams score 1 / (2 * candidate n-gram count)
_BLEU = BLEU(tokenize="none", smooth_method="floor", smooth_value=0.5, effective_order=True)


def bleu(candidate_tokens: Sequence[str], reference_tokens: Sequence[str]) -> float:
    """Sentence BLEU on a 0..100 scale over pre-tokenized code.

    Uses orders 1..min(4, len(candidate)); no unigram match scores 0.
    """
    if not reference_tokens:
        raise EmptyReference("BLEU needs a non-empty reference")
    if not set(candidate_tokens) & set(reference_tokens):
        return 0.0
    return _BLEU.sentence_score(" ".join(candidate_tokens), [" ".join(reference_tokens)]).score


def code_exec_rate(codes: List[str], lang: LangId, executor: "ExecService") -> float:
    if not codes:
        raise EmptyInput("code-exec needs at least one program")
    return share(sum(1 for code in codes if executor.compile_check(code, lang)), len(codes))
