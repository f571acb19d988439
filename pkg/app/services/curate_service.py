"""Corpus curation: function-level extraction, input-token filtering,
deduplication and method-name consistency, applied in that order."""

import hashlib
import logging
import re
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Pattern, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from app.core.config import CurationSection
from app.core.errors import UsageError
from app.core.metrics import round_half_up, share
from app.core.source import LangId, function_name, parse_text, strip_comments, syntax_check
from app.core.tokens import tokenize
from app.models.schemas import CorpusRecord, CurationReport, LengthStats

logger = logging.getLogger(__name__)

HEURISTICS = ("H1", "H2", "H3", "H4")
_FUNCTION_KINDS = {LangId.JAVA: "method_declaration", LangId.PYTHON: "function_definition"}
_WORD = r"[A-Za-z0-9_]"


def marker_pattern(markers: Sequence[str]) -> Optional[Pattern[str]]:
    """One regex for all markers; identifier-like ends must sit on identifier boundaries."""
    parts = []
    for marker in markers:
        if not marker:
            continue
        part = re.escape(marker)
        if re.match(_WORD, marker[0]):
            part = f"(?<!{_WORD})" + part
        if re.match(_WORD, marker[-1]):
            part += f"(?!{_WORD})"
        parts.append(part)
    return re.compile("|".join(parts)) if parts else None


def is_function_unit(text: str, lang: LangId) -> bool:
    if not text.strip() or syntax_check(text, lang):
        return False
    definitions = parse_text(text, lang).definitions()
    return len(definitions) == 1 and definitions[0].type == _FUNCTION_KINDS[lang]


def normalized_text(text: str, lang: LangId) -> str:
    return " ".join(strip_comments(text, lang).split())


def normalized_name(text: str, lang: LangId) -> str:
    name = function_name(text, lang) or ""
    return name.replace("_", "").lower()


def pair_key(record: CorpusRecord) -> str:
    source = normalized_text(record.source, record.src_lang)
    target = normalized_text(record.target, record.tgt_lang)
    return hashlib.sha256(f"{source}\x00{target}".encode("utf-8")).hexdigest()


class CurateService:
    def __init__(self, section: CurationSection, parallelism: int = 1) -> None:
        self._markers = {
            LangId.PYTHON: marker_pattern(section.python_markers),
            LangId.JAVA: marker_pattern(section.java_markers),
        }
        self._parallelism = parallelism

    def has_input_tokens(self, text: str, lang: LangId) -> bool:
        pattern = self._markers[lang]
        return pattern is not None and pattern.search(text) is not None

    def _check(self, row: Any) -> Tuple[Optional[CorpusRecord], Optional[str], bool]:
        """The parsed record, its first failing per-pair rule, and whether names agree."""
        try:
            record = CorpusRecord.model_validate(row)
        except ValidationError:
            return None, "H1", False
        if record.src_lang == record.tgt_lang:
            return record, "H1", False
        if not (is_function_unit(record.source, record.src_lang) and is_function_unit(record.target, record.tgt_lang)):
            return record, "H1", False
        if self.has_input_tokens(record.source, record.src_lang) or self.has_input_tokens(record.target, record.tgt_lang):
            return record, "H2", False
        names_agree = normalized_name(record.source, record.src_lang) == normalized_name(record.target, record.tgt_lang)
        return record, None, names_agree

    def curate(self, rows: Sequence[Any]) -> Tuple[List[CorpusRecord], CurationReport]:
        with ThreadPoolExecutor(max_workers=self._parallelism) as pool:
            checked = list(pool.map(self._check, rows))
        removed = Counter({rule: 0 for rule in HEURISTICS})
        seen = set()
        kept: List[CorpusRecord] = []
        for record, failed, names_agree in checked:
            if failed is not None:
                removed[failed] += 1
                continue
            key = pair_key(record)
            if key in seen:
                removed["H3"] += 1
                continue
            seen.add(key)
            if not names_agree:
                removed["H4"] += 1
                continue
            kept.append(record)
        report = CurationReport(input_count=len(rows), kept_count=len(kept), removed=dict(removed))
        logger.info(
            "curation kept %d of %d pairs (%s)",
            len(kept),
            len(rows),
            ", ".join(f"{rule}={removed[rule]}" for rule in HEURISTICS),
        )
        return kept, report


def split(
    records: Sequence[CorpusRecord], train: int, valid: int, test: int, seed: int = 0
) -> Dict[str, List[CorpusRecord]]:
    """Deterministic shuffle keyed by (seed, id), then consecutive slices."""
    if min(train, valid, test) < 0:
        raise UsageError("split sizes must be non-negative")
    if train + valid + test > len(records):
        raise UsageError(f"split sizes {train}+{valid}+{test} exceed {len(records)} records")
    ordered = sorted(records, key=lambda record: (hashlib.sha256(f"{seed}:{record.id}".encode("utf-8")).hexdigest(), record.id))
    return {
        "train": ordered[:train],
        "valid": ordered[train : train + valid],
        "test": ordered[train + valid : train + valid + test],
    }


def length_stats(lengths: Sequence[int]) -> LengthStats:
    if not lengths:
        return LengthStats(count=0, average=0.0, mode=0, median=0.0, under_128=0.0, under_256=0.0)
    values = np.asarray(lengths, dtype=np.int64)
    counts = Counter(lengths)
    top = max(counts.values())
    return LengthStats(
        count=len(lengths),
        average=round_half_up(float(values.mean())),
        mode=min(length for length, count in counts.items() if count == top),
        median=round_half_up(float(np.median(values))),
        under_128=round_half_up(share(int((values < 128).sum()), len(lengths))),
        under_256=round_half_up(share(int((values < 256).sum()), len(lengths))),
    )


def corpus_stats(records: Sequence[CorpusRecord]) -> Dict[str, LengthStats]:
    """Token-length statistics per language over both sides of every pair."""
    by_lang: Dict[str, List[int]] = {}
    for record in records:
        by_lang.setdefault(record.src_lang.value, []).append(len(tokenize(record.source)))
        by_lang.setdefault(record.tgt_lang.value, []).append(len(tokenize(record.target)))
    return {lang: length_stats(lengths) for lang, lengths in sorted(by_lang.items())}

