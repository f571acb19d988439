import csv
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.core.config import Config
from app.core.embedding import cosine_distance
from app.core.errors import CodeSyntaxError, ToolkitError
from app.core.pca import Projection, pca_project
from app.core.rules import RuleId
from app.core.source import SourceUnit
from app.core.transforms import Plan, apply_plan, enumerate_plans
from app.models.schemas import AugmentedRecord, AugmentReport, CorpusRecord, EmbeddingRecord, TestSuite
from app.services.embedder_service import EmbedderService
from app.services.exec_service import ExecService

logger = logging.getLogger(__name__)

ORIGINAL_GROUP = "original"
AUGMENTED_GROUP = "augmented"


@dataclass
class AugmentOptions:
    rules: str = "LEPC"
    seed: int = 0
    parallelism: int = 1
    require_both_changed: bool = True
    verify_with_tests: bool = False

    @classmethod
    def from_config(cls, config: Config) -> "AugmentOptions":
        return cls(
            rules=config.rules,
            seed=config.seed,
            parallelism=config.parallelism,
            require_both_changed=config.augment.require_both_changed,
            verify_with_tests=config.augment.verify_with_tests,
        )


@dataclass(frozen=True)
class VariantPair:
    x_prime: str
    y_prime: str
    plan: Plan


@dataclass(frozen=True)
class AugmentedPair:
    pair_id: str
    x_prime: str
    y_prime: str
    plan: Plan
    distance: float

    def to_row(self) -> dict:
        record = AugmentedRecord(
            id=self.pair_id,
            x_prime=self.x_prime,
            y_prime=self.y_prime,
            plan=[rule.value for rule in self.plan.sequence],
            distance=self.distance,
        )
        return record.model_dump(mode="json")


def sides(record: CorpusRecord) -> Tuple[SourceUnit, SourceUnit]:
    x = SourceUnit(f"{record.id}/{record.src_lang.value}", record.src_lang, record.source)
    y = SourceUnit(f"{record.id}/{record.tgt_lang.value}", record.tgt_lang, record.target)
    return x, y


def variant_pairs(
    x: SourceUnit,
    y: SourceUnit,
    rules: Iterable[RuleId],
    seed: int,
    require_both_changed: bool = True,
) -> List[VariantPair]:
    """The same plan applied to both sides, deduplicated on the resulting texts."""
    seen = set()
    pairs: List[VariantPair] = []
    for plan in enumerate_plans(rules):
        x_text, _, _ = apply_plan(x, plan, seed)
        y_text, _, _ = apply_plan(y, plan, seed)
        x_changed, y_changed = x_text != x.text, y_text != y.text
        if require_both_changed and not (x_changed and y_changed):
            continue
        if not (x_changed or y_changed) or (x_text, y_text) in seen:
            continue
        seen.add((x_text, y_text))
        pairs.append(VariantPair(x_text, y_text, plan))
    return pairs


def pair_distance(
    x_vector: np.ndarray, y_vector: np.ndarray, x_prime_vector: np.ndarray, y_prime_vector: np.ndarray
) -> float:
    return cosine_distance(x_vector, x_prime_vector) + cosine_distance(y_vector, y_prime_vector)


def select_augmented(
    pair_id: str,
    x: SourceUnit,
    y: SourceUnit,
    pairs: Sequence[VariantPair],
    embedder: EmbedderService,
) -> Optional[AugmentedPair]:
    """The pair farthest from the originals; the earliest pair wins ties."""
    if not pairs:
        return None
    texts = [x.text, y.text]
    for pair in pairs:
        texts.extend((pair.x_prime, pair.y_prime))
    vectors = embedder.embed(texts)
    best: Optional[AugmentedPair] = None
    for index, pair in enumerate(pairs):
        distance = pair_distance(vectors[0], vectors[1], vectors[2 + 2 * index], vectors[3 + 2 * index])
        if best is None or distance > best.distance:
            best = AugmentedPair(pair_id, pair.x_prime, pair.y_prime, pair.plan, distance)
    return best


class AugmentService:
    def __init__(self, embedder: EmbedderService, executor: Optional[ExecService] = None) -> None:
        self._embedder = embedder
        self._executor = executor

    def _verified(self, record: CorpusRecord, pairs: List[VariantPair], suite: TestSuite) -> List[VariantPair]:
        if self._executor is None:
            raise ToolkitError("test verification needs an execution service")
        kept = []
        for pair in pairs:
            source_ok = self._executor.passes_all(pair.x_prime, record.src_lang, suite).overall_pass
            if source_ok and self._executor.passes_all(pair.y_prime, record.tgt_lang, suite).overall_pass:
                kept.append(pair)
        return kept

    def augment_pair(
        self,
        record: CorpusRecord,
        options: AugmentOptions,
        suites: Optional[Dict[str, TestSuite]] = None,
    ) -> Tuple[Optional[AugmentedPair], Optional[str]]:
        """Best augmented pair for one training pair, or the reason there is none."""
        x, y = sides(record)
        rules = [RuleId(letter) for letter in options.rules]
        try:
            pairs = variant_pairs(x, y, rules, options.seed, options.require_both_changed)
        except CodeSyntaxError as exc:
            logger.warning("pair %s does not parse: %s", record.id, exc.detail)
            return None, "syntax_error"
        if not pairs:
            return None, "no_pairs"
        if options.verify_with_tests:
            suite = (suites or {}).get(record.id)
            if suite is None:
                return None, "no_suite"
            try:
                pairs = self._verified(record, pairs, suite)
            except ToolkitError as exc:
                logger.warning("pair %s: verification failed: %s", record.id, exc.detail)
                return None, "verify_failed"
            if not pairs:
                return None, "verify_failed"
        try:
            return select_augmented(record.id, x, y, pairs, self._embedder), None
        except ToolkitError as exc:
            logger.warning("pair %s: embedding failed: %s", record.id, exc.detail)
            return None, "embed_failed"

    def build_augmented_dataset(
        self,
        train: Sequence[CorpusRecord],
        options: AugmentOptions,
        suites: Optional[Dict[str, TestSuite]] = None,
    ) -> Tuple[List[AugmentedPair], AugmentReport]:
        logger.info("augmenting %d training pairs with rules %s", len(train), options.rules)
        with ThreadPoolExecutor(max_workers=options.parallelism) as pool:
            results = list(pool.map(lambda record: self.augment_pair(record, options, suites), train))
        augmented = [pair for pair, _ in results if pair is not None]
        skipped = Counter(reason for _, reason in results if reason is not None)
        report = AugmentReport(input_count=len(train), augmented_count=len(augmented), skipped=dict(sorted(skipped.items())))
        logger.info("augmented %d of %d pairs", len(augmented), len(train))
        return augmented, report

    def embed_groups(
        self,
        train: Sequence[CorpusRecord],
        augmented: Sequence[AugmentedRecord],
        side: str = "source",
    ) -> List[EmbeddingRecord]:
        """Vectors for the original and augmented populations of one side."""
        original_texts = [record.source if side == "source" else record.target for record in train]
        augmented_texts = [record.x_prime if side == "source" else record.y_prime for record in augmented]
        vectors = self._embedder.embed(original_texts + augmented_texts) if original_texts or augmented_texts else []
        rows = [
            EmbeddingRecord(id=record.id, group=ORIGINAL_GROUP, vector=vector.tolist())
            for record, vector in zip(train, vectors)
        ]
        rows += [
            EmbeddingRecord(id=record.id, group=AUGMENTED_GROUP, vector=vector.tolist())
            for record, vector in zip(augmented, vectors[len(train) :])
        ]
        return rows


def merged_rows(train: Sequence[CorpusRecord], augmented: Sequence[AugmentedPair]) -> List[dict]:
    """Training pairs followed by their augmented counterparts, in corpus format."""
    by_id = {record.id: record for record in train}
    rows = [record.model_dump(mode="json") for record in train]
    for pair in augmented:
        original = by_id[pair.pair_id]
        extra = CorpusRecord(
            id=f"{pair.pair_id}#aug",
            src_lang=original.src_lang,
            tgt_lang=original.tgt_lang,
            source=pair.x_prime,
            target=pair.y_prime,
        )
        rows.append(extra.model_dump(mode="json"))
    return rows


def project_groups(rows: Sequence[EmbeddingRecord]) -> Projection:
    return pca_project([row.vector for row in rows], k=2)


def write_projection(path: Path, rows: Sequence[EmbeddingRecord], projection: Projection) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["id", "pc1", "pc2", "group"])
        for row, (pc1, pc2) in zip(rows, projection.coordinates):
            writer.writerow([row.id, repr(float(pc1)), repr(float(pc2)), row.group])
    logger.info("wrote %d projected points to %s", len(rows), path)
