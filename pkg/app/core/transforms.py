"""Candidate generation over the four statement-exchange rules.

A plan is an ordered sequence of distinct rules. Each plan is applied left to
right to a fresh copy of the unit; at every step one site of the step's rule is
chosen by a generator seeded from (seed, unit id, plan, step) so the candidate
set is reproducible.
"""

import hashlib
import itertools
import logging
import random
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, List, Optional, Sequence, Tuple

from app.core.errors import InapplicableSite
from app.core.rules import RULE_ORDER, RULES, RuleId, Site
from app.core.source import SourceUnit, SyntaxTree, apply_edits, parse, parse_text, syntax_check

if TYPE_CHECKING:
    from app.models.schemas import TestSuite
    from app.services.exec_service import ExecService

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Plan:
    sequence: Tuple[RuleId, ...]

    def __post_init__(self) -> None:
        if len(self.sequence) > len(RULE_ORDER):
            raise ValueError(f"plan length must not exceed {len(RULE_ORDER)}")
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError("plan must not repeat a rule")

    @classmethod
    def parse(cls, letters: str) -> "Plan":
        return cls(tuple(RuleId(letter) for letter in letters))

    def __str__(self) -> str:
        return "".join(rule.value for rule in self.sequence)


@dataclass(frozen=True)
class Variant:
    parent_id: str
    plan: Plan
    sequence: Plan
    site_choices: Tuple[Site, ...]
    text: str
    seed: int


def find_sites(tree: SyntaxTree, text: str, rule: RuleId) -> List[Site]:
    """Sites of ``rule`` in document order; ``tree`` must have been parsed from ``text``."""
    encoded = text.encode("utf-8")
    if tree.source[tree.offset : tree.offset + len(encoded)] != encoded:
        raise InapplicableSite("syntax tree was not parsed from this text")
    sites = RULES[RuleId(rule)].finder(tree)
    return sorted(sites, key=lambda site: (site.span.start, site.span.end))


def apply(rule: RuleId, site: Site, text: str) -> str:
    if site.rule is not RuleId(rule):
        raise InapplicableSite(f"site belongs to rule {site.rule.value}, not {RuleId(rule).value}")
    encoded = text.encode("utf-8")
    if site.span.end > len(encoded) or encoded[site.span.start : site.span.end] != site.anchor.encode("utf-8"):
        raise InapplicableSite(f"text changed at {site.span.start}..{site.span.end} since site discovery")
    return apply_edits(text, site.edits)


def enumerate_plans(rules: Iterable[RuleId]) -> List[Plan]:
    """All ordered sequences of distinct enabled rules, shortest first."""
    enabled = [rule for rule in RULE_ORDER if rule in {RuleId(r) for r in rules}]
    plans: List[Plan] = []
    for length in range(1, len(enabled) + 1):
        plans.extend(Plan(tuple(sequence)) for sequence in itertools.permutations(enabled, length))
    return plans


def _step_rng(seed: int, unit_id: str, plan: Plan, step: int) -> random.Random:
    key = f"{seed}\x1f{unit_id}\x1f{plan}\x1f{step}".encode("utf-8")
    return random.Random(int.from_bytes(hashlib.sha256(key).digest()[:8], "big"))


def apply_plan(unit: SourceUnit, plan: Plan, seed: int) -> Tuple[str, Plan, Tuple[Site, ...]]:
    """Run ``plan`` over ``unit``; returns the text, the effective plan and the chosen sites."""
    text = unit.text
    tree = parse(unit)
    effective: List[RuleId] = []
    chosen: List[Site] = []
    for step, rule in enumerate(plan.sequence):
        sites = find_sites(tree, text, rule)
        if not sites:
            continue
        site = sites[_step_rng(seed, unit.id, plan, step).randrange(len(sites))]
        candidate = apply(rule, site, text)
        problems = syntax_check(candidate, unit.lang)
        if problems:
            logger.warning(
                "rule %s produced invalid code in %s at %d..%d: %s",
                rule.value,
                unit.id,
                site.span.start,
                site.span.end,
                problems[0],
            )
            continue
        if candidate == text:
            continue
        text = candidate
        tree = parse_text(text, unit.lang)
        effective.append(rule)
        chosen.append(site)
    return text, Plan(tuple(effective)), tuple(chosen)


def generate_candidates(unit: SourceUnit, rules: Iterable[RuleId], seed: int) -> List[Variant]:
    seen = {unit.text}
    variants: List[Variant] = []
    for plan in enumerate_plans(rules):
        text, effective, chosen = apply_plan(unit, plan, seed)
        if not effective.sequence or text in seen:
            continue
        seen.add(text)
        variants.append(Variant(unit.id, effective, plan, chosen, text, seed))
    logger.debug("unit %s: %d candidates", unit.id, len(variants))
    return variants


def verify_constraints(
    variant: Variant,
    original: SourceUnit,
    suite: "TestSuite",
    executor: "ExecService",
    timeout_ms: Optional[int] = None,
) -> bool:
    """Whether the variant passes exactly the cases the original passes."""
    expected = executor.passes_all(original.text, original.lang, suite, early_stop=False, timeout_ms=timeout_ms)
    actual = executor.passes_all(variant.text, original.lang, suite, early_stop=False, timeout_ms=timeout_ms)
    return _pass_vector(expected.verdicts) == _pass_vector(actual.verdicts)


def _pass_vector(verdicts: Sequence) -> List[bool]:
    return [verdict.passed for verdict in verdicts]
