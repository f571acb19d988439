from dataclasses import dataclass
from typing import Callable, Dict, List

from app.core.rules import condition, expression, loop, permute
from app.core.rules.base import RULE_ORDER, RuleId, Site
from app.core.source import SyntaxTree


@dataclass(frozen=True)
class Rule:
    id: RuleId
    name: str
    description: str
    finder: Callable[[SyntaxTree], List[Site]]


RULES: Dict[RuleId, Rule] = {
    RuleId.L: Rule(RuleId.L, "loop", "convert between for and while loops", loop.find_sites),
    RuleId.E: Rule(RuleId.E, "expression", "expand or fold compound assignments", expression.find_sites),
    RuleId.P: Rule(RuleId.P, "permute", "swap if/else branches or independent statements", permute.find_sites),
    RuleId.C: Rule(RuleId.C, "condition", "mirror comparisons and rewrite boolean literals", condition.find_sites),
}

__all__ = ["RULES", "RULE_ORDER", "Rule", "RuleId", "Site"]
