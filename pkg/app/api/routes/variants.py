from fastapi import APIRouter

from app.core.config import normalize_rules
from app.core.errors import UsageError
from app.core.rules import RuleId
from app.core.source import SourceUnit
from app.core.transforms import generate_candidates
from app.models.schemas import VariantOut, VariantsIn, VariantsOut

router = APIRouter(prefix="/variants", tags=["variants"])


@router.post("", response_model=VariantsOut)
def variants(payload: VariantsIn) -> VariantsOut:
    try:
        rules = normalize_rules(payload.rules)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    unit = SourceUnit("unit", payload.lang, payload.source)
    candidates = generate_candidates(unit, [RuleId(letter) for letter in rules], payload.seed)
    return VariantsOut(
        variants=[
            VariantOut(text=variant.text, plan=[rule.value for rule in variant.plan.sequence])
            for variant in candidates
        ]
    )
