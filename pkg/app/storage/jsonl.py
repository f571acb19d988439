import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Type, TypeVar

from pydantic import BaseModel, ValidationError

from app.core.errors import UsageError
from app.models.schemas import TestSuite

logger = logging.getLogger(__name__)

Model = TypeVar("Model", bound=BaseModel)


def read_jsonl(path: Path) -> List[Dict[str, Any]]:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except FileNotFoundError as exc:
        raise UsageError(f"input file not found: {path}") from exc
    rows: List[Dict[str, Any]] = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}:{number}: invalid JSON: {exc.msg}") from exc
        if not isinstance(row, dict):
            raise UsageError(f"{path}:{number}: expected a JSON object")
        rows.append(row)
    return rows


def read_models(path: Path, model: Type[Model]) -> List[Model]:
    items: List[Model] = []
    for number, row in enumerate(read_jsonl(path), start=1):
        try:
            items.append(model.model_validate(row))
        except ValidationError as exc:
            raise UsageError(f"{path}: record {number}: {exc.errors()[0]['msg']}") from exc
    return items


def dumps(row: Dict[str, Any]) -> str:
    return json.dumps(row, ensure_ascii=False, separators=(",", ":"))


def write_jsonl(path: Path, rows: Iterable[Dict[str, Any]]) -> int:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        for row in rows:
            handle.write(dumps(row) + "\n")
            count += 1
    logger.info("wrote %d records to %s", count, path)
    return count


def write_json(path: Path, payload: Dict[str, Any]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def read_json(path: Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise UsageError(f"input file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc.msg}") from exc


def load_suites(directory: Path) -> Dict[str, TestSuite]:
    """Every ``*.json`` suite file in ``directory``, keyed by sample id."""
    directory = Path(directory)
    if not directory.is_dir():
        raise UsageError(f"suites directory not found: {directory}")
    suites: Dict[str, TestSuite] = {}
    for path in sorted(directory.glob("*.json")):
        try:
            suite = TestSuite.model_validate(read_json(path))
        except ValidationError as exc:
            raise UsageError(f"{path}: {exc.errors()[0]['msg']}") from exc
        suites[suite.sample_id] = suite
    logger.info("loaded %d test suites from %s", len(suites), directory)
    return suites
