import re
import shutil
from typing import Dict, List, Sequence, Tuple

import pytest

from app.core.source import LangId
from app.models.schemas import TestCase, TestSuite

requires_jdk = pytest.mark.skipif(
    shutil.which("javac") is None or shutil.which("java") is None,
    reason="JDK not installed",
)

BROKEN_TRANSLATION = "def {name}(*args):\n    return -999"
_JAVA_NAME = re.compile(r"\b(\w+)\s*\(")


def make_suite(sample_id: str, lang: LangId, cases: Sequence[Tuple[str, str]]) -> TestSuite:
    return TestSuite(
        sample_id=sample_id,
        cases=[
            TestCase(name=f"case{index}", drivers={lang: driver}, expected_stdout=expected)
            for index, (driver, expected) in enumerate(cases)
        ],
    )


def method_name(source: str) -> str:
    match = _JAVA_NAME.search(source)
    assert match is not None, source
    return match.group(1)


class BrittleTranslator:
    """Returns the reference target unless the source contains ``token``."""

    def __init__(self, table: Dict[str, Tuple[str, str]], token: str = "while") -> None:
        self._table = table
        self._token = token
        self.calls: List[str] = []

    def translate(self, source: str, src: LangId, tgt: LangId) -> str:
        self.calls.append(source)
        python_name, target = self._table[method_name(source)]
        if self._token in source:
            return BROKEN_TRANSLATION.format(name=python_name)
        return target


CLAMP_SUM = (
    "def clamp_sum(n, limit):\n"
    "    total = 0\n"
    "    for i in range(n):\n"
    "        total += i\n"
    "    if total > limit:\n"
    "        return limit\n"
    "    else:\n"
    "        return total\n"
)
