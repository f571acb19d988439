import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from app.models.schemas import RunReport

TranslationKey = Tuple[str, str, str]
ReportKey = Tuple[str, str, str, bool, Optional[int]]


@dataclass
class DiagnosticEntry:
    sample_id: str
    stage: str
    error_code: str
    detail: str


@dataclass
class RunCounters:
    translations: int = 0
    translation_hits: int = 0
    executions: int = 0
    execution_hits: int = 0


class RunStore:
    """Run-scoped caches shared by the services; every method is thread-safe."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.translations: Dict[TranslationKey, str] = {}
        self.reports: Dict[ReportKey, RunReport] = {}
        self.compile_checks: Dict[Tuple[str, str], bool] = {}
        self.diagnostics: List[DiagnosticEntry] = []
        self.counters = RunCounters()

    def get_translation(self, key: TranslationKey) -> Optional[str]:
        with self._lock:
            value = self.translations.get(key)
            if value is not None:
                self.counters.translation_hits += 1
            return value

    def set_translation(self, key: TranslationKey, value: str) -> None:
        with self._lock:
            self.translations[key] = value
            self.counters.translations += 1

    def get_report(self, key: ReportKey) -> Optional[RunReport]:
        with self._lock:
            report = self.reports.get(key)
            if report is not None:
                self.counters.execution_hits += 1
            return report

    def set_report(self, key: ReportKey, report: RunReport) -> None:
        with self._lock:
            self.reports[key] = report
            self.counters.executions += 1

    def get_compile_check(self, key: Tuple[str, str]) -> Optional[bool]:
        with self._lock:
            return self.compile_checks.get(key)

    def set_compile_check(self, key: Tuple[str, str], value: bool) -> None:
        with self._lock:
            self.compile_checks[key] = value

    def add_diagnostic(self, entry: DiagnosticEntry) -> None:
        with self._lock:
            self.diagnostics.append(entry)

    def list_diagnostics(self) -> List[DiagnosticEntry]:
        with self._lock:
            return list(self.diagnostics)

    def clear(self) -> None:
        with self._lock:
            self.translations.clear()
            self.reports.clear()
            self.compile_checks.clear()
            self.diagnostics.clear()
            self.counters = RunCounters()


store = RunStore()
