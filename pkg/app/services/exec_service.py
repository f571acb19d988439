"""Execution oracle: compile and run code-plus-driver programs per test case.

Every job gets a fresh temporary directory, stdin from /dev/null and its own
process group, which is killed as a whole on timeout or once stdout passes the
cap. Java programs for a suite are compiled once with one static method per
case and a ``main`` dispatching on ``args[0]``; each case then runs in its own
JVM.
"""

import hashlib
import logging
import os
import shlex
import shutil
import signal
import subprocess
import sys
import tempfile
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Callable, Dict, List, Optional, Sequence, Tuple

from app.core.config import Config, ToolchainConfig, get_config
from app.core.errors import SandboxSetupFailure, ToolchainMissing
from app.core.source import LangId
from app.models.schemas import RunReport, TestCase, TestSuite, Verdict, VerdictValue
from app.storage.memory import RunStore, store

logger = logging.getLogger(__name__)

JAVA_MAIN = "Main.java"
PYTHON_MAIN = "main.py"
READ_CHUNK = 64 * 1024
READER_GRACE_S = 5.0


def normalize_output(text: str) -> str:
    """Trailing whitespace stripped per line, exactly one trailing newline."""
    lines = [line.rstrip() for line in text.replace("\r\n", "\n").split("\n")]
    while lines and not lines[-1]:
        lines.pop()
    return "\n".join(lines) + "\n"


def _digest(*parts: str) -> str:
    hasher = hashlib.sha256()
    for part in parts:
        hasher.update(part.encode("utf-8"))
        hasher.update(b"\x00")
    return hasher.hexdigest()


def java_program(code: str, drivers: Sequence[str]) -> str:
    cases = []
    dispatch = []
    for index, driver in enumerate(drivers):
        cases.append(f"static void __case{index}() throws Exception {{\n{driver}\n}}\n")
        dispatch.append(f"            case {index}: __case{index}(); break;\n")
    return (
        "import java.util.*;\n"
        "public class Main {\n"
        f"{code}\n\n"
        + "".join(cases)
        + "    public static void main(String[] args) throws Exception {\n"
        "        switch (Integer.parseInt(args[0])) {\n"
        + "".join(dispatch)
        + "            default: break;\n"
        "        }\n"
        "    }\n"
        "}\n"
    )


def python_program(code: str, driver: str) -> str:
    return f"{code}\n\n{driver}\n"


def _kill_group(process: subprocess.Popen) -> None:
    try:
        os.killpg(process.pid, signal.SIGKILL)
    except ProcessLookupError:
        pass


def _drain(stream: BinaryIO, buffer: bytearray, limit: int, on_full: Optional[Callable[[], None]]) -> None:
    """Read ``stream`` into ``buffer`` up to ``limit`` bytes.

    With ``on_full`` the reader calls it and stops at the limit; without it the
    remaining output is read and dropped so the child never blocks on the pipe.
    """
    with stream:
        while True:
            chunk = stream.read1(READ_CHUNK)
            if not chunk:
                return
            room = limit - len(buffer)
            if room > 0:
                buffer.extend(chunk[:room])
            if len(buffer) >= limit and on_full is not None:
                on_full()
                return


@dataclass(frozen=True)
class _Outcome:
    returncode: Optional[int]
    timed_out: bool
    stdout: str
    stderr: str
    overflow: bool
    duration_ms: int


class ExecService:
    def __init__(self, config: Config, store: RunStore) -> None:
        self._toolchains: Dict[LangId, ToolchainConfig] = {
            LangId.JAVA: config.toolchains.java,
            LangId.PYTHON: config.toolchains.python,
        }
        self._timeouts = config.timeouts
        self._store = store
        self._available: Dict[LangId, bool] = {}
        self._lock = threading.Lock()

    def available(self, lang: LangId) -> bool:
        with self._lock:
            if lang not in self._available:
                toolchain = self._toolchains[lang]
                templates = [toolchain.run] + ([toolchain.compile] if toolchain.compile else [])
                self._available[lang] = all(self._executable(template) is not None for template in templates)
            return self._available[lang]

    def _executable(self, template: str) -> Optional[str]:
        words = shlex.split(template)
        if not words:
            return None
        if words[0] == "{python}":
            return sys.executable
        return shutil.which(words[0])

    def _require(self, lang: LangId) -> None:
        if not self.available(lang):
            raise ToolchainMissing(f"no {lang.value} toolchain found on PATH")

    def _argv(self, template: str, sandbox: Path, main: str) -> List[str]:
        return shlex.split(
            template.format(
                dir=shlex.quote(str(sandbox)),
                main=shlex.quote(str(sandbox / main)),
                python=shlex.quote(sys.executable),
            )
        )

    def _run(self, argv: List[str], sandbox: Path, timeout_ms: int) -> _Outcome:
        cap = self._timeouts.stdout_cap
        started = time.monotonic()
        try:
            process = subprocess.Popen(
                argv,
                cwd=sandbox,
                stdin=subprocess.DEVNULL,
                stdout=subprocess.PIPE,
                stderr=subprocess.PIPE,
                start_new_session=True,
            )
        except FileNotFoundError as exc:
            raise ToolchainMissing(f"cannot start {argv[0]}: {exc}") from exc
        out, err = bytearray(), bytearray()
        readers = [
            # stdout past the cap kills the whole group; stderr past it is discarded
            threading.Thread(target=_drain, args=(process.stdout, out, cap + 1, lambda: _kill_group(process)), daemon=True),
            threading.Thread(target=_drain, args=(process.stderr, err, cap, None), daemon=True),
        ]
        for reader in readers:
            reader.start()
        timed_out = False
        try:
            process.wait(timeout=timeout_ms / 1000)
        except subprocess.TimeoutExpired:
            timed_out = True
            _kill_group(process)
            process.wait()
        for reader in readers:
            reader.join(timeout=READER_GRACE_S)
        duration_ms = int((time.monotonic() - started) * 1000)
        overflow = len(out) > cap
        return _Outcome(
            returncode=None if timed_out else process.returncode,
            timed_out=timed_out and not overflow,
            stdout=bytes(out[:cap]).decode("utf-8", errors="replace"),
            stderr=bytes(err).decode("utf-8", errors="replace"),
            overflow=overflow,
            duration_ms=duration_ms,
        )

    def _judge(self, case: TestCase, outcome: _Outcome) -> Verdict:
        if outcome.timed_out:
            value = VerdictValue.TIMEOUT
        elif outcome.overflow:
            value = VerdictValue.WRONG_OUTPUT
        elif outcome.returncode != 0:
            value = VerdictValue.RUNTIME_ERROR
        elif normalize_output(outcome.stdout) != normalize_output(case.expected_stdout):
            value = VerdictValue.WRONG_OUTPUT
        else:
            value = VerdictValue.PASS
        return Verdict(
            case=case.name,
            value=value,
            stdout=outcome.stdout,
            stderr=outcome.stderr,
            duration_ms=outcome.duration_ms,
        )

    def _sandbox(self) -> tempfile.TemporaryDirectory:
        try:
            return tempfile.TemporaryDirectory(prefix="cotr-")
        except OSError as exc:
            raise SandboxSetupFailure(f"cannot create sandbox directory: {exc}") from exc

    def _write(self, sandbox: Path, name: str, text: str) -> None:
        try:
            (sandbox / name).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise SandboxSetupFailure(f"cannot write {name}: {exc}") from exc

    def _compile_java(self, sandbox: Path, program: str) -> Tuple[bool, str]:
        self._write(sandbox, JAVA_MAIN, program)
        toolchain = self._toolchains[LangId.JAVA]
        if not toolchain.compile:
            return True, ""
        outcome = self._run(self._argv(toolchain.compile, sandbox, JAVA_MAIN), sandbox, self._timeouts.compile_ms)
        if outcome.timed_out:
            return False, "compilation timed out"
        return outcome.returncode == 0, outcome.stderr or outcome.stdout

    def _timeout(self, case: TestCase, override: Optional[int]) -> int:
        if override is not None:
            return override
        return case.timeout_ms if case.timeout_ms is not None else self._timeouts.case_ms

    def execute(self, code: str, lang: LangId, case: TestCase, sandbox_dir: Path, timeout_ms: Optional[int] = None) -> Verdict:
        """Run one case of ``code`` inside ``sandbox_dir``."""
        self._require(lang)
        sandbox = Path(sandbox_dir)
        driver = case.drivers.get(lang)
        if driver is None:
            raise SandboxSetupFailure(f"case {case.name!r} has no {lang.value} driver")
        if not code.strip():
            return Verdict(case=case.name, value=VerdictValue.COMPILE_ERROR, stderr="empty program")
        toolchain = self._toolchains[lang]
        if lang is LangId.JAVA:
            compiled, message = self._compile_java(sandbox, java_program(code, [driver]))
            if not compiled:
                return Verdict(case=case.name, value=VerdictValue.COMPILE_ERROR, stderr=message)
            argv = self._argv(toolchain.run, sandbox, JAVA_MAIN) + ["0"]
        else:
            if not self._python_compiles(code):
                return Verdict(case=case.name, value=VerdictValue.COMPILE_ERROR, stderr="code does not byte-compile")
            self._write(sandbox, PYTHON_MAIN, python_program(code, driver))
            if toolchain.compile:
                outcome = self._run(self._argv(toolchain.compile, sandbox, PYTHON_MAIN), sandbox, self._timeouts.compile_ms)
                if outcome.timed_out or outcome.returncode != 0:
                    return Verdict(case=case.name, value=VerdictValue.COMPILE_ERROR, stderr=outcome.stderr)
            argv = self._argv(toolchain.run, sandbox, PYTHON_MAIN)
        return self._judge(case, self._run(argv, sandbox, self._timeout(case, timeout_ms)))

    def passes_all(
        self,
        code: str,
        lang: LangId,
        suite: TestSuite,
        early_stop: bool = True,
        timeout_ms: Optional[int] = None,
    ) -> RunReport:
        key = (_digest(code), lang.value, _digest(suite.model_dump_json()), early_stop, timeout_ms)
        cached = self._store.get_report(key)
        if cached is not None:
            return cached
        report = self._run_suite(code, lang, suite, early_stop, timeout_ms)
        self._store.set_report(key, report)
        logger.debug(
            "%s suite %s: %s",
            lang.value,
            suite.sample_id,
            ",".join(verdict.value.value for verdict in report.verdicts),
        )
        return report

    def _run_suite(self, code: str, lang: LangId, suite: TestSuite, early_stop: bool, timeout_ms: Optional[int]) -> RunReport:
        self._require(lang)
        total = len(suite.cases)
        missing = [case.name for case in suite.cases if lang not in case.drivers]
        if missing:
            raise SandboxSetupFailure(f"suite {suite.sample_id!r} lacks {lang.value} drivers for {', '.join(missing)}")
        if not code.strip():
            return self._failed(suite, VerdictValue.COMPILE_ERROR, "empty program", early_stop)
        verdicts: List[Verdict] = []
        with self._sandbox() as directory:
            sandbox = Path(directory)
            if lang is LangId.JAVA:
                program = java_program(code, [case.drivers[lang] for case in suite.cases])
                compiled, message = self._compile_java(sandbox, program)
                if not compiled:
                    return self._failed(suite, VerdictValue.COMPILE_ERROR, message, early_stop)
                for index, case in enumerate(suite.cases):
                    argv = self._argv(self._toolchains[lang].run, sandbox, JAVA_MAIN) + [str(index)]
                    verdicts.append(self._judge(case, self._run(argv, sandbox, self._timeout(case, timeout_ms))))
                    if early_stop and not verdicts[-1].passed:
                        break
            else:
                for case in suite.cases:
                    verdicts.append(self.execute(code, lang, case, sandbox, timeout_ms))
                    if early_stop and not verdicts[-1].passed:
                        break
        return RunReport(verdicts=verdicts, total_cases=total)

    def _failed(self, suite: TestSuite, value: VerdictValue, message: str, early_stop: bool) -> RunReport:
        cases = suite.cases[:1] if early_stop else suite.cases
        verdicts = [Verdict(case=case.name, value=value, stderr=message) for case in cases]
        return RunReport(verdicts=verdicts, total_cases=len(suite.cases))

    def _python_compiles(self, code: str) -> bool:
        try:
            compile(code, "<translation>", "exec")
        except (SyntaxError, ValueError):
            return False
        return True

    def compile_check(self, code: str, lang: LangId) -> bool:
        if not code.strip():
            return False
        key = (_digest(code), lang.value)
        cached = self._store.get_compile_check(key)
        if cached is not None:
            return cached
        if lang is LangId.PYTHON:
            result = self._python_compiles(code)
        else:
            self._require(lang)
            with self._sandbox() as directory:
                result, _ = self._compile_java(Path(directory), java_program(code, []))
        self._store.set_compile_check(key, result)
        return result


_service: Optional[ExecService] = None


def get_exec_service() -> ExecService:
    global _service
    if _service is None:
        _service = ExecService(get_config(), store)
    return _service
