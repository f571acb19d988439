import logging
import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from app.core.errors import ConfigError

logger = logging.getLogger(__name__)

CONFIG_ENV = "COTR_CONFIG"
RULE_ORDER = "LEPC"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ToolchainConfig(_Section):
    compile: Optional[str] = None
    run: str


def _python_toolchain() -> ToolchainConfig:
    return ToolchainConfig(run="{python} {main}")


def _java_toolchain() -> ToolchainConfig:
    return ToolchainConfig(
        compile="javac -encoding UTF-8 -nowarn -d {dir} {main}",
        run="java -Xss16m -cp {dir} Main",
    )


class ToolchainsConfig(_Section):
    python: ToolchainConfig = Field(default_factory=_python_toolchain)
    java: ToolchainConfig = Field(default_factory=_java_toolchain)


class TimeoutsConfig(_Section):
    case_ms: int = Field(default=5000, gt=0)
    compile_ms: int = Field(default=30000, gt=0)
    stdout_cap: int = Field(default=64 * 1024, gt=0)


class TranslatorEndpoint(_Section):
    kind: Literal["child_process", "http"] = "child_process"
    spec: str = ""
    timeout_ms: int = Field(default=60000, gt=0)
    max_retries: int = Field(default=2, ge=0)
    max_concurrency: int = Field(default=1, ge=1)


class EmbedderEndpoint(_Section):
    kind: Literal["builtin_hash", "http"] = "builtin_hash"
    dim: int = Field(default=512, gt=0)
    url: str = ""
    timeout_ms: int = Field(default=60000, gt=0)


class AttackSection(_Section):
    verify_g: bool = False
    early_stop: bool = True


class AugmentSection(_Section):
    require_both_changed: bool = True
    verify_with_tests: bool = False
    suites_dir: Optional[str] = None


class CurationSection(_Section):
    python_markers: List[str] = Field(
        default_factory=lambda: ["input(", "sys.stdin", "raw_input("]
    )
    java_markers: List[str] = Field(default_factory=lambda: ["Scanner", "System.in", "args["])


class Config(_Section):
    seed: int = Field(default=0, ge=0)
    parallelism: int = Field(default=1, ge=1)
    rules: str = RULE_ORDER
    toolchains: ToolchainsConfig = Field(default_factory=ToolchainsConfig)
    timeouts: TimeoutsConfig = Field(default_factory=TimeoutsConfig)
    translator: TranslatorEndpoint = Field(default_factory=TranslatorEndpoint)
    embedder: EmbedderEndpoint = Field(default_factory=EmbedderEndpoint)
    attack: AttackSection = Field(default_factory=AttackSection)
    augment: AugmentSection = Field(default_factory=AugmentSection)
    curation: CurationSection = Field(default_factory=CurationSection)

    @field_validator("rules")
    @classmethod
    def _check_rules(cls, value: str) -> str:
        return normalize_rules(value)


def normalize_rules(value: str) -> str:
    """Validate a rule string such as "LEPC" and return it in canonical order."""
    letters = value.strip().upper()
    if not letters:
        raise ValueError("at least one rule must be enabled")
    unknown = sorted(set(letters) - set(RULE_ORDER))
    if unknown:
        raise ValueError(f"unknown rules: {''.join(unknown)}")
    if len(set(letters)) != len(letters):
        raise ValueError("rules must not repeat")
    return "".join(rule for rule in RULE_ORDER if rule in letters)


def load_config(path: Optional[str] = None) -> Config:
    source = path or os.environ.get(CONFIG_ENV)
    if not source:
        return Config()
    config_path = Path(source)
    try:
        raw = tomllib.loads(config_path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {config_path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{config_path}: {exc}") from exc
    try:
        config = Config.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError(f"{config_path}: {_summarize(exc)}") from exc
    logger.info("loaded config from %s", config_path)
    return config


def with_overrides(config: Config, **overrides: Any) -> Config:
    """A validated copy of ``config`` with top-level fields replaced."""
    if not overrides:
        return config
    try:
        return Config.model_validate({**config.model_dump(), **overrides})
    except ValidationError as exc:
        raise ConfigError(f"command line overrides: {_summarize(exc)}") from exc


def _summarize(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(item) for item in error["loc"]) or "<root>"
        parts.append(f"{location}: {error['msg']}")
    return "; ".join(parts)


_active: Optional[Config] = None


def get_config() -> Config:
    global _active
    if _active is None:
        _active = load_config()
    return _active


def set_config(config: Config) -> None:
    global _active
    _active = config
