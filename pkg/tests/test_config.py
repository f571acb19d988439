import pytest

from app.core.config import CONFIG_ENV, Config, get_config, load_config, normalize_rules, set_config, with_overrides
from app.core.errors import ConfigError


def test_defaults():
    config = load_config()
    assert config == Config()
    assert config.rules == "LEPC"
    assert config.translator.kind == "child_process"
    assert config.embedder.kind == "builtin_hash"
    assert config.toolchains.python.run == "{python} {main}"
    assert "input(" in config.curation.python_markers


def test_toml_file(tmp_path):
    path = tmp_path / "cotr.toml"
    path.write_text(
        'seed = 7\nrules = "cl"\n\n[timeouts]\ncase_ms = 900\n\n[translator]\nkind = "http"\nspec = "http://model/translate"\n',
        encoding="utf-8",
    )
    config = load_config(str(path))
    assert config.seed == 7
    assert config.rules == "LC"
    assert config.timeouts.case_ms == 900
    assert config.translator.spec == "http://model/translate"


def test_environment_variable(tmp_path, monkeypatch):
    path = tmp_path / "env.toml"
    path.write_text("parallelism = 3\n", encoding="utf-8")
    monkeypatch.setenv(CONFIG_ENV, str(path))
    assert load_config().parallelism == 3


@pytest.mark.parametrize(
    "text",
    ["unknown_key = 1\n", "[timeouts]\ncase_ms = 0\n", 'rules = "LX"\n', "seed = [\n"],
    ids=["unknown-key", "out-of-range", "bad-rules", "bad-toml"],
)
def test_invalid_files(tmp_path, text):
    path = tmp_path / "bad.toml"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ConfigError) as caught:
        load_config(str(path))
    assert caught.value.exit_code == 1


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "absent.toml"))


def test_normalize_rules():
    assert normalize_rules("cpel") == "LEPC"
    for bad in ["", "LL", "Z"]:
        with pytest.raises(ValueError):
            normalize_rules(bad)


def test_active_config_can_be_replaced():
    replacement = Config(seed=11)
    set_config(replacement)
    assert get_config() is replacement


def test_overrides_are_validated():
    base = Config(seed=3)
    assert with_overrides(base) is base
    changed = with_overrides(base, rules="pc", parallelism=4)
    assert (changed.seed, changed.rules, changed.parallelism) == (3, "PC", 4)
    assert base.rules == "LEPC"
    with pytest.raises(ConfigError, match="parallelism"):
        with_overrides(base, parallelism=0)
