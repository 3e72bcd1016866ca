"""Tests for YAML run configuration and its merge with CLI values."""

import pytest

from fermat_root_numbers.config import (
    PRECISION_ENV_VAR,
    Command,
    RunConfig,
    build_config,
    load_config_file,
    parse_delta_range,
    precision_from_env,
)
from fermat_root_numbers.errors import ConfigError


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text(
        "ell: 3\n"
        "N: 2\n"
        "r: 3\n"
        "s: 5\n"
        "t: 1\n"
        "delta-range: '1..8'\n"
        "format: csv\n"
        "workers: 2\n"
    )
    return path


class TestDeltaRange:
    def test_parse(self):
        assert parse_delta_range("1..8") == (1, 8)

    @pytest.mark.parametrize("text", ["1-8", "a..8", "1.."])
    def test_bad(self, text):
        with pytest.raises(ConfigError):
            parse_delta_range(text)


# ---------------------------------------------------------------------------
# Config file
# ---------------------------------------------------------------------------


class TestConfigFile:
    def test_load(self, config_file):
        data = load_config_file(config_file)
        assert data["delta_range"] == (1, 8)
        assert data["format"] == "csv"

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("ell: 3\ncolour: blue\n")
        with pytest.raises(ConfigError, match="unknown keys"):
            load_config_file(path)

    def test_not_a_mapping(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("- 3\n- 2\n")
        with pytest.raises(ConfigError, match="mapping"):
            load_config_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_config_file(tmp_path / "nope.yaml")

    def test_empty_file(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("")
        assert load_config_file(path) == {}


# ---------------------------------------------------------------------------
# Merging
# ---------------------------------------------------------------------------


class TestBuildConfig:
    def test_cli_wins(self, config_file):
        config = build_config("sweep", {"format": "json", "workers": None}, str(config_file))
        assert config.command is Command.SWEEP
        assert config.format == "json"
        assert config.workers == 2
        assert config.delta_range == (1, 8)

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv(PRECISION_ENV_VAR, raising=False)
        config = build_config("triples", {"ell": 3, "N": 2})
        assert config.format == "text"
        assert config.precision is None
        assert not config.lenient

    def test_precision_from_env(self, monkeypatch):
        monkeypatch.setenv(PRECISION_ENV_VAR, "12")
        assert build_config("triples", {}).precision == 12
        assert build_config("triples", {"precision": 5}).precision == 5

    @pytest.mark.parametrize("raw", ["twelve", "0"])
    def test_bad_env(self, monkeypatch, raw):
        monkeypatch.setenv(PRECISION_ENV_VAR, raw)
        with pytest.raises(ConfigError, match=PRECISION_ENV_VAR):
            precision_from_env()

    def test_range_needs_sweep(self, config_file):
        with pytest.raises(ConfigError, match="only valid with sweep"):
            build_config("rootnumber", {}, str(config_file))

    def test_all_errors_collected(self):
        config = RunConfig(
            command=Command.ROOTNUMBER, all_triples=True, format="xml", workers=0
        )
        messages = [e.message for e in config.check()]
        assert len(messages) == 3
        assert messages[0] == "all_triples is only valid with sweep"

    def test_empty_range(self):
        with pytest.raises(ConfigError, match="is empty"):
            build_config("sweep", {"delta_range": (8, 1)})

    def test_unknown_command(self):
        with pytest.raises(ValueError):
            build_config("plot", {})
