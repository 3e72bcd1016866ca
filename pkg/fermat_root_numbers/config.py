"""Run configuration: CLI flags merged over an optional YAML file.

CONFIG FILE FORMAT:
Keys mirror the long CLI flags (dashes become underscores):

    ell: 3
    N: 2
    r: 3
    s: 5
    t: 1
    delta_range: "1..8"
    all_triples: false
    j_table: cal.jt
    format: csv
    lenient: false
    seed: 7
    workers: 4

Flags given on the command line win over the file. Unknown keys are errors.

ENVIRONMENT:
FERMAT_RN_PRECISION sets the working precision M when neither the file nor
the command line does; otherwise M = 2N + 8.
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"

import enum
import logging
import os
from dataclasses import dataclass, fields
from pathlib import Path

import yaml

from fermat_root_numbers.errors import CheckError, ConfigError

logger = logging.getLogger(__name__)

PRECISION_ENV_VAR = "FERMAT_RN_PRECISION"
FORMATS = ("json", "csv", "text")


class Command(enum.Enum):
    ROOTNUMBER = "rootnumber"
    SWEEP = "sweep"
    VERIFY_TABLES = "verify-tables"
    CALIBRATE_J = "calibrate-j"
    VERIFY_APPENDIX = "verify-appendix"
    DECOMPOSE = "decompose"
    CONDUCTOR = "conductor"
    TRIPLES = "triples"


@dataclass(frozen=True)
class RunConfig:
    command: Command
    ell: int | None = None
    N: int | None = None
    r: int | None = None
    s: int | None = None
    t: int | None = None
    delta: int | None = None
    delta_range: tuple[int, int] | None = None
    all_triples: bool = False
    precision: int | None = None
    j_table: str | None = None
    observations: str | None = None
    tables: tuple[str, ...] | None = None
    format: str = "text"
    lenient: bool = False
    seed: int = 0
    workers: int | None = None

    def check(self) -> list[CheckError]:
        errors: list[CheckError] = []

        def fail(key: str, message: str) -> None:
            errors.append(CheckError(source={"key": key}, message=message, entry=self))

        if self.delta_range is not None:
            if self.command is not Command.SWEEP:
                fail("delta_range", "delta_range is only valid with sweep")
            elif self.delta_range[0] > self.delta_range[1]:
                fail("delta_range", f"delta_range {self.delta_range} is empty")
        if self.all_triples and self.command is not Command.SWEEP:
            fail("all_triples", "all_triples is only valid with sweep")
        if self.format not in FORMATS:
            fail("format", f"format must be one of {FORMATS}, got {self.format!r}")
        if self.precision is not None and self.precision < 1:
            fail("precision", f"precision must be positive, got {self.precision}")
        if self.workers is not None and self.workers < 1:
            fail("workers", f"workers must be positive, got {self.workers}")
        return errors


CONFIG_KEYS = frozenset(f.name for f in fields(RunConfig)) - {"command"}


def parse_delta_range(text: str) -> tuple[int, int]:
    """'1..8' -> (1, 8)."""
    lo, sep, hi = str(text).partition("..")
    if not sep:
        raise ConfigError(f"delta range must look like 'lo..hi', got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise ConfigError(f"delta range bounds must be integers, got {text!r}") from None


def load_config_file(path: str | Path) -> dict:
    """Read a YAML options file.

    Args:
        path: Path to the YAML file; keys may use dashes or underscores

    Returns:
        Dict of recognised option names to values, with delta_range parsed
    """
    config_path = Path(path)
    if not config_path.exists():
        raise ConfigError(f"Configuration file not found: {config_path}")
    try:
        with open(config_path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except Exception as e:
        raise ConfigError(f"Failed to load configuration: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{config_path}: top level must be a mapping")

    data = {str(k).replace("-", "_"): v for k, v in data.items()}
    unknown = sorted(set(data) - CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"{config_path}: unknown keys {unknown}")
    if "delta_range" in data and data["delta_range"] is not None:
        data["delta_range"] = parse_delta_range(data["delta_range"])
    if "tables" in data and data["tables"] is not None:
        data["tables"] = tuple(data["tables"])
    logger.debug("Loaded %d configuration keys from %s", len(data), config_path)
    return data


def precision_from_env() -> int | None:
    raw = os.environ.get(PRECISION_ENV_VAR)
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{PRECISION_ENV_VAR}={raw!r} is not an integer") from None
    if value < 1:
        raise ConfigError(f"{PRECISION_ENV_VAR}={value} must be positive")
    return value


def build_config(command: str, cli_values: dict, config_path: str | None = None) -> RunConfig:
    """Merge file values, then CLI values that were actually given."""
    values = load_config_file(config_path) if config_path else {}
    values.update({k: v for k, v in cli_values.items() if k in CONFIG_KEYS and v is not None})
    if values.get("precision") is None:
        values["precision"] = precision_from_env()
    try:
        config = RunConfig(command=Command(command), **values)
    except TypeError as e:
        raise ConfigError(f"invalid configuration: {e}") from e

    errors = config.check()
    if errors:
        logger.warning("Found %d configuration errors", len(errors))
        raise ConfigError("; ".join(e.message for e in errors))
    return config
