"""Configuration for lindelof-lab."""

import configparser
import os
from pathlib import Path

# Upper limit for the default worker count
MAX_DEFAULT_WORKERS = 8
DEFAULT_C0 = 0.25
DEFAULT_SEED = 20240101

# Section applied to every subcommand; a section named after a subcommand overrides it
COMMON_SECTION = "common"

ENV_VARS = {
    "LINDELOF_LAB_WORKERS": "Worker threads for sweeps (default: CPU count, at most 8)",
    "LINDELOF_LAB_C0": "Heaviside value at 0, in (0, 1/2) (default: 0.25)",
    "LINDELOF_LAB_SEED": "Seed for random probe points (default: 20240101)",
}


def get_workers() -> int:
    """Get the default number of worker threads.

    Set LINDELOF_LAB_WORKERS to override; otherwise the CPU count, capped at 8.
    """
    if env_value := os.environ.get("LINDELOF_LAB_WORKERS"):
        try:
            workers = int(env_value)
        except ValueError:
            raise ValueError(f"LINDELOF_LAB_WORKERS must be an integer, got {env_value!r}") from None
        if workers < 1:
            raise ValueError(f"LINDELOF_LAB_WORKERS must be >= 1, got {workers}")
        return workers

    return max(1, min(os.cpu_count() or 1, MAX_DEFAULT_WORKERS))


def get_default_c0() -> float:
    """Get the Heaviside convention H(0) = c0.

    Set LINDELOF_LAB_C0 to override. Must lie strictly between 0 and 1/2.
    """
    env_value = os.environ.get("LINDELOF_LAB_C0")
    if not env_value:
        return DEFAULT_C0
    try:
        c0 = float(env_value)
    except ValueError:
        raise ValueError(f"LINDELOF_LAB_C0 must be a number, got {env_value!r}") from None
    if not 0.0 < c0 < 0.5:
        raise ValueError(f"LINDELOF_LAB_C0 must lie in (0, 1/2), got {c0}")
    return c0


def get_default_seed() -> int:
    """Get the seed for randomized probe points.

    Set LINDELOF_LAB_SEED to override.
    """
    env_value = os.environ.get("LINDELOF_LAB_SEED")
    if not env_value:
        return DEFAULT_SEED
    try:
        return int(env_value)
    except ValueError:
        raise ValueError(f"LINDELOF_LAB_SEED must be an integer, got {env_value!r}") from None


def load_config_file(path: Path | str, commands: list[str]) -> dict[str, dict[str, str]]:
    """Read an INI file into a click default_map.

    Keys are option names; dashes and underscores are interchangeable.
    Returns {command: {param: value}} with [common] merged under each command's own section.
    """
    path = Path(path).expanduser()
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, "r", encoding="utf-8") as f:
            parser.read_file(f)
    except OSError as exc:
        raise ValueError(f"cannot read config file {path}: {exc.strerror}") from exc
    except configparser.Error as exc:
        raise ValueError(f"malformed config file {path}: {exc}") from exc

    known = {COMMON_SECTION, *commands}
    unknown = [name for name in parser.sections() if name not in known]
    if unknown:
        raise ValueError(f"unknown section(s) in {path}: {', '.join(unknown)}")

    def section(name: str) -> dict[str, str]:
        if not parser.has_section(name):
            return {}
        return {key.replace("-", "_"): value for key, value in parser.items(name)}

    common = section(COMMON_SECTION)
    return {command: {**common, **section(command)} for command in commands}
