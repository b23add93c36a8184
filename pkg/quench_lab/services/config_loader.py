"""Loading and resolving experiment configurations.

Precedence is flags > file > experiment preset > model defaults.
"""

import json
import logging
import os

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError as PydanticValidationError

from quench_lab.core.exceptions import ConfigurationError
from quench_lab.models.experiment import ExperimentConfig
from quench_lab.services.catalog import CATALOG

logger = logging.getLogger(__name__)

# TOML sections merged into the top level; [model] and [initial] stay nested
FLAT_SECTIONS = ("run", "parameters", "fit")


def _violation(field: str, message: str) -> Dict[str, str]:
    return {"field": field, "message": message}


def _flatten(data: Dict[str, Any]) -> Dict[str, Any]:
    flat: Dict[str, Any] = {}
    for key, value in data.items():
        if key in FLAT_SECTIONS and isinstance(value, dict):
            flat.update(value)
        else:
            flat[key] = value
    return flat


def load_config_file(path: Path) -> Dict[str, Any]:
    """Read a TOML or JSON config; a run_meta.json contributes its ``config``.

    Raises:
        ConfigurationError: If the file is missing or cannot be parsed
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise ConfigurationError([_violation("config", f"cannot read {path}: {e}")])

    try:
        if path.suffix.lower() == ".json":
            data = json.loads(raw.decode("utf-8"))
            if isinstance(data, dict) and isinstance(data.get("config"), dict):
                data = data["config"]
        else:
            data = tomllib.loads(raw.decode("utf-8"))
    except (json.JSONDecodeError, tomllib.TOMLDecodeError, UnicodeDecodeError) as e:
        raise ConfigurationError([_violation("config", f"cannot parse {path}: {e}")])

    if not isinstance(data, dict):
        raise ConfigurationError([_violation("config", "top level must be a table")])

    logger.debug("Config file loaded", extra={"path": str(path), "keys": sorted(data)})
    return _flatten(data)


def _pydantic_violations(exc: PydanticValidationError) -> List[Dict[str, str]]:
    violations = []
    for error in exc.errors():
        field = ".".join(str(loc) for loc in error["loc"]) or "config"
        message = error["msg"]
        # field_validator messages arrive as "Value error, <message>"
        if message.startswith("Value error, "):
            message = message[len("Value error, ") :]
        violations.append(_violation(field, message))
    return violations


def _semantic_violations(config: ExperimentConfig) -> List[Dict[str, str]]:
    violations = []
    if config.experiment == "custom":
        for field in ("model", "initial", "observable"):
            if getattr(config, field) is None:
                violations.append(_violation(field, "required for custom experiments"))
    if config.out_dir is not None:
        target = Path(config.out_dir)
        existing = next((p for p in [target, *target.parents] if p.exists()), None)
        if existing is not None and (
            not existing.is_dir() or not os.access(existing, os.W_OK)
        ):
            violations.append(_violation("out_dir", f"{existing} is not writable"))
    return violations


def resolve_config(
    experiment: Optional[str] = None,
    file_values: Optional[Dict[str, Any]] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> ExperimentConfig:
    """Merge flags, file values and the experiment preset, then validate.

    Every violation is collected before raising.

    Raises:
        ConfigurationError: With one {field, message} entry per violation
    """
    # null in a file means unset, like an absent key
    file_values = {k: v for k, v in (file_values or {}).items() if v is not None}
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}

    name = overrides.get("experiment") or experiment or file_values.get("experiment")
    if name is None:
        raise ConfigurationError([_violation("experiment", "experiment is required")])
    if name not in CATALOG:
        raise ConfigurationError(
            [
                _violation(
                    "experiment",
                    f"unknown experiment '{name}', expected one of {sorted(CATALOG)}",
                )
            ]
        )

    merged: Dict[str, Any] = dict(CATALOG[name].preset)
    merged.update(file_values)
    merged.update(overrides)
    merged["experiment"] = name

    try:
        config = ExperimentConfig(**merged)
    except PydanticValidationError as e:
        raise ConfigurationError(_pydantic_violations(e))

    violations = _semantic_violations(config)
    if violations:
        raise ConfigurationError(violations)

    logger.debug(
        "Configuration resolved",
        extra={"experiment": name, "overrides": sorted(overrides)},
    )
    return config
