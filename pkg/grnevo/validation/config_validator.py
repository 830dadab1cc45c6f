"""
Configuration parsing and validation for grnevo.
Collects every problem in a config file before failing.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from pydantic import ValidationError


class ConfigValidationError(ValueError):
    """Raised when configuration validation fails."""

    def __init__(self, errors: List[str], source: Optional[str] = None):
        self.errors = list(errors)
        self.source = source
        where = f" in {source}" if source else ""
        super().__init__(
            f"Configuration validation failed{where} with {len(self.errors)} errors: "
            + "; ".join(self.errors)
        )


class ConfigValidator:
    """Parser/validator for flat ``key = value`` run configuration files."""

    # Keys whose values are comma separated lists
    LIST_KEYS = {"targets", "target_generations", "partition", "dominance_range"}

    # Values meaning "unset" for optional keys
    NULL_VALUES = {"", "none", "null"}

    def __init__(self, known_keys: Iterable[str]):
        self.known_keys = set(known_keys)
        self.errors: List[str] = []
        self.logger = logging.getLogger(__name__)

    def parse_text(self, text: str) -> Dict[str, Any]:
        """Parse config text into a raw mapping, recording errors by line."""
        self.errors = []
        values: Dict[str, Any] = {}
        seen: Dict[str, int] = {}
        unknown: List[Tuple[int, str]] = []

        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                self.errors.append(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
                continue
            key, value = (part.strip() for part in line.split("=", 1))
            if not key:
                self.errors.append(f"line {lineno}: missing key before '='")
                continue
            if key not in self.known_keys:
                unknown.append((lineno, key))
                continue
            if key in seen:
                self.errors.append(f"line {lineno}: duplicate key '{key}' (first set on line {seen[key]})")
                continue
            seen[key] = lineno
            values[key] = self.parse_value(key, value)

        if unknown:
            listed = ", ".join(f"'{key}' (line {lineno})" for lineno, key in unknown)
            self.errors.append(f"unknown keys: {listed}")
        return values

    @classmethod
    def parse_value(cls, key: str, value: str) -> Any:
        """Raw value for one key: None for null spellings, a list for list keys."""
        if value.lower() in cls.NULL_VALUES:
            return None
        if key in cls.LIST_KEYS:
            return [item.strip() for item in value.split(",") if item.strip()]
        return value

    def validate(self, model_cls: Any, values: Dict[str, Any]) -> Any:
        """Validate parsed values against a pydantic model, merging its errors."""
        try:
            model = model_cls.model_validate(values)
        except ValidationError as exc:
            for err in exc.errors():
                loc = ".".join(str(part) for part in err["loc"]) or "config"
                self.errors.append(f"{loc}: {err['msg']}")
            return None
        return model

    def load(self, model_cls: Any, path: Union[str, Path]) -> Any:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigValidationError([f"cannot read config: {exc}"], source=str(path)) from exc
        values = self.parse_text(text)
        model = None
        if not self.errors:
            model = self.validate(model_cls, values)
        if self.errors:
            self.logger.error("Rejected config %s: %d errors", path, len(self.errors))
            raise ConfigValidationError(self.errors, source=str(path))
        return model


def validate_overrides(model_cls: Any, base: Dict[str, Any], overrides: Dict[str, Any]) -> Any:
    """Apply ``overrides`` to a dumped config and re-validate the result."""
    unknown = sorted(set(overrides) - set(model_cls.model_fields))
    if unknown:
        raise ConfigValidationError([f"unknown keys: {', '.join(unknown)}"])
    merged = dict(base)
    merged.update(overrides)
    validator = ConfigValidator(model_cls.model_fields)
    model = validator.validate(model_cls, merged)
    if validator.errors:
        raise ConfigValidationError(validator.errors)
    return model
