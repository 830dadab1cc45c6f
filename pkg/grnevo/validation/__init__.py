from grnevo.validation.config_validator import (
    ConfigValidationError,
    ConfigValidator,
    validate_overrides,
)

__all__ = ["ConfigValidationError", "ConfigValidator", "validate_overrides"]
