"""Configuration module for speclat.

Loads and validates environment variables per contracts/config-schema.yaml.
Library functions never read the environment themselves: they take keyword
arguments defaulting to the DEFAULT_* constants below, and the CLI passes the
values of a Config instance.
"""

import os
from dataclasses import dataclass


DEFAULT_CORE_CAP = 16
DEFAULT_EXTENSION_CAP = 10
DEFAULT_POWERSET_CAP = 4
DEFAULT_HOM_BUDGET = 10_000_000
DEFAULT_WORKERS = 4
DEFAULT_SELF_CHECK_LIMIT = 4096
DEFAULT_IDENTITY_SAMPLES = 50_000
DEFAULT_LOG_LEVEL = "WARNING"

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass(frozen=True)
class Config:
    """Application configuration loaded from environment variables."""

    # Size caps
    core_cap: int = DEFAULT_CORE_CAP
    extension_cap: int = DEFAULT_EXTENSION_CAP
    powerset_cap: int = DEFAULT_POWERSET_CAP
    hom_budget: int = DEFAULT_HOM_BUDGET

    # Evaluation
    workers: int = DEFAULT_WORKERS
    self_check_limit: int = DEFAULT_SELF_CHECK_LIMIT
    identity_samples: int = DEFAULT_IDENTITY_SAMPLES
    normalize: bool = False
    oracle: bool = False

    # Operational
    log_level: str = DEFAULT_LOG_LEVEL

    @classmethod
    def from_env(cls) -> "Config":
        """Load configuration from environment variables.

        Raises:
            ValueError: If a variable is present but invalid.

        Returns:
            Config: Validated configuration instance.
        """
        core_cap = cls._get_int("SPECLAT_CORE_CAP", DEFAULT_CORE_CAP)
        if not 1 <= core_cap <= 64:
            raise ValueError("SPECLAT_CORE_CAP must be between 1 and 64")

        extension_cap = cls._get_int("SPECLAT_EXTENSION_CAP", DEFAULT_EXTENSION_CAP)
        if not 1 <= extension_cap <= 12:
            raise ValueError("SPECLAT_EXTENSION_CAP must be between 1 and 12")

        powerset_cap = cls._get_int("SPECLAT_POWERSET_CAP", DEFAULT_POWERSET_CAP)
        if not 1 <= powerset_cap <= 6:
            raise ValueError("SPECLAT_POWERSET_CAP must be between 1 and 6")

        hom_budget = cls._get_int("SPECLAT_HOM_BUDGET", DEFAULT_HOM_BUDGET)
        if hom_budget < 1:
            raise ValueError("SPECLAT_HOM_BUDGET must be positive")

        workers = cls._get_int("SPECLAT_WORKERS", DEFAULT_WORKERS)
        if not 1 <= workers <= 64:
            raise ValueError("SPECLAT_WORKERS must be between 1 and 64")

        self_check_limit = cls._get_int(
            "SPECLAT_SELF_CHECK_LIMIT", DEFAULT_SELF_CHECK_LIMIT
        )
        if self_check_limit < 0:
            raise ValueError("SPECLAT_SELF_CHECK_LIMIT must be >= 0")

        identity_samples = cls._get_int(
            "SPECLAT_IDENTITY_SAMPLES", DEFAULT_IDENTITY_SAMPLES
        )
        if identity_samples < 1:
            raise ValueError("SPECLAT_IDENTITY_SAMPLES must be positive")

        log_level = os.getenv("SPECLAT_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
        if log_level not in LOG_LEVELS:
            raise ValueError(
                f"SPECLAT_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}"
            )

        return cls(
            core_cap=core_cap,
            extension_cap=extension_cap,
            powerset_cap=powerset_cap,
            hom_budget=hom_budget,
            workers=workers,
            self_check_limit=self_check_limit,
            identity_samples=identity_samples,
            normalize=cls._get_bool("SPECLAT_NORMALIZE"),
            oracle=cls._get_bool("SPECLAT_ORACLE"),
            log_level=log_level,
        )

    @staticmethod
    def _get_int(key: str, default: int) -> int:
        """Get an integer environment variable.

        Args:
            key: Environment variable name.
            default: Value used when the variable is unset or empty.

        Returns:
            int: Parsed value.

        Raises:
            ValueError: If the variable is set but not an integer.
        """
        value = os.getenv(key)
        if not value:
            return default
        try:
            return int(value.replace("_", ""))
        except ValueError:
            raise ValueError(f"{key} must be an integer, got {value!r}") from None

    @staticmethod
    def _get_bool(key: str) -> bool:
        return os.getenv(key, "false").lower() in ("true", "1", "yes")
