"""Unit tests for configuration validation."""

import os

import pytest

from src.config import Config


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Start every test without SPECLAT_* variables."""
    for key in list(os.environ):
        if key.startswith("SPECLAT_"):
            monkeypatch.delenv(key, raising=False)


def test_config_defaults():
    """Test that an empty environment yields the documented defaults."""
    config = Config.from_env()

    assert config.core_cap == 16
    assert config.extension_cap == 10
    assert config.powerset_cap == 4
    assert config.hom_budget == 10_000_000
    assert config.workers == 4
    assert config.self_check_limit == 4096
    assert config.identity_samples == 50_000
    assert config.normalize is False
    assert config.oracle is False
    assert config.log_level == "WARNING"


def test_config_from_env_valid(monkeypatch):
    """Test loading every variable from the environment."""
    env_vars = {
        "SPECLAT_CORE_CAP": "12",
        "SPECLAT_EXTENSION_CAP": "8",
        "SPECLAT_POWERSET_CAP": "3",
        "SPECLAT_HOM_BUDGET": "1_000",
        "SPECLAT_WORKERS": "2",
        "SPECLAT_SELF_CHECK_LIMIT": "0",
        "SPECLAT_IDENTITY_SAMPLES": "100",
        "SPECLAT_NORMALIZE": "true",
        "SPECLAT_ORACLE": "1",
        "SPECLAT_LOG_LEVEL": "debug",
    }
    for key, value in env_vars.items():
        monkeypatch.setenv(key, value)

    config = Config.from_env()

    assert config.core_cap == 12
    assert config.extension_cap == 8
    assert config.powerset_cap == 3
    assert config.hom_budget == 1000
    assert config.workers == 2
    assert config.self_check_limit == 0
    assert config.identity_samples == 100
    assert config.normalize is True
    assert config.oracle is True
    assert config.log_level == "DEBUG"


def test_config_empty_value_uses_default(monkeypatch):
    """Test that a set-but-empty variable falls back to the default."""
    monkeypatch.setenv("SPECLAT_WORKERS", "")

    assert Config.from_env().workers == 4


def test_config_non_integer(monkeypatch):
    """Test that a non-integer value names the variable."""
    monkeypatch.setenv("SPECLAT_CORE_CAP", "many")

    with pytest.raises(ValueError, match="SPECLAT_CORE_CAP must be an integer"):
        Config.from_env()


@pytest.mark.parametrize(
    "key,value,message",
    [
        ("SPECLAT_CORE_CAP", "0", "SPECLAT_CORE_CAP must be between 1 and 64"),
        ("SPECLAT_CORE_CAP", "65", "SPECLAT_CORE_CAP must be between 1 and 64"),
        ("SPECLAT_EXTENSION_CAP", "13", "SPECLAT_EXTENSION_CAP must be between 1 and 12"),
        ("SPECLAT_POWERSET_CAP", "7", "SPECLAT_POWERSET_CAP must be between 1 and 6"),
        ("SPECLAT_HOM_BUDGET", "0", "SPECLAT_HOM_BUDGET must be positive"),
        ("SPECLAT_WORKERS", "0", "SPECLAT_WORKERS must be between 1 and 64"),
        ("SPECLAT_SELF_CHECK_LIMIT", "-1", "SPECLAT_SELF_CHECK_LIMIT must be >= 0"),
        ("SPECLAT_IDENTITY_SAMPLES", "0", "SPECLAT_IDENTITY_SAMPLES must be positive"),
    ],
)
def test_config_out_of_range(monkeypatch, key, value, message):
    """Test that out-of-range values raise ValueError naming the variable."""
    monkeypatch.setenv(key, value)

    with pytest.raises(ValueError, match=message):
        Config.from_env()


def test_config_invalid_log_level(monkeypatch):
    """Test that an unknown log level is rejected."""
    monkeypatch.setenv("SPECLAT_LOG_LEVEL", "VERBOSE")

    with pytest.raises(ValueError, match="SPECLAT_LOG_LEVEL must be one of"):
        Config.from_env()


def test_config_bool_parsing(monkeypatch):
    """Test that only true/1/yes enable a flag."""
    monkeypatch.setenv("SPECLAT_NORMALIZE", "no")
    monkeypatch.setenv("SPECLAT_ORACLE", "YES")

    config = Config.from_env()

    assert config.normalize is False
    assert config.oracle is True
