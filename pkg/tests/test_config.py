"""Tests for suite options."""

from __future__ import annotations

import pytest

from algebroid_fn import SEED_ENV_VAR, ZOO, SuiteOptions, UsageError, default_seed


def test_defaults() -> None:
    """All built-in algebroids are used by default."""
    options = SuiteOptions()
    assert options.seed == 0
    assert options.algebroids == tuple(ZOO)
    assert not options.torsionful


def test_comma_separated_algebroids() -> None:
    """Algebroid names may be given as one string."""
    options = SuiteOptions.from_data(algebroids="so3, aff1")
    assert options.algebroids == ("so3", "aff1")


def test_unknown_algebroid() -> None:
    """Unknown names are usage errors."""
    with pytest.raises(UsageError, match="unknown algebroid"):
        SuiteOptions.from_data(algebroids=["so3", "so4"])


def test_default_seed(monkeypatch: pytest.MonkeyPatch) -> None:
    """The seed comes from the environment."""
    assert default_seed() == 0
    monkeypatch.setenv(SEED_ENV_VAR, "42")
    assert default_seed() == 42
    monkeypatch.setenv(SEED_ENV_VAR, "forty-two")
    with pytest.raises(UsageError):
        default_seed()
