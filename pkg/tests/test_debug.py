"""Tests for the environment report."""

from __future__ import annotations

import io

import pytest

from algebroid_fn import ENV_PREFIX, REPORTED_PACKAGES, print_debug_info


def test_report_lists_variables_and_packages(monkeypatch: pytest.MonkeyPatch) -> None:
    """Package variables and reported distributions are listed."""
    monkeypatch.setenv(f"{ENV_PREFIX}_SEED", "5")
    monkeypatch.setenv("UNRELATED_SEED", "6")
    stream = io.StringIO()
    print_debug_info(stream)
    report = stream.getvalue()
    assert f"`{ENV_PREFIX}_SEED`: `5`" in report
    assert "UNRELATED_SEED" not in report
    for package in REPORTED_PACKAGES:
        assert f"`{package}`" in report
