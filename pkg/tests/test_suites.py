"""Tests for the verification suites."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import pytest

from algebroid_fn import (
    FAIL,
    PASS,
    REJECTED,
    SUITES,
    ZOO,
    Connection,
    SuiteOptions,
    UsageError,
    run_suite,
)

if TYPE_CHECKING:
    from algebroid_fn import Algebroid

SMALL = {"max_degree": 1, "poly_degree": 1, "poly_terms": 1, "coeff_bound": 3, "bundle_rank": 1}


@pytest.mark.parametrize("name", list(SUITES))
@pytest.mark.parametrize("algebroid", ["so3", "aff1_action"])
def test_suite_passes(name: str, algebroid: str) -> None:
    """Every identity holds exactly on random instances."""
    report = run_suite(name, SuiteOptions.from_data(algebroids=[algebroid], seed=3, **SMALL))
    assert report.checks
    assert report.passed, [check.to_record() for check in report.failures()]
    assert report.count(PASS) == len(report.checks)


def test_reports_are_deterministic(action_algebroid: Algebroid) -> None:
    """The same seed gives the same report."""
    options = SuiteOptions.from_data(seed=11, **SMALL)
    first = run_suite("rn", options, algebroids=[action_algebroid])
    second = run_suite("rn", options, algebroids=[action_algebroid])
    assert first == second
    assert first.to_json_lines() == second.to_json_lines()


def test_json_lines(so3_algebroid: Algebroid) -> None:
    """One record per check and a closing summary."""
    report = run_suite("tensoriality", SuiteOptions.from_data(**SMALL), algebroids=[so3_algebroid])
    lines = [json.loads(line) for line in report.to_json_lines().splitlines()]
    assert len(lines) == len(report.checks) + 1
    assert lines[0]["suite"] == "tensoriality"
    assert lines[-1] == {
        "summary": True,
        "suite": "tensoriality",
        "seed": 0,
        "total": len(report.checks),
        PASS: len(report.checks),
        FAIL: 0,
        REJECTED: 0,
    }


def test_connection_with_torsion_is_rejected(so3_algebroid: Algebroid) -> None:
    """A supplied connection with torsion turns checks into rejections."""
    report = run_suite(
        "main",
        SuiteOptions.from_data(**SMALL),
        algebroids=[so3_algebroid],
        connection=Connection.zero(so3_algebroid),
    )
    assert report.count(REJECTED) == len(report.checks)
    assert not report.passed
    witness = report.checks[0].witness
    assert witness is not None
    assert witness["torsion"]["degree"] == 2


def test_torsionful_option_is_rejected() -> None:
    """Random connections with torsion make the covariant identities inapplicable."""
    report = run_suite("icov", SuiteOptions.from_data(algebroids=["so3"], torsionful=True, **SMALL))
    assert report.count(REJECTED) > 0
    assert report.failures()


def test_unknown_suite() -> None:
    """Suite names are checked."""
    with pytest.raises(UsageError, match="unknown suite"):
        run_suite("nope")


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_with_default_options(name: str) -> None:
    """The default sampling options run every suite."""
    report = run_suite(name, SuiteOptions.from_data(algebroids=["so3"], seed=1))
    assert report.checks
    assert report.passed, [check.to_record() for check in report.failures()]


@pytest.mark.slow
@pytest.mark.parametrize("name", list(SUITES))
@pytest.mark.parametrize("algebroid", list(ZOO))
def test_suite_grid(name: str, algebroid: str) -> None:
    """Every identity holds on every built-in algebroid up to degree 2."""
    options = SuiteOptions.from_data(
        algebroids=[algebroid],
        seed=5,
        max_degree=2,
        poly_degree=1,
        poly_terms=2,
        bundle_rank=2,
    )
    report = run_suite(name, options)
    assert report.checks
    assert report.count(FAIL) == 0, [check.to_record() for check in report.failures()]
    assert report.passed


@pytest.mark.slow
@pytest.mark.parametrize("name", ["rn", "icov", "covcov", "main"])
@pytest.mark.parametrize("algebroid", ["so3", "aff1_action", "tangent2"])
@pytest.mark.parametrize("seed", range(20))
def test_bracket_identities_over_seeds(name: str, algebroid: str, seed: int) -> None:
    """The bracket identities hold for all `k, l <= 2` across many seeds."""
    options = SuiteOptions.from_data(algebroids=[algebroid], seed=seed, max_degree=2, poly_degree=1, bundle_rank=1)
    report = run_suite(name, options)
    assert {degree for check in report.checks for degree in check.degrees} >= {0, 1, 2}
    assert report.passed, [check.to_record() for check in report.failures()]


@pytest.mark.parametrize("algebroid", ["so3", "heisenberg"])
def test_oracle_reaches_total_degree_four(algebroid: str) -> None:
    """On rank 3 the brute-force insertion covers `p + q = 4`."""
    report = run_suite("oracle", SuiteOptions.from_data(algebroids=[algebroid], seed=2, **SMALL))
    degrees = {check.degrees for check in report.checks if check.identity == "insertion-bruteforce"}
    assert {(1, 3), (2, 2), (3, 1)} <= degrees
    assert max(p + q for p, q in degrees) == 4
    assert report.passed, [check.to_record() for check in report.failures()]
