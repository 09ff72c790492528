"""Configuration for the pytest test suite."""

from __future__ import annotations

from pathlib import Path
from random import Random

import pytest

from algebroid_fn import SEED_ENV_VAR, Algebroid, Connection, aff1_action, default_connection, so3, tangent

SPECS_DIR = Path(__file__).parent.parent / "share" / "algebroid-fn" / "specs"


@pytest.fixture(autouse=True)
def _clear_seed(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)


@pytest.fixture(name="specs_dir")
def fixture_specs_dir() -> Path:
    """Return the directory of the shipped spec files.

    Returns:
        A directory path.
    """
    return SPECS_DIR


@pytest.fixture(name="so3_algebroid")
def fixture_so3_algebroid() -> Algebroid:
    """Return `so(3)`, a Lie algebra with a non-abelian bracket.

    Returns:
        An algebroid over a point.
    """
    return so3()


@pytest.fixture(name="action_algebroid")
def fixture_action_algebroid() -> Algebroid:
    """Return the `aff(1)` action algebroid on the line, with a non-trivial anchor.

    Returns:
        An algebroid over one coordinate.
    """
    return aff1_action()


@pytest.fixture(name="tangent2")
def fixture_tangent2() -> Algebroid:
    """Return the tangent algebroid of the plane.

    Returns:
        An algebroid over two coordinates.
    """
    return tangent(2)


@pytest.fixture(name="so3_connection")
def fixture_so3_connection(so3_algebroid: Algebroid) -> Connection:
    """Return the symmetrized zero connection on `so(3)`.

    Parameters:
        so3_algebroid: Pytest fixture (see conftest.py).

    Returns:
        A torsion-free connection.
    """
    return default_connection(so3_algebroid)


@pytest.fixture(name="rng")
def fixture_rng(request: pytest.FixtureRequest) -> Random:
    """Return a random generator seeded by the test name.

    Parameters:
        request: Pytest fixture.

    Returns:
        A seeded generator.
    """
    return Random(request.node.name)  # noqa: S311
