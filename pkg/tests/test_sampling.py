"""Tests for seeded random instances."""

from __future__ import annotations

from random import Random
from typing import TYPE_CHECKING

from algebroid_fn import random_bundle, random_connection, random_form, random_poly, random_torsion_free

if TYPE_CHECKING:
    from algebroid_fn import Algebroid


def test_random_poly_bounds() -> None:
    """Term count, degree and coefficients stay within bounds."""
    rng = Random(7)  # noqa: S311
    for _ in range(50):
        poly = random_poly(rng, 2, poly_degree=3, terms=4, bound=2)
        assert len(poly.terms) <= 4
        assert poly.degree <= 3
        assert all(abs(coeff) <= 2 for coeff in poly.terms.values())


def test_random_poly_over_a_point() -> None:
    """Without coordinates only constants exist."""
    poly = random_poly(Random(1), 0, terms=3)  # noqa: S311
    assert poly.is_constant()


def test_same_seed_same_instance(so3_algebroid: Algebroid) -> None:
    """Instances are a function of the seed."""
    first = random_form(Random("seed"), so3_algebroid, so3_algebroid, 2)  # noqa: S311
    second = random_form(Random("seed"), so3_algebroid, so3_algebroid, 2)  # noqa: S311
    assert first == second


def test_random_connections(action_algebroid: Algebroid, rng: Random) -> None:
    """Random connections have the requested bundle, symmetrized ones no torsion."""
    bundle = random_bundle(rng, action_algebroid.nvars, max_rank=3)
    assert 1 <= bundle.rank <= 3
    assert random_connection(rng, action_algebroid, bundle).bundle == bundle
    assert random_torsion_free(rng, action_algebroid, poly_degree=1, terms=1).is_torsion_free
