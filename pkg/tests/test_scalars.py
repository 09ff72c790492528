"""Tests for rationals and polynomials."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from random import Random

import pytest

from algebroid_fn import (
    Poly,
    StructuralError,
    format_rational,
    parse_rational,
    poly_arith,
    random_poly,
    vector_add,
    zero_vector,
)


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("3", Fraction(3)),
        ("-2/4", Fraction(-1, 2)),
        (" 7 / 3 ", Fraction(7, 3)),
        ("+0/5", Fraction(0)),
        (4, Fraction(4)),
    ],
)
def test_parse_rational(text: str | int, expected: Fraction) -> None:
    """Exact literals parse to reduced rationals."""
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["1.5", "1/0", "one", "", "1/-2", True])
def test_parse_rational_rejects(text: str | bool) -> None:
    """Floats, zero denominators and garbage are rejected."""
    with pytest.raises(ValueError, match="rational|denominator"):
        parse_rational(text)


def test_format_rational() -> None:
    """Integers print without a denominator."""
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-1, 2)) == "-1/2"


def test_canonical_form() -> None:
    """Zero coefficients are dropped and like terms merged."""
    poly = Poly(2, {(1, 0): 1, (0, 1): 0})
    assert poly == Poly.variable(2, 0)
    assert Poly(1, {(1,): 2}) - Poly(1, {(1,): 2}) == Poly.zero(1)
    assert Poly.zero(3).degree == -1
    assert not Poly.zero(3)


def test_arithmetic() -> None:
    """Ring operations are exact."""
    x = Poly.variable(2, 0)
    y = Poly.variable(2, 1)
    square = (x + y) ** 2
    assert square == x * x + 2 * x * y + y * y
    assert square.degree == 2
    assert (x * Fraction(1, 3)).terms == {(1, 0): Fraction(1, 3)}
    assert 1 - x == Poly(2, {(0, 0): 1, (1, 0): -1})


def test_constants_compare_with_rationals() -> None:
    """Constant polynomials equal the rational they represent."""
    assert Poly.constant(0, 3) == 3
    assert Poly.constant(2, Fraction(1, 2)) == Fraction(1, 2)
    assert Poly.constant(1, 0) == 0


def test_mismatched_variables() -> None:
    """Polynomials over different charts do not mix."""
    with pytest.raises(StructuralError):
        Poly.variable(1, 0) + Poly.variable(2, 0)
    with pytest.raises(StructuralError):
        poly_arith(Poly.zero(1), Poly.zero(2), "add")


def test_poly_arith() -> None:
    """The dispatching helper agrees with the operators."""
    x = Poly.variable(1, 0)
    one = Poly.constant(1, 1)
    assert poly_arith(x, one, "add") == x + 1
    assert poly_arith(x, one, "sub") == x - 1
    assert poly_arith(x, x, "mul") == x**2
    with pytest.raises(StructuralError, match="unknown"):
        poly_arith(x, x, "div")


def test_partial_and_evaluate() -> None:
    """Formal derivatives and exact evaluation."""
    poly = Poly(2, {(2, 1): 3, (0, 1): -1, (0, 0): 5})
    assert poly.partial(0) == Poly(2, {(1, 1): 6})
    assert poly.partial(1) == Poly(2, {(2, 0): 3, (0, 0): -1})
    assert poly.evaluate([1, Fraction(1, 2)]) == Fraction(3, 2) - Fraction(1, 2) + 5
    with pytest.raises(StructuralError):
        poly.partial(2)
    with pytest.raises(StructuralError):
        poly.evaluate([1])


def test_str() -> None:
    """Terms print highest degree first."""
    poly = Poly(2, {(2, 0): 1, (0, 1): -3, (0, 0): Fraction(1, 2)})
    assert str(poly) == "x1^2 - 3*x2 + 1/2"
    assert str(-Poly.variable(1, 0)) == "-x1"
    assert str(Poly.zero(2)) == "0"


def test_records() -> None:
    """Records keep exponents and exact coefficients."""
    poly = Poly(2, {(1, 1): Fraction(-2, 3), (0, 0): 1})
    records = poly.to_records()
    assert records == [{"coeff": "-2/3", "exps": [1, 1]}, {"coeff": "1", "exps": [0, 0]}]
    assert Poly.from_records(2, records) == poly
    with pytest.raises(StructuralError):
        Poly.from_records(1, records)


def test_hash_matches_equality() -> None:
    """Equal polynomials hash equally."""
    assert hash(Poly(1, {(1,): 2})) == hash(Poly.variable(1, 0) * 2)


def test_vectors() -> None:
    """Vectors are tuples of polynomials."""
    x = Poly.variable(1, 0)
    assert vector_add((x, x), zero_vector(1, 2)) == (x, x)


def _samples(seed: int, count: int) -> list[Poly]:
    rng = Random(seed)  # noqa: S311
    return [random_poly(rng, 3, poly_degree=3, terms=4) for _ in range(count)]


@pytest.mark.parametrize("seed", range(10))
def test_ring_axioms(seed: int) -> None:
    """Random polynomials form a commutative ring."""
    p, q, r = _samples(seed, 3)
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()
    assert p * Poly.constant(3, 1) == p


@pytest.mark.parametrize("seed", range(10))
def test_partials_commute(seed: int) -> None:
    """Mixed partial derivatives agree."""
    (p,) = _samples(seed, 1)
    for i, j in product(range(3), repeat=2):
        assert p.partial(i).partial(j) == p.partial(j).partial(i)


@pytest.mark.parametrize("seed", range(10))
def test_partial_leibniz(seed: int) -> None:
    """`d(pq) = dp q + p dq`."""
    p, q = _samples(seed, 2)
    for i in range(3):
        assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)


@pytest.mark.parametrize("seed", range(10))
def test_evaluate_is_a_ring_homomorphism(seed: int) -> None:
    """Evaluation commutes with sums and products."""
    p, q = _samples(seed, 2)
    rng = Random(-seed - 1)  # noqa: S311
    point = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)]
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert Poly.constant(3, Fraction(2, 3)).evaluate(point) == Fraction(2, 3)
