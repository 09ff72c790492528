"""Tests for vector-valued forms, shuffles, wedge and insertion."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import TYPE_CHECKING

import pytest

from algebroid_fn import (
    Poly,
    Section,
    StructuralError,
    VectorBundle,
    VForm,
    enumerate_shuffles,
    eval_form,
    insert,
    insert_bruteforce,
    merge_sign,
    parity,
    permutation_sign,
    random_form,
    scalar_line,
    sort_with_sign,
    tensor,
    wedge,
)

if TYPE_CHECKING:
    from random import Random

    from algebroid_fn import Algebroid


def test_permutation_sign_matches_cycle_parity() -> None:
    """Inversion counting and cycle decomposition agree."""
    for perm in permutations(range(4)):
        assert permutation_sign(perm) == parity(perm)
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((1, 2, 0)) == 1


def test_sort_with_sign() -> None:
    """Sorting returns the sign, repeated indices give zero."""
    assert sort_with_sign((2, 0, 1)) == (1, (0, 1, 2))
    assert sort_with_sign((1, 0)) == (-1, (0, 1))
    assert sort_with_sign((1, 1))[0] == 0
    assert merge_sign((2,), (0, 1)) == 1
    assert merge_sign((1,), (0, 2)) == -1


@pytest.mark.parametrize("blocks", [(1, 1), (2, 1), (1, 2), (2, 2), (1, 1, 1), (2, 1, 1), (0, 3), (0, 0, 0)])
def test_shuffle_count(blocks: tuple[int, ...]) -> None:
    """There are `m! / prod(k_i!)` shuffles, each ascending within its blocks."""
    shuffles = enumerate_shuffles(blocks)
    expected = factorial(sum(blocks))
    for size in blocks:
        expected //= factorial(size)
    assert len(shuffles) == expected
    assert len({shuffle.perm for shuffle in shuffles}) == expected
    for shuffle in shuffles:
        start = 0
        for size in blocks:
            block = shuffle.perm[start : start + size]
            assert list(block) == sorted(block)
            start += size
        assert shuffle.sign == permutation_sign(shuffle.perm)


def test_shuffle_signs() -> None:
    """The two `(1, 1)`-shuffles have opposite signs."""
    assert [(shuffle.perm, shuffle.sign) for shuffle in enumerate_shuffles((1, 1))] == [((0, 1), 1), ((1, 0), -1)]


def test_negative_block_rejected() -> None:
    """Block sizes are non-negative."""
    with pytest.raises(StructuralError):
        enumerate_shuffles((1, -1))


def test_components_are_normalized(so3_algebroid: Algebroid) -> None:
    """Unsorted indices are sorted with a sign and zero values dropped."""
    line = scalar_line(so3_algebroid)
    form = VForm(so3_algebroid, line, 2, {(1, 0): [1], (0, 2): [0]})
    assert form.components == {(0, 1): (Poly.constant(0, -1),)}
    assert form.frame_value((1, 0)) == (Poly.constant(0, 1),)
    assert form.frame_value((0, 0)) == (Poly.zero(0),)
    assert form == -VForm(so3_algebroid, line, 2, {(0, 1): [1]})


def test_invalid_components(so3_algebroid: Algebroid) -> None:
    """Wrong lengths, ranges and repeated indices are rejected."""
    line = scalar_line(so3_algebroid)
    with pytest.raises(StructuralError):
        VForm(so3_algebroid, line, 2, {(0,): [1]})
    with pytest.raises(StructuralError):
        VForm(so3_algebroid, line, 1, {(3,): [1]})
    with pytest.raises(StructuralError):
        VForm(so3_algebroid, line, 1, {(0,): [1, 2]})
    with pytest.raises(StructuralError, match="repeated"):
        VForm(so3_algebroid, line, 2, {(1, 1): [1]})


def test_degree_above_rank_is_zero(so3_algebroid: Algebroid) -> None:
    """A form of degree above the rank has no components."""
    form = VForm.zero(so3_algebroid, so3_algebroid, 4)
    assert list(form.indices()) == []
    assert form.is_zero()


def test_mixing_degrees_fails(so3_algebroid: Algebroid) -> None:
    """Only forms of equal degree and target add."""
    with pytest.raises(StructuralError):
        VForm.identity(so3_algebroid) + VForm.zero(so3_algebroid, so3_algebroid, 2)


def test_eval_is_alternating(so3_algebroid: Algebroid) -> None:
    """Swapping two arguments flips the sign."""
    line = scalar_line(so3_algebroid)
    e12 = VForm(so3_algebroid, line, 2, {(0, 1): [1]})
    e1, e2 = so3_algebroid.frame(0), so3_algebroid.frame(1)
    assert eval_form(e12, e1, e2) == Section.of(line, [1])
    assert eval_form(e12, e2, e1) == Section.of(line, [-1])
    assert eval_form(e12, e1, e1).is_zero()
    with pytest.raises(StructuralError):
        eval_form(e12, e1)


def test_eval_is_tensorial(action_algebroid: Algebroid, rng: Random) -> None:
    """Evaluation is multilinear over polynomials."""
    bundle = VectorBundle(rank=2, nvars=1)
    form = random_form(rng, action_algebroid, bundle, 2)
    x = Poly.variable(1, 0)
    e1, e2 = action_algebroid.frame(0), action_algebroid.frame(1)
    assert eval_form(form, e1 * x, e2 + e1) == eval_form(form, e1, e2) * x


def test_identity_and_duals(so3_algebroid: Algebroid) -> None:
    """`id` evaluates to its argument, `e^c` reads the `c`-th coefficient."""
    section = Section.of(so3_algebroid, [1, 2, 3])
    assert eval_form(VForm.identity(so3_algebroid), section) == section
    assert eval_form(VForm.dual(so3_algebroid, 1), section) == Section.of(scalar_line(so3_algebroid), [2])
    assert VForm.from_section(section).as_section() == section
    assert VForm.scalar(so3_algebroid, 5).as_section().coeffs == (Poly.constant(0, 5),)


def test_wedge_anticommutes(so3_algebroid: Algebroid) -> None:
    """`e^1 ^ e^2 = -e^2 ^ e^1` and `e^1 ^ e^1 = 0`."""
    e1, e2 = VForm.dual(so3_algebroid, 0), VForm.dual(so3_algebroid, 1)
    assert wedge(e1, e2) == -wedge(e2, e1)
    assert wedge(e1, e1).is_zero()
    assert wedge(e1, e2).components == {(0, 1): (Poly.constant(0, 1),)}


def test_wedge_needs_scalar_factor(so3_algebroid: Algebroid) -> None:
    """The module product multiplies by scalar forms only."""
    with pytest.raises(StructuralError, match="scalar"):
        wedge(VForm.identity(so3_algebroid), VForm.identity(so3_algebroid))


def test_tensor_builds_vector_valued_forms(so3_algebroid: Algebroid) -> None:
    """`e^c ^ e_c` summed over `c` is the identity."""
    total = VForm.zero(so3_algebroid, so3_algebroid, 1)
    for c in range(3):
        total = total + tensor(VForm.dual(so3_algebroid, c), so3_algebroid.frame(c))
    assert total == VForm.identity(so3_algebroid)


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_insert_identity_scales_by_degree(so3_algebroid: Algebroid, rng: Random, degree: int) -> None:
    """`i_id psi = k psi` for a `k`-form."""
    psi = random_form(rng, so3_algebroid, so3_algebroid, degree)
    assert insert(VForm.identity(so3_algebroid), psi) == degree * psi


def test_insert_section_is_contraction(so3_algebroid: Algebroid) -> None:
    """Inserting a 0-form feeds it into the first slot."""
    line = scalar_line(so3_algebroid)
    e12 = VForm(so3_algebroid, line, 2, {(0, 1): [1]})
    x = VForm.from_section(so3_algebroid.frame(0))
    assert insert(x, e12) == VForm.dual(so3_algebroid, 1)


def test_insert_into_function_is_zero(so3_algebroid: Algebroid) -> None:
    """Insertion lowers degree, a 0-form gives a negative-degree zero."""
    result = insert(VForm.identity(so3_algebroid), VForm.scalar(so3_algebroid, 1))
    assert result.is_zero()
    assert result.degree == 0
    result = insert(VForm.from_section(so3_algebroid.frame(0)), VForm.scalar(so3_algebroid, 1))
    assert result.degree == -1
    assert result.is_zero()


@pytest.mark.parametrize(("p", "q"), [(0, 1), (1, 1), (1, 2), (2, 2), (0, 3), (2, 1)])
def test_insert_matches_permutation_sum(action_algebroid: Algebroid, rng: Random, p: int, q: int) -> None:
    """The shuffle formula agrees with the full permutation sum."""
    bundle = VectorBundle(rank=2, nvars=1)
    phi = random_form(rng, action_algebroid, action_algebroid, p)
    psi = random_form(rng, action_algebroid, bundle, q)
    assert insert(phi, psi) == insert_bruteforce(phi, psi)


def test_insert_needs_vector_valued(so3_algebroid: Algebroid) -> None:
    """Only `A`-valued forms can be inserted."""
    with pytest.raises(StructuralError):
        insert(VForm.dual(so3_algebroid, 0), VForm.dual(so3_algebroid, 0))


def test_scaling(so3_algebroid: Algebroid) -> None:
    """Forms scale by rationals from either side."""
    form = VForm.identity(so3_algebroid)
    assert Fraction(1, 2) * form == form * Fraction(1, 2)
    assert (0 * form).is_zero()


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_insertion_determines_the_form(so3_algebroid: Algebroid, rng: Random, degree: int) -> None:
    """`phi` is recovered from `i_phi` on the dual frame, so `phi -> i_phi` is injective."""
    phi = random_form(rng, so3_algebroid, so3_algebroid, degree)
    psi = random_form(rng, so3_algebroid, so3_algebroid, degree)
    rebuilt = VForm.zero(so3_algebroid, so3_algebroid, degree)
    for c in range(3):
        dual = VForm.dual(so3_algebroid, c)
        rebuilt = rebuilt + tensor(insert(phi, dual), so3_algebroid.frame(c))
        assert insert(phi, dual) - insert(psi, dual) == insert(phi - psi, dual)
    assert rebuilt == phi
    if phi != psi:
        assert any(
            insert(phi, VForm.dual(so3_algebroid, c)) != insert(psi, VForm.dual(so3_algebroid, c)) for c in range(3)
        )
