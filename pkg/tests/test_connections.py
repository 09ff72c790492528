"""Tests for connections, torsion, curvature and the covariant exterior derivative."""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

import pytest

from algebroid_fn import (
    Connection,
    Poly,
    PreconditionError,
    Section,
    StructuralError,
    VectorBundle,
    VForm,
    anchor_connection,
    bracket,
    cov_deriv,
    curvature,
    curvature_action,
    curvature_bruteforce,
    d_nabla,
    d_nabla_squared_check,
    de_rham_koszul,
    eval_form,
    nabla_X_form,
    random_connection,
    random_form,
    random_section,
    random_torsion_free,
    scalar_line,
    symmetrize,
    torsion,
)

if TYPE_CHECKING:
    from random import Random

    from algebroid_fn import Algebroid


def test_cov_deriv_differentiates_coefficients(tangent2: Algebroid) -> None:
    """With vanishing Christoffel symbols only the anchor acts."""
    x = Poly.variable(2, 0)
    connection = Connection.zero(tangent2)
    section = Section.of(tangent2, [x**2, 1])
    assert cov_deriv(connection, tangent2.frame(0), section) == Section.of(tangent2, [2 * x, 0])
    assert cov_deriv(connection, tangent2.frame(1), section).is_zero()


def test_cov_deriv_christoffel(so3_algebroid: Algebroid) -> None:
    """`nabla_{e_a} e_alpha` is read off the table."""
    connection = Connection.from_table(so3_algebroid, so3_algebroid, {(0, 1, 2): Fraction(1, 2)})
    assert cov_deriv(connection, so3_algebroid.frame(0), so3_algebroid.frame(1)) == Section.of(
        so3_algebroid,
        [0, 0, Fraction(1, 2)],
    )
    with pytest.raises(StructuralError):
        Connection.from_table(so3_algebroid, so3_algebroid, {(0, 3, 0): 1})


def test_torsion_of_zero_connection(so3_algebroid: Algebroid) -> None:
    """`T(e_a, e_b) = -[e_a, e_b]` when the Christoffel symbols vanish."""
    form = torsion(Connection.zero(so3_algebroid))
    assert form.degree == 2
    assert form.frame_value((0, 1)) == Section.of(so3_algebroid, [0, 0, -1]).coeffs
    assert form.frame_value((0, 2)) == Section.of(so3_algebroid, [0, 1, 0]).coeffs
    assert form.frame_value((1, 2)) == Section.of(so3_algebroid, [-1, 0, 0]).coeffs


def test_symmetrize(so3_algebroid: Algebroid) -> None:
    """Symmetrizing removes half the torsion."""
    symmetric = symmetrize(Connection.zero(so3_algebroid))
    assert symmetric.is_torsion_free
    assert cov_deriv(symmetric, so3_algebroid.frame(0), so3_algebroid.frame(1)) == Section.of(
        so3_algebroid,
        [0, 0, Fraction(1, 2)],
    )
    assert symmetrize(symmetric) == symmetric


def test_symmetrize_random(action_algebroid: Algebroid, rng: Random) -> None:
    """Any connection symmetrizes to a torsion-free one."""
    connection = random_connection(rng, action_algebroid)
    assert torsion(symmetrize(connection)).is_zero()
    assert random_torsion_free(rng, action_algebroid).is_torsion_free


def test_torsion_is_tensorial(action_algebroid: Algebroid, rng: Random) -> None:
    """The torsion form evaluates to `nabla_X Y - nabla_Y X - [X, Y]` on arbitrary sections."""
    connection = random_connection(rng, action_algebroid)
    x, y = random_section(rng, action_algebroid), random_section(rng, action_algebroid)
    expected = cov_deriv(connection, x, y) - cov_deriv(connection, y, x) - bracket(action_algebroid, x, y)
    assert eval_form(torsion(connection), x, y) == expected


def test_require_torsion_free(so3_algebroid: Algebroid) -> None:
    """Connections with torsion carry the torsion as witness."""
    connection = Connection.zero(so3_algebroid)
    with pytest.raises(PreconditionError) as excinfo:
        connection.require_torsion_free()
    assert excinfo.value.witness == torsion(connection)
    bundle_connection = Connection.zero(so3_algebroid, VectorBundle(rank=2, nvars=0))
    with pytest.raises(PreconditionError):
        bundle_connection.require_torsion_free()
    with pytest.raises(StructuralError):
        torsion(bundle_connection)


def test_curvature_of_symmetrized_zero(so3_connection: Connection) -> None:
    """`R(e1, e2) e1 = -[[e1, e2], e1] / 4 = -e2 / 4`."""
    tensor = curvature(so3_connection)
    zero = Poly.zero(0)
    assert tensor.act(0, 1, (Poly.constant(0, 1), zero, zero)) == (zero, Poly.constant(0, Fraction(-1, 4)), zero)
    assert not tensor.is_flat()
    assert tensor.components[1][0] == tuple(tuple(-entry for entry in row) for row in tensor.components[0][1])
    assert tensor.as_form().target.rank == 9


def test_curvature_matches_christoffel_formula(action_algebroid: Algebroid, rng: Random) -> None:
    """Curvature from the defining formula equals the Christoffel expression."""
    bundle = VectorBundle(rank=2, nvars=1)
    connection = random_connection(rng, action_algebroid, bundle)
    assert curvature(connection) == curvature_bruteforce(connection)


def test_curvature_apply(action_algebroid: Algebroid, rng: Random) -> None:
    """The curvature table evaluates tensorially on arbitrary sections."""
    bundle = VectorBundle(rank=2, nvars=1)
    connection = random_connection(rng, action_algebroid, bundle)
    x, y = random_section(rng, action_algebroid), random_section(rng, action_algebroid)
    s = random_section(rng, bundle)

    expected = (
        cov_deriv(connection, x, cov_deriv(connection, y, s))
        - cov_deriv(connection, y, cov_deriv(connection, x, s))
        - cov_deriv(connection, bracket(action_algebroid, x, y), s)
    )
    assert curvature(connection).apply(x, y, s) == expected


def test_anchor_connection_is_flat(action_algebroid: Algebroid) -> None:
    """Functions are differentiated by the anchor alone."""
    assert curvature(anchor_connection(action_algebroid)).is_flat()


def test_de_rham_on_so3(so3_algebroid: Algebroid) -> None:
    """`d e^3 = -e^1 ^ e^2` on `so(3)`."""
    rho = anchor_connection(so3_algebroid)
    line = scalar_line(so3_algebroid)
    assert d_nabla(rho, VForm.dual(so3_algebroid, 2)) == VForm(so3_algebroid, line, 2, {(0, 1): [-1]})


@pytest.mark.parametrize("degree", [0, 1, 2])
def test_de_rham_squares_to_zero(action_algebroid: Algebroid, rng: Random, degree: int) -> None:
    """The algebroid differential squares to zero and matches the Koszul formula."""
    rho = anchor_connection(action_algebroid)
    omega = random_form(rng, action_algebroid, rho.bundle, degree)
    assert d_nabla(rho, omega) == de_rham_koszul(action_algebroid, omega)
    assert d_nabla(rho, d_nabla(rho, omega)).is_zero()


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_d_nabla_squared_is_curvature(so3_algebroid: Algebroid, rng: Random, degree: int) -> None:
    """`d^2` of a bundle-valued form is the curvature acting on it."""
    bundle = VectorBundle(rank=2, nvars=0)
    connection = random_connection(rng, so3_algebroid, bundle)
    form = random_form(rng, so3_algebroid, bundle, degree)
    assert d_nabla_squared_check(connection, form)
    squared = d_nabla(connection, d_nabla(connection, form))
    assert squared == curvature_action(curvature(connection), form)


def test_d_nabla_of_function(tangent2: Algebroid) -> None:
    """On 0-forms `d f (X) = rho(X) f`."""
    x, y = Poly.variable(2, 0), Poly.variable(2, 1)
    rho = anchor_connection(tangent2)
    df = d_nabla(rho, VForm.scalar(tangent2, x * y))
    assert df.frame_value((0,)) == (y,)
    assert df.frame_value((1,)) == (x,)


def test_d_nabla_bundle_mismatch(so3_algebroid: Algebroid) -> None:
    """The form must take values in the connection's bundle."""
    with pytest.raises(StructuralError):
        d_nabla(anchor_connection(so3_algebroid), VForm.identity(so3_algebroid))


def test_nabla_x_form_on_sections(action_algebroid: Algebroid, rng: Random) -> None:
    """On 0-forms `nabla_X` is the covariant derivative of the section."""
    bundle = VectorBundle(rank=2, nvars=1)
    connection_a = random_torsion_free(rng, action_algebroid)
    connection_e = random_connection(rng, action_algebroid, bundle)
    x = random_section(rng, action_algebroid)
    s = random_section(rng, bundle)
    result = nabla_X_form(connection_a, connection_e, x, VForm.from_section(s, action_algebroid))
    assert result.as_section() == cov_deriv(connection_e, x, s)
