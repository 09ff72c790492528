# A-connections stored by Christoffel tables: covariant derivative, torsion,
# symmetrization, curvature and the covariant exterior derivative.

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import TYPE_CHECKING

from algebroid_fn._internal.algebroid import Algebroid, Bundle, Section, VectorBundle, _as_poly
from algebroid_fn._internal.errors import PreconditionError, StructuralError
from algebroid_fn._internal.scalars import (
    Poly,
    Scalar,
    Vector,
    vector_add,
    vector_is_zero,
    vector_scale,
    vector_sub,
    zero_vector,
)
from algebroid_fn._internal.vforms import MultiIndex, VForm

if TYPE_CHECKING:
    from collections.abc import Mapping

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Connection:
    """An `A`-connection on a trivial bundle, given by its Christoffel table.

    `christoffel[a][alpha]` is the vector of `nabla_{e_a} e_alpha`, so that
    `(nabla_X s)^beta = sum_a X^a (rho(e_a) s^beta + sum_alpha s^alpha christoffel[a][alpha][beta])`.
    """

    base: Algebroid
    """The algebroid `A` differentiating."""
    bundle: Bundle
    """The bundle `E` being differentiated: `A` itself or a vector bundle."""
    christoffel: tuple[tuple[Vector, ...], ...]
    """`rank(A) x rank(E) x rank(E)` table of polynomials."""
    name: str = field(default="nabla", compare=False)
    """Display name."""

    def __post_init__(self) -> None:
        m = self.bundle.rank
        if self.bundle.nvars != self.base.nvars:
            raise StructuralError("connection bundle and algebroid live over different base charts")
        if len(self.christoffel) != self.base.rank or any(
            len(row) != m or any(len(vec) != m for vec in row) for row in self.christoffel
        ):
            raise StructuralError(f"christoffel table must be {self.base.rank}x{m}x{m}")

    @classmethod
    def zero(cls, base: Algebroid, bundle: Bundle | None = None, *, name: str = "zero") -> Connection:
        """The connection with vanishing Christoffel symbols; the bundle defaults to `A`."""
        return cls.from_table(base, base if bundle is None else bundle, name=name)

    @classmethod
    def from_table(
        cls,
        base: Algebroid,
        bundle: Bundle,
        entries: Mapping[tuple[int, int, int], Poly | Scalar] | None = None,
        *,
        name: str = "nabla",
    ) -> Connection:
        """Build a connection from a sparse map `(a, alpha, beta) -> value` with 0-based indices.

        Raises:
            StructuralError: On an index out of range.
        """
        m = bundle.rank
        table = [[list(zero_vector(base.nvars, m)) for _ in range(m)] for _ in range(base.rank)]
        for (a, alpha, beta), value in (entries or {}).items():
            if not (0 <= a < base.rank and 0 <= alpha < m and 0 <= beta < m):
                raise StructuralError(f"christoffel index ({a}, {alpha}, {beta}) out of range")
            table[a][alpha][beta] = table[a][alpha][beta] + _as_poly(base.nvars, value)
        return cls(base, bundle, tuple(tuple(tuple(vec) for vec in row) for row in table), name=name)

    @property
    def on_algebroid(self) -> bool:
        """Whether this is a connection on `A` itself."""
        return self.bundle == self.base

    def frame_derivative(self, a: int, vector: Vector) -> Vector:
        """Coefficients of `nabla_{e_a} s` for the section `s` with coefficients `vector`."""
        result = [self.base.anchor_derivative(a, entry) for entry in vector]
        for alpha, coeff in enumerate(vector):
            if coeff:
                for beta, gamma in enumerate(self.christoffel[a][alpha]):
                    if gamma:
                        result[beta] = result[beta] + coeff * gamma
        return tuple(result)

    @cached_property
    def torsion_form(self) -> VForm:
        """The torsion 2-form (see [`torsion`][algebroid_fn.torsion])."""
        return torsion(self)

    @cached_property
    def is_torsion_free(self) -> bool:
        """Whether this is a connection on `A` with vanishing torsion."""
        return self.on_algebroid and self.torsion_form.is_zero()

    def require_torsion_free(self) -> None:
        """Raise unless the connection is torsion-free.

        Raises:
            PreconditionError: Carrying the torsion form as witness.
        """
        if not self.on_algebroid:
            raise PreconditionError(f"connection {self.name} is not a connection on {self.base.name}")
        if not self.is_torsion_free:
            raise PreconditionError(
                f"connection {self.name} has torsion, a torsion-free connection is required",
                witness=self.torsion_form,
            )


def _check_section_of(section: Section, bundle: Bundle, role: str) -> None:
    if section.bundle != bundle:
        raise StructuralError(f"{role} must be a section of {bundle.name}, got a section of {section.bundle.name}")


def cov_deriv(connection: Connection, direction: Section, section: Section) -> Section:
    """The covariant derivative `nabla_X s`.

    Parameters:
        connection: The connection.
        direction: The section `X` of the algebroid.
        section: The section `s` of the connection's bundle.

    Raises:
        StructuralError: On a bundle mismatch.

    Returns:
        `nabla_X s`.
    """
    _check_section_of(direction, connection.base, "direction")
    _check_section_of(section, connection.bundle, "argument")
    result = zero_vector(connection.base.nvars, connection.bundle.rank)
    for a, coeff in enumerate(direction.coeffs):
        if coeff:
            result = vector_add(result, vector_scale(coeff, connection.frame_derivative(a, section.coeffs)))
    return Section(connection.bundle, result)


def _require_on_algebroid(connection: Connection) -> None:
    if not connection.on_algebroid:
        raise StructuralError(f"connection {connection.name} is not a connection on {connection.base.name}")


def torsion(connection: Connection) -> VForm:
    """The torsion `T(X, Y) = nabla_X Y - nabla_Y X - [X, Y]` as an `A`-valued 2-form.

    Raises:
        StructuralError: When the connection is not on the algebroid itself.
    """
    _require_on_algebroid(connection)
    algebroid = connection.base
    gamma = connection.christoffel
    components: dict[MultiIndex, Vector] = {}
    for a, b in combinations(range(algebroid.rank), 2):
        components[(a, b)] = vector_sub(vector_sub(gamma[a][b], gamma[b][a]), algebroid.frame_bracket(a, b))
    return VForm._make(algebroid, algebroid, 2, components)


def symmetrize(connection: Connection) -> Connection:
    """The torsion-free connection `nabla'_X Y = nabla_X Y - T(X, Y) / 2`.

    Raises:
        StructuralError: When the connection is not on the algebroid itself.
    """
    _require_on_algebroid(connection)
    torsion_form = connection.torsion_form
    half = Fraction(1, 2)
    table = tuple(
        tuple(
            vector_sub(connection.christoffel[a][b], vector_scale(half, torsion_form.frame_value((a, b))))
            for b in range(connection.base.rank)
        )
        for a in range(connection.base.rank)
    )
    return Connection(connection.base, connection.bundle, table, name=f"sym({connection.name})")


def anchor_connection(algebroid: Algebroid) -> Connection:
    """The flat connection `nabla_X f = rho(X) f` on the trivial line bundle."""
    return Connection.zero(algebroid, VectorBundle.line(algebroid.nvars), name="rho")


@dataclass(frozen=True)
class CurvatureTensor:
    """Curvature of a connection as a table of endomorphisms on frame pairs.

    `components[a][b][alpha]` is the vector of `R(e_a, e_b) e_alpha`;
    the table is antisymmetric in `a, b`.
    """

    base: Algebroid
    """The algebroid."""
    bundle: Bundle
    """The bundle whose endomorphisms the values are."""
    components: tuple[tuple[tuple[Vector, ...], ...], ...]
    """`rank(A) x rank(A) x rank(E)` table of vectors."""

    def endomorphism(self, a: int, b: int) -> tuple[Vector, ...]:
        """The matrix of `R(e_a, e_b)`, one row per `e_alpha`."""
        return self.components[a][b]

    def is_flat(self) -> bool:
        """Whether every component vanishes."""
        return all(vector_is_zero(vec) for plane in self.components for row in plane for vec in row)

    def act(self, a: int, b: int, vector: Vector) -> Vector:
        """Coefficients of `R(e_a, e_b) s` for `s` with coefficients `vector`."""
        result = zero_vector(self.base.nvars, self.bundle.rank)
        for alpha, coeff in enumerate(vector):
            if coeff:
                result = vector_add(result, vector_scale(coeff, self.components[a][b][alpha]))
        return result

    def apply(self, x: Section, y: Section, section: Section) -> Section:
        """Evaluate `R(X, Y) s` on arbitrary sections using the component table."""
        if x.bundle != self.base or y.bundle != self.base:
            raise StructuralError(f"curvature arguments must be sections of {self.base.name}")
        if section.bundle != self.bundle:
            raise StructuralError(f"curvature acts on sections of {self.bundle.name}")
        result = zero_vector(self.base.nvars, self.bundle.rank)
        for a, xa in enumerate(x.coeffs):
            for b, yb in enumerate(y.coeffs):
                if xa and yb and a != b:
                    result = vector_add(result, vector_scale(xa * yb, self.act(a, b, section.coeffs)))
        return Section(self.bundle, result)

    def as_form(self) -> VForm:
        """`R` as a 2-form with values in `End(E)`, flattened row by row."""
        m = self.bundle.rank
        target = VectorBundle(rank=m * m, nvars=self.base.nvars, name=f"End({self.bundle.name})")
        components = {
            (a, b): tuple(entry for row in self.components[a][b] for entry in row)
            for a, b in combinations(range(self.base.rank), 2)
        }
        return VForm._make(self.base, target, 2, components)


def curvature(connection: Connection) -> CurvatureTensor:
    """The curvature `R(X, Y) s = nabla_X nabla_Y s - nabla_Y nabla_X s - nabla_[X, Y] s`.

    Evaluated on frame pairs and frame sections of the bundle.
    """
    base = connection.base
    m = connection.bundle.rank
    zero_row = tuple(zero_vector(base.nvars, m) for _ in range(m))
    table = [[zero_row for _ in range(base.rank)] for _ in range(base.rank)]
    for a, b in combinations(range(base.rank), 2):
        ea, eb = base.frame(a), base.frame(b)
        commutator = Section(base, base.frame_bracket(a, b))
        rows = []
        for alpha in range(m):
            s = Section.frame(connection.bundle, alpha)
            value = (
                cov_deriv(connection, ea, cov_deriv(connection, eb, s))
                - cov_deriv(connection, eb, cov_deriv(connection, ea, s))
                - cov_deriv(connection, commutator, s)
            )
            rows.append(value.coeffs)
        table[a][b] = tuple(rows)
        table[b][a] = tuple(tuple(-entry for entry in row) for row in rows)
    result = CurvatureTensor(base, connection.bundle, tuple(tuple(row) for row in table))
    _logger.debug("curvature of %s on %s: flat=%s", connection.name, base.name, result.is_flat())
    return result


def _check_form(connection: Connection, form: VForm) -> None:
    if form.source != connection.base:
        raise StructuralError(f"form lives on {form.source.name}, connection on {connection.base.name}")
    if form.target != connection.bundle:
        raise StructuralError(f"form takes values in {form.target.name}, connection acts on {connection.bundle.name}")


def d_nabla(connection: Connection, form: VForm) -> VForm:
    """The covariant exterior derivative of an `E`-valued form.

    On an increasing frame tuple `I` of length `p + 1`:
    `sum_j (-1)^j nabla_{e_Ij} phi(I without j)
    + sum_{j<l} (-1)^(j+l) phi([e_Ij, e_Il], I without j, l)`.
    For the anchor connection this is the de Rham differential of the algebroid.

    Raises:
        StructuralError: On a bundle mismatch.
    """
    _check_form(connection, form)
    base = connection.base
    degree = form.degree + 1
    components: dict[MultiIndex, Vector] = {}
    if form.is_zero() or not 0 <= degree <= base.rank:
        return VForm._make(base, form.target, degree, components)
    for index in combinations(range(base.rank), degree):
        total = zero_vector(base.nvars, form.target.rank)
        for j, a in enumerate(index):
            rest = index[:j] + index[j + 1 :]
            value = form.frame_value(rest)
            if not vector_is_zero(value):
                term = connection.frame_derivative(a, value)
                total = vector_add(total, term) if j % 2 == 0 else vector_sub(total, term)
        for j, l in combinations(range(degree), 2):
            a, b = index[j], index[l]
            rest = tuple(i for position, i in enumerate(index) if position not in (j, l))
            sign = -1 if (j + l) % 2 else 1
            for c, structure in enumerate(base.frame_bracket(a, b)):
                if structure:
                    value = form.frame_value((c, *rest))
                    if not vector_is_zero(value):
                        total = vector_add(total, vector_scale(structure * sign, value))
        components[index] = total
    return VForm._make(base, form.target, degree, components)


def curvature_action(tensor: CurvatureTensor, form: VForm) -> VForm:
    """The `(2, p)`-shuffle sum `sum sign R(Z_s1, Z_s2)(phi(Z_rest))`, of degree `p + 2`."""
    if form.source != tensor.base or form.target != tensor.bundle:
        raise StructuralError("curvature and form live on different bundles")
    base = tensor.base
    degree = form.degree + 2
    components: dict[MultiIndex, Vector] = {}
    if form.is_zero() or not 0 <= degree <= base.rank:
        return VForm._make(base, form.target, degree, components)
    for index in combinations(range(base.rank), degree):
        total = zero_vector(base.nvars, form.target.rank)
        for j, l in combinations(range(degree), 2):
            rest = tuple(i for position, i in enumerate(index) if position not in (j, l))
            value = form.frame_value(rest)
            if vector_is_zero(value):
                continue
            term = tensor.act(index[j], index[l], value)
            total = vector_add(total, term) if (j + l) % 2 else vector_sub(total, term)
        components[index] = total
    return VForm._make(base, form.target, degree, components)


def d_nabla_squared_check(connection: Connection, form: VForm) -> bool:
    """Whether `d_nabla(d_nabla(phi))` equals the curvature action on `phi`."""
    lhs = d_nabla(connection, d_nabla(connection, form))
    rhs = curvature_action(curvature(connection), form)
    return lhs == rhs


def nabla_X_form(  # noqa: N802
    connection_a: Connection,
    connection_e: Connection,
    direction: Section,
    form: VForm,
) -> VForm:
    """The derivative `nabla_X s` of an `E`-valued form, degree preserving.

    `(nabla_X s)(Z_1..Z_p) = nabla^E_X(s(Z_1..Z_p)) - sum_t s(Z_1..nabla^A_X Z_t..Z_p)`.

    Raises:
        StructuralError: On a bundle mismatch.
    """
    _require_on_algebroid(connection_a)
    _check_form(connection_e, form)
    if connection_a.base != connection_e.base:
        raise StructuralError("the two connections live on different algebroids")
    _check_section_of(direction, connection_a.base, "direction")
    base = connection_a.base
    # nabla^A_X e_b, a constant-frame derivative
    moved = [cov_deriv(connection_a, direction, base.frame(b)).coeffs for b in range(base.rank)]
    components: dict[MultiIndex, Vector] = {}
    if form.degree < 0:
        return VForm._make(base, form.target, form.degree, components)
    for index in form.indices():
        value = form.frame_value(index)
        total = cov_deriv(connection_e, direction, Section(form.target, value)).coeffs
        for t, b in enumerate(index):
            for c, coeff in enumerate(moved[b]):
                if coeff:
                    replaced = index[:t] + (c,) + index[t + 1 :]
                    total = vector_sub(total, vector_scale(coeff, form.frame_value(replaced)))
        components[index] = total
    return VForm._make(base, form.target, form.degree, components)
