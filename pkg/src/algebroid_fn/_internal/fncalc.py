# Graded operator calculus on vector-valued forms: covariant Lie derivative,
# covariant derivative along forms, extended curvature and the bracket of A-valued forms.

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from algebroid_fn._internal.algebroid import Algebroid, Section, ValidationReport, bracket, validate_algebroid
from algebroid_fn._internal.connections import (
    Connection,
    curvature,
    d_nabla,
    symmetrize,
)
from algebroid_fn._internal.errors import StructuralError
from algebroid_fn._internal.scalars import Scalar, Vector, vector_add, vector_is_zero, vector_scale, zero_vector
from algebroid_fn._internal.vforms import MultiIndex, VForm, enumerate_shuffles, eval_form, insert, wedge

_logger = logging.getLogger(__name__)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _require_vector_valued(form: VForm, role: str) -> None:
    if not form.is_vector_valued:
        raise StructuralError(f"{role} must take values in its algebroid")


def lie_deriv(connection: Connection, phi: VForm, form: VForm) -> VForm:
    """The covariant Lie derivative `L_phi s = i_phi d s + (-1)^k d i_phi s`.

    A derivation of degree `k = deg phi`, computed with `d` the covariant exterior
    derivative of `connection` on the values of `s`.

    Raises:
        StructuralError: When `phi` is not `A`-valued or the bundles do not match.
    """
    _require_vector_valued(phi, "the differentiating form")
    return insert(phi, d_nabla(connection, form)) + _sign(phi.degree) * d_nabla(connection, insert(phi, form))


def cov_phi(connection_a: Connection, connection_e: Connection, phi: VForm, form: VForm) -> VForm:
    """The covariant derivative along a form, `nabla_phi = L_phi - (-1)^p i_{d phi}`.

    The exterior derivative of `phi` uses `connection_a`, which must be torsion-free;
    `connection_e` differentiates the values of `s`.

    Raises:
        PreconditionError: When `connection_a` has torsion.
        StructuralError: On a bundle mismatch.
    """
    connection_a.require_torsion_free()
    _require_vector_valued(phi, "the differentiating form")
    correction = insert(d_nabla(connection_a, phi), form)
    return lie_deriv(connection_e, phi, form) - _sign(phi.degree) * correction


def r_extended(connection_a: Connection, phi: VForm, psi: VForm) -> VForm:
    """The curvature `R(phi, psi)` of a connection on `A`, evaluated on `A`-valued forms.

    Of degree `k + l + 1`: each `(k, l, 1)`-shuffle feeds the first block to `phi`,
    the second to `psi` and lets `R(phi(..), psi(..))` act on the last argument.
    The block sizes are the degrees of `phi` and `psi`.

    Raises:
        StructuralError: When a form is not `A`-valued.
    """
    _require_vector_valued(phi, "the first argument")
    _require_vector_valued(psi, "the second argument")
    base = connection_a.base
    k, l = phi.degree, psi.degree
    degree = k + l + 1
    components: dict[MultiIndex, Vector] = {}
    if phi.is_zero() or psi.is_zero() or not 0 <= degree <= base.rank:
        return VForm._make(base, base, degree, components)
    tensor = curvature(connection_a)
    shuffles = enumerate_shuffles((k, l, 1))
    for index in combinations(range(base.rank), degree):
        total = zero_vector(base.nvars, base.rank)
        for shuffle in shuffles:
            args = [index[i] for i in shuffle.perm]
            x = phi.frame_value(args[:k])
            y = psi.frame_value(args[k : k + l])
            if vector_is_zero(x) or vector_is_zero(y):
                continue
            last = Section.frame(base, args[-1])
            value = tensor.apply(Section(base, x), Section(base, y), last).coeffs
            total = vector_add(total, vector_scale(shuffle.sign, value))
        components[index] = total
    return VForm._make(base, base, degree, components)


def fn_bracket(connection_a: Connection, phi: VForm, psi: VForm) -> VForm:
    """The bracket `[phi, psi] = L_phi psi - (-1)^(kl) L_psi phi` of `A`-valued forms.

    Computed with a torsion-free connection on `A`; the result does not depend on the choice.

    Raises:
        PreconditionError: When the connection has torsion.
        StructuralError: When a form is not `A`-valued.
    """
    connection_a.require_torsion_free()
    _require_vector_valued(phi, "the first argument")
    _require_vector_valued(psi, "the second argument")
    sign = _sign(phi.degree * psi.degree)
    return lie_deriv(connection_a, phi, psi) - sign * lie_deriv(connection_a, psi, phi)


def default_connection(algebroid: Algebroid) -> Connection:
    """The torsion-free connection obtained by symmetrizing the zero connection."""
    return symmetrize(Connection.zero(algebroid))


def fn_bracket_default(phi: VForm, psi: VForm) -> VForm:
    """[`fn_bracket`][algebroid_fn.fn_bracket] with the symmetrized zero connection."""
    return fn_bracket(default_connection(phi.source), phi, psi)


def nijenhuis(connection_a: Connection, tensor: VForm) -> VForm:
    """The Nijenhuis torsion `[N, N] / 2` of an `A`-valued 1-form.

    Raises:
        StructuralError: When `N` is not of degree 1.
    """
    if tensor.degree != 1:
        raise StructuralError(f"the Nijenhuis torsion needs a degree-1 form, got degree {tensor.degree}")
    return Fraction(1, 2) * fn_bracket(connection_a, tensor, tensor)


@dataclass(frozen=True)
class DeformationResult:
    """Outcome of [`deform`][algebroid_fn.deform]."""

    algebroid: Algebroid
    """The candidate algebroid with bracket `[X, Y]_N` and anchor `rho o N`."""
    report: ValidationReport
    """Validation of the candidate."""
    nijenhuis_vanishes: bool
    """Whether the Nijenhuis torsion of `N` is zero."""

    @property
    def passed(self) -> bool:
        """Whether the candidate is a Lie algebroid."""
        return self.report.passed


def deform(algebroid: Algebroid, tensor: VForm, connection_a: Connection | None = None) -> DeformationResult:
    """Deform an algebroid along an `A`-valued 1-form `N`.

    The new bracket is `[X, Y]_N = [NX, Y] + [X, NY] - N[X, Y]` and the new anchor `rho o N`.
    The candidate is always validated and never assumed to satisfy Jacobi.

    Raises:
        StructuralError: When `N` is not an `A`-valued 1-form on `algebroid`.
    """
    if tensor.degree != 1 or tensor.source != algebroid:
        raise StructuralError(f"deformation needs a degree-1 form on {algebroid.name}")
    _require_vector_valued(tensor, "the deformation tensor")

    def apply(section: Section) -> Section:
        return eval_form(tensor, section)

    frame = [algebroid.frame(a) for a in range(algebroid.rank)]
    images = [apply(e) for e in frame]
    anchor = []
    for image in images:
        row = list(zero_vector(algebroid.nvars, algebroid.nvars))
        for b, coeff in enumerate(image.coeffs):
            if coeff:
                row = [entry + coeff * rho for entry, rho in zip(row, algebroid.anchor[b])]
        anchor.append(tuple(row))
    zero = zero_vector(algebroid.nvars, algebroid.rank)
    table = [[zero for _ in range(algebroid.rank)] for _ in range(algebroid.rank)]
    for a, b in combinations(range(algebroid.rank), 2):
        value = (
            bracket(algebroid, images[a], frame[b])
            + bracket(algebroid, frame[a], images[b])
            - apply(bracket(algebroid, frame[a], frame[b]))
        )
        table[a][b] = value.coeffs
        table[b][a] = tuple(-entry for entry in value.coeffs)
    deformed = Algebroid(
        nvars=algebroid.nvars,
        rank=algebroid.rank,
        anchor=tuple(anchor),
        structure=tuple(tuple(row) for row in table),
        name=f"{algebroid.name}_N",
    )
    report = validate_algebroid(deformed)
    connection = default_connection(algebroid) if connection_a is None else connection_a
    vanishes = nijenhuis(connection, tensor).is_zero()
    _logger.debug("deformed %s: %s, nijenhuis vanishes: %s", algebroid.name, report.summary(), vanishes)
    return DeformationResult(deformed, report, vanishes)


class GradedOperator(ABC):
    """A graded operator on vector-valued forms of a fixed degree."""

    degree: int
    """Degree shift: a degree-`q` form is sent to degree `q + degree`."""

    @abstractmethod
    def __call__(self, form: VForm) -> VForm:
        """Apply the operator."""

    def __add__(self, other: GradedOperator) -> Combination:
        return Combination.of((1, self), (1, other))

    def __sub__(self, other: GradedOperator) -> Combination:
        return Combination.of((1, self), (-1, other))

    def __rmul__(self, weight: Scalar) -> Combination:
        return Combination.of((weight, self))

    def __neg__(self) -> Combination:
        return Combination.of((-1, self))


@dataclass(frozen=True, eq=False)
class Insertion(GradedOperator):
    """`i_phi`, of degree `deg phi - 1`."""

    phi: VForm

    @property
    def degree(self) -> int:  # type: ignore[override]
        return self.phi.degree - 1

    def __call__(self, form: VForm) -> VForm:
        return insert(self.phi, form)


@dataclass(frozen=True, eq=False)
class DNabla(GradedOperator):
    """The covariant exterior derivative of a connection, of degree 1."""

    connection: Connection
    degree = 1

    def __call__(self, form: VForm) -> VForm:
        return d_nabla(self.connection, form)


@dataclass(frozen=True, eq=False)
class LieDerivative(GradedOperator):
    """`L_phi` with respect to a connection on the values."""

    connection: Connection
    phi: VForm

    @property
    def degree(self) -> int:  # type: ignore[override]
        return self.phi.degree

    def __call__(self, form: VForm) -> VForm:
        return lie_deriv(self.connection, self.phi, form)


@dataclass(frozen=True, eq=False)
class CovariantDerivative(GradedOperator):
    """`nabla_phi` for a torsion-free connection on `A` and a connection on the values."""

    connection_a: Connection
    connection_e: Connection
    phi: VForm

    @property
    def degree(self) -> int:  # type: ignore[override]
        return self.phi.degree

    def __call__(self, form: VForm) -> VForm:
        return cov_phi(self.connection_a, self.connection_e, self.phi, form)


@dataclass(frozen=True, eq=False)
class Epsilon(GradedOperator):
    """`epsilon_omega`, left multiplication by a scalar form."""

    omega: VForm

    @property
    def degree(self) -> int:  # type: ignore[override]
        return self.omega.degree

    def __call__(self, form: VForm) -> VForm:
        return wedge(self.omega, form)


@dataclass(frozen=True, eq=False)
class Commutator(GradedOperator):
    """The graded commutator `D1 D2 - (-1)^(d1 d2) D2 D1`."""

    left: GradedOperator
    right: GradedOperator

    @property
    def degree(self) -> int:  # type: ignore[override]
        return self.left.degree + self.right.degree

    def __call__(self, form: VForm) -> VForm:
        sign = _sign(self.left.degree * self.right.degree)
        return self.left(self.right(form)) - sign * self.right(self.left(form))


@dataclass(frozen=True, eq=False)
class Combination(GradedOperator):
    """A rational linear combination of operators of equal degree."""

    terms: tuple[tuple[Fraction, GradedOperator], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise StructuralError("a combination needs at least one operator")
        degrees = {op.degree for _, op in self.terms}
        if len(degrees) != 1:
            raise StructuralError(f"cannot combine operators of degrees {sorted(degrees)}")

    @classmethod
    def of(cls, *terms: tuple[Scalar, GradedOperator]) -> Combination:
        """Build a combination from `(weight, operator)` pairs, flattening nested combinations."""
        flat: list[tuple[Fraction, GradedOperator]] = []
        for weight, op in terms:
            if isinstance(op, Combination):
                flat.extend((Fraction(weight) * inner, inner_op) for inner, inner_op in op.terms)
            else:
                flat.append((Fraction(weight), op))
        return cls(tuple(flat))

    @property
    def degree(self) -> int:  # type: ignore[override]
        return self.terms[0][1].degree

    def __call__(self, form: VForm) -> VForm:
        results = [weight * op(form) for weight, op in self.terms]
        total = results[0]
        for result in results[1:]:
            total = total + result
        return total


def commutator(left: GradedOperator, right: GradedOperator) -> Commutator:
    """The graded commutator `[D1, D2]`."""
    return Commutator(left, right)


def epsilon(omega: VForm) -> Epsilon:
    """The operator `epsilon_omega = omega ^ .` of a scalar form."""
    if not omega.is_scalar:
        raise StructuralError("epsilon needs a scalar form")
    return Epsilon(omega)
