# Lie algebroids over a polynomial chart: frame, anchor, structure functions,
# sections and their bracket, plus structural validation and a zoo of examples.

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import TYPE_CHECKING, Callable, Union

from algebroid_fn._internal.errors import StructuralError
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

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VectorBundle:
    """A trivial vector bundle `E` of rank `rank` over the coordinate chart."""

    rank: int
    """Fiber dimension `m`."""
    nvars: int
    """Number of base coordinates `n`, shared with the algebroid."""
    name: str = field(default="E", compare=False)
    """Display name."""
    scalar: bool = False
    """Whether this is the trivial line bundle whose sections are functions."""

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise StructuralError(f"bundle rank must be at least 1, got {self.rank}")
        if self.scalar and self.rank != 1:
            raise StructuralError("the scalar line bundle has rank 1")

    @classmethod
    def line(cls, nvars: int) -> VectorBundle:
        """The trivial line bundle `M x R`."""
        return cls(rank=1, nvars=nvars, name="scalar", scalar=True)


@dataclass(frozen=True)
class Algebroid:
    """A Lie algebroid of rank `rank` over `Q[x_1..x_n]`.

    The bracket of frame sections is `[e_a, e_b] = sum_c structure[a][b][c] e_c` and
    the anchor is `rho(e_a) = sum_i anchor[a][i] d/dx_i`. Both tables are stored in full,
    `structure` being antisymmetric in its first two indices.
    """

    nvars: int
    """Number of base coordinates `n`; zero for a Lie algebra."""
    rank: int
    """Rank `r` of the bundle."""
    anchor: tuple[tuple[Poly, ...], ...]
    """`anchor[a][i]` is the coefficient of `d/dx_i` in `rho(e_a)`."""
    structure: tuple[tuple[Vector, ...], ...]
    """`structure[a][b]` is the vector of `[e_a, e_b]`."""
    name: str = field(default="A", compare=False)
    """Display name."""

    scalar = False

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise StructuralError(f"algebroid rank must be at least 1, got {self.rank}")
        if len(self.anchor) != self.rank or any(len(row) != self.nvars for row in self.anchor):
            raise StructuralError(f"anchor table must be {self.rank}x{self.nvars}")
        if len(self.structure) != self.rank or any(
            len(row) != self.rank or any(len(vec) != self.rank for vec in row) for row in self.structure
        ):
            raise StructuralError(f"structure table must be {self.rank}x{self.rank}x{self.rank}")
        for entry in (*(p for row in self.anchor for p in row), *self._structure_entries()):
            if entry.nvars != self.nvars:
                raise StructuralError(f"table entry {entry} is not over {self.nvars} variables")

    def _structure_entries(self) -> list[Poly]:
        return [p for row in self.structure for vec in row for p in vec]

    @classmethod
    def from_tables(
        cls,
        nvars: int,
        rank: int,
        anchor: Sequence[Sequence[Poly | Scalar]] | None = None,
        structure: Mapping[tuple[int, int, int], Poly | Scalar] | None = None,
        *,
        name: str = "A",
    ) -> Algebroid:
        """Build an algebroid from sparse tables with 0-based indices.

        Parameters:
            nvars: Number of base coordinates.
            rank: Rank of the bundle.
            anchor: `rank x nvars` table; defaults to zero.
            structure: Map `(a, b, c) -> c_ab^c` for `a != b`; the antisymmetric
                partner is implied and omitted entries are zero.
            name: Display name.

        Raises:
            StructuralError: On indices out of range or a diagonal entry.

        Returns:
            The algebroid.
        """
        zero = Poly.zero(nvars)
        if anchor is None:
            anchor_rows = tuple((zero,) * nvars for _ in range(rank))
        else:
            anchor_rows = tuple(tuple(_as_poly(nvars, entry) for entry in row) for row in anchor)
        table = [[list(zero_vector(nvars, rank)) for _ in range(rank)] for _ in range(rank)]
        for (a, b, c), value in (structure or {}).items():
            if not (0 <= a < rank and 0 <= b < rank and 0 <= c < rank):
                raise StructuralError(f"structure index ({a}, {b}, {c}) out of range for rank {rank}")
            if a == b:
                raise StructuralError(f"structure entry ({a}, {b}, {c}) lies on the diagonal")
            poly = _as_poly(nvars, value)
            table[a][b][c] = table[a][b][c] + poly
            table[b][a][c] = table[b][a][c] - poly
        return cls(
            nvars=nvars,
            rank=rank,
            anchor=anchor_rows,
            structure=tuple(tuple(tuple(vec) for vec in row) for row in table),
            name=name,
        )

    def anchor_derivative(self, a: int, function: Poly) -> Poly:
        """Apply `rho(e_a)` to a function."""
        result = Poly.zero(self.nvars)
        for i, coeff in enumerate(self.anchor[a]):
            if coeff:
                result = result + coeff * function.partial(i)
        return result

    def frame_bracket(self, a: int, b: int) -> Vector:
        """The vector of `[e_a, e_b]`."""
        return self.structure[a][b]

    def frame(self, a: int) -> Section:
        """The frame section `e_a`."""
        return Section.frame(self, a)


Bundle = Union[Algebroid, VectorBundle]
"""Anything a form can take values in."""


def _as_poly(nvars: int, value: Poly | Scalar) -> Poly:
    if isinstance(value, Poly):
        if value.nvars != nvars:
            raise StructuralError(f"polynomial {value} is not over {nvars} variables")
        return value
    return Poly.constant(nvars, value)


@dataclass(frozen=True)
class Section:
    """A section of an algebroid or a vector bundle, given by frame coefficients."""

    bundle: Bundle
    """The bundle this is a section of."""
    coeffs: Vector
    """One polynomial per frame element."""

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.bundle.rank:
            raise StructuralError(
                f"section of a rank-{self.bundle.rank} bundle needs {self.bundle.rank} coefficients, "
                f"got {len(self.coeffs)}",
            )
        if any(coeff.nvars != self.bundle.nvars for coeff in self.coeffs):
            raise StructuralError(f"section coefficients must be over {self.bundle.nvars} variables")

    @classmethod
    def of(cls, bundle: Bundle, coeffs: Sequence[Poly | Scalar]) -> Section:
        """Build a section, coercing rationals to constant polynomials."""
        return cls(bundle, tuple(_as_poly(bundle.nvars, coeff) for coeff in coeffs))

    @classmethod
    def frame(cls, bundle: Bundle, a: int) -> Section:
        """The frame section `e_a` (0-based)."""
        if not 0 <= a < bundle.rank:
            raise StructuralError(f"frame index {a} out of range for rank {bundle.rank}")
        return cls.of(bundle, [int(i == a) for i in range(bundle.rank)])

    @classmethod
    def zero(cls, bundle: Bundle) -> Section:
        """The zero section."""
        return cls(bundle, zero_vector(bundle.nvars, bundle.rank))

    def _check(self, other: Section) -> None:
        if other.bundle != self.bundle:
            raise StructuralError("sections of different bundles cannot be combined")

    def is_zero(self) -> bool:
        """Whether all coefficients vanish."""
        return vector_is_zero(self.coeffs)

    def __add__(self, other: Section) -> Section:
        self._check(other)
        return Section(self.bundle, vector_add(self.coeffs, other.coeffs))

    def __sub__(self, other: Section) -> Section:
        self._check(other)
        return Section(self.bundle, vector_sub(self.coeffs, other.coeffs))

    def __neg__(self) -> Section:
        return Section(self.bundle, tuple(-coeff for coeff in self.coeffs))

    def __mul__(self, factor: Poly | Scalar) -> Section:
        return Section(self.bundle, vector_scale(factor, self.coeffs))

    __rmul__ = __mul__


def _check_section(algebroid: Algebroid, section: Section) -> None:
    if section.bundle != algebroid:
        raise StructuralError(f"expected a section of {algebroid.name}, got a section of {section.bundle.name}")


def anchor_apply(algebroid: Algebroid, section: Section, function: Poly) -> Poly:
    """Apply the vector field `rho(X)` to a function.

    Parameters:
        algebroid: The algebroid.
        section: The section `X`.
        function: The function `f`.

    Raises:
        StructuralError: When `X` is not a section of the algebroid or `f` has the wrong variable count.

    Returns:
        `rho(X) f`.
    """
    _check_section(algebroid, section)
    if function.nvars != algebroid.nvars:
        raise StructuralError(f"function {function} is not over {algebroid.nvars} variables")
    result = Poly.zero(algebroid.nvars)
    for a, coeff in enumerate(section.coeffs):
        if coeff:
            result = result + coeff * algebroid.anchor_derivative(a, function)
    return result


def bracket(algebroid: Algebroid, lhs: Section, rhs: Section) -> Section:
    """Bracket of two sections, extending the structure functions by the Leibniz rule.

    `[X, Y]^c = sum_ab X^a Y^b c_ab^c + rho(X) Y^c - rho(Y) X^c`.
    """
    _check_section(algebroid, lhs)
    _check_section(algebroid, rhs)
    rank = algebroid.rank
    result = list(zero_vector(algebroid.nvars, rank))
    for a, fa in enumerate(lhs.coeffs):
        if not fa:
            continue
        for b, gb in enumerate(rhs.coeffs):
            if not gb or a == b:
                continue
            weight = fa * gb
            for c, structure in enumerate(algebroid.structure[a][b]):
                if structure:
                    result[c] = result[c] + weight * structure
    for c in range(rank):
        result[c] = (
            result[c]
            + anchor_apply(algebroid, lhs, rhs.coeffs[c])
            - anchor_apply(algebroid, rhs, lhs.coeffs[c])
        )
    return Section(algebroid, tuple(result))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of [`validate_algebroid`][algebroid_fn.validate_algebroid]."""

    algebroid: str
    """Name of the validated algebroid."""
    jacobi_failures: tuple[tuple[tuple[int, int, int], Vector], ...] = ()
    """Frame triples whose Jacobiator does not vanish, with the Jacobiator."""
    anchor_failures: tuple[tuple[tuple[int, int, int], Poly], ...] = ()
    """`(a, b, i)` where `rho([e_a, e_b]) x_i != [rho(e_a), rho(e_b)] x_i`, with the difference."""
    triples_checked: int = 0
    """Number of frame triples examined."""
    pairs_checked: int = 0
    """Number of frame pairs examined."""

    @property
    def jacobi_ok(self) -> bool:
        """Whether the Jacobi identity holds on the frame."""
        return not self.jacobi_failures

    @property
    def anchor_ok(self) -> bool:
        """Whether the anchor is a bracket morphism on the frame."""
        return not self.anchor_failures

    @property
    def passed(self) -> bool:
        """Whether both axioms hold."""
        return self.jacobi_ok and self.anchor_ok

    def summary(self) -> str:
        """One-line status, e.g. `jacobi: pass, anchor-morphism: pass`."""
        status = {True: "pass", False: "fail"}
        return f"jacobi: {status[self.jacobi_ok]}, anchor-morphism: {status[self.anchor_ok]}"


def validate_algebroid(algebroid: Algebroid) -> ValidationReport:
    """Check the Jacobi identity on frame triples and the anchor-morphism identity on frame pairs.

    Together with the Leibniz extension of the bracket this implies both identities for all sections.
    Repeated indices need no check: antisymmetry makes those Jacobiators vanish.
    """
    frame = [algebroid.frame(a) for a in range(algebroid.rank)]
    jacobi: list[tuple[tuple[int, int, int], Vector]] = []
    triples = list(combinations(range(algebroid.rank), 3))
    for a, b, c in triples:
        x, y, z = frame[a], frame[b], frame[c]
        total = (
            bracket(algebroid, bracket(algebroid, x, y), z)
            + bracket(algebroid, bracket(algebroid, y, z), x)
            + bracket(algebroid, bracket(algebroid, z, x), y)
        )
        if not total.is_zero():
            jacobi.append(((a, b, c), total.coeffs))
    anchor: list[tuple[tuple[int, int, int], Poly]] = []
    pairs = list(combinations(range(algebroid.rank), 2))
    for a, b in pairs:
        commutator = bracket(algebroid, frame[a], frame[b])
        for i in range(algebroid.nvars):
            coordinate = Poly.variable(algebroid.nvars, i)
            lhs = anchor_apply(algebroid, commutator, coordinate)
            rho_a = algebroid.anchor_derivative(a, coordinate)
            rho_b = algebroid.anchor_derivative(b, coordinate)
            rhs = algebroid.anchor_derivative(a, rho_b) - algebroid.anchor_derivative(b, rho_a)
            if lhs != rhs:
                anchor.append(((a, b, i), lhs - rhs))
    report = ValidationReport(
        algebroid=algebroid.name,
        jacobi_failures=tuple(jacobi),
        anchor_failures=tuple(anchor),
        triples_checked=len(triples),
        pairs_checked=len(pairs),
    )
    _logger.debug("validated %s: %s", algebroid.name, report.summary())
    return report


def so3() -> Algebroid:
    """The Lie algebra `so(3)`: `[e1, e2] = e3` and cyclic."""
    return Algebroid.from_tables(0, 3, structure={(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1}, name="so3")


def aff1() -> Algebroid:
    """The affine Lie algebra `aff(1)`: `[e1, e2] = e2`."""
    return Algebroid.from_tables(0, 2, structure={(0, 1, 1): 1}, name="aff1")


def heisenberg() -> Algebroid:
    """The 3-dimensional Heisenberg algebra: `[e1, e2] = e3`."""
    return Algebroid.from_tables(0, 3, structure={(0, 1, 2): 1}, name="heisenberg")


def abelian(rank: int) -> Algebroid:
    """The abelian Lie algebra `R^rank` over a point."""
    return Algebroid.from_tables(0, rank, name=f"abelian{rank}")


def tangent(nvars: int) -> Algebroid:
    """The tangent algebroid of `R^n` with the coordinate frame."""
    anchor = [[int(i == a) for i in range(nvars)] for a in range(nvars)]
    return Algebroid.from_tables(nvars, nvars, anchor=anchor, name=f"tangent{nvars}")


def aff1_action() -> Algebroid:
    """The action algebroid of `aff(1)` on `R`: `rho(e1) = d/dx`, `rho(e2) = x d/dx`, `[e1, e2] = e1`."""
    x = Poly.variable(1, 0)
    return Algebroid.from_tables(1, 2, anchor=[[1], [x]], structure={(0, 1, 0): 1}, name="aff1_action")


ZOO: dict[str, Callable[[], Algebroid]] = {
    "so3": so3,
    "aff1": aff1,
    "heisenberg": heisenberg,
    "tangent1": lambda: tangent(1),
    "tangent2": lambda: tangent(2),
    "tangent3": lambda: tangent(3),
    "aff1_action": aff1_action,
    "abelian2": lambda: abelian(2),
}
"""Built-in algebroids by name."""
