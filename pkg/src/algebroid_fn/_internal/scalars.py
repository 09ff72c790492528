# Exact scalar tower: rationals and sparse multivariate polynomials over them.

from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import TYPE_CHECKING, Any, Union

from algebroid_fn._internal.errors import StructuralError

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Mapping, Sequence

Rational = Fraction
"""Exact rationals: numerator and positive denominator in lowest terms, zero is `0/1`."""

Scalar = Union[int, Fraction]
"""Anything that coerces exactly to a `Rational`."""

Monomial = tuple[int, ...]
"""Exponent vector of a term, one entry per base coordinate."""

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str | int) -> Fraction:
    """Parse `"p/q"` or `"p"` (or a plain integer) into an exact rational.

    Floating-point literals are rejected, so are zero denominators.

    Parameters:
        text: The text to parse.

    Raises:
        ValueError: When the text is not an exact rational literal.

    Returns:
        The rational number.
    """
    if isinstance(text, bool):
        raise ValueError(f"expected a rational, got boolean {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected a rational written as a string 'p/q', got {type(text).__name__} {text!r}")
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ValueError(f"invalid rational literal {text!r}")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value: Scalar) -> str:
    """Format a rational as `"p/q"`, or `"p"` when the denominator is one."""
    return str(Fraction(value))


class Poly:
    """Sparse polynomial in `nvars` variables with exact rational coefficients.

    Instances are immutable. Terms with a zero coefficient are never stored,
    so two polynomials are equal exactly when their term maps are equal.
    """

    __slots__ = ("_hash", "_nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Scalar] | None = None) -> None:
        """Initialize the polynomial.

        Parameters:
            nvars: Number of base coordinates.
            terms: Map from exponent vectors to coefficients; zero coefficients are dropped.
        """
        if nvars < 0:
            raise StructuralError(f"variable count must be non-negative, got {nvars}")
        clean: dict[Monomial, Fraction] = {}
        for monom, coeff in (terms or {}).items():
            monom = tuple(monom)
            if len(monom) != nvars or any(exp < 0 for exp in monom):
                raise StructuralError(f"exponent vector {monom} does not fit {nvars} variables")
            value = clean.get(monom, Fraction(0)) + Fraction(coeff)
            if value:
                clean[monom] = value
            else:
                clean.pop(monom, None)
        self._nvars = nvars
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, Fraction]) -> Poly:
        # Trusted constructor: `terms` is already canonical.
        poly = object.__new__(cls)
        poly._nvars = nvars
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, nvars: int) -> Poly:
        """The zero polynomial."""
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> Poly:
        """A constant polynomial."""
        value = Fraction(value)
        return cls._raw(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> Poly:
        """The coordinate function `x_index` (0-based)."""
        if not 0 <= index < nvars:
            raise StructuralError(f"coordinate index {index} out of range for {nvars} variables")
        return cls._raw(nvars, {tuple(int(i == index) for i in range(nvars)): Fraction(1)})

    @property
    def nvars(self) -> int:
        """Number of base coordinates."""
        return self._nvars

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        """Read-only view of the term map."""
        return MappingProxyType(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((sum(monom) for monom in self._terms), default=-1)

    def is_zero(self) -> bool:
        """Whether this is the zero polynomial."""
        return not self._terms

    def is_constant(self) -> bool:
        """Whether the polynomial has no non-constant term."""
        return all(not any(monom) for monom in self._terms)

    def constant_term(self) -> Fraction:
        """The coefficient of the constant monomial."""
        return self._terms.get((0,) * self._nvars, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _coerce(self, other: Any) -> Poly | None:
        if isinstance(other, Poly):
            if other._nvars != self._nvars:
                raise StructuralError(
                    f"polynomials over {self._nvars} and {other._nvars} variables cannot be combined",
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.constant(self._nvars, other)
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._nvars == other._nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Poly.constant(self._nvars, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def __neg__(self) -> Poly:
        return Poly._raw(self._nvars, {monom: -coeff for monom, coeff in self._terms.items()})

    def __pos__(self) -> Poly:
        return self

    def __add__(self, other: Poly | Scalar) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if not rhs._terms:
            return self
        if not self._terms:
            return rhs
        terms = dict(self._terms)
        for monom, coeff in rhs._terms.items():
            value = terms.get(monom, 0) + coeff
            if value:
                terms[monom] = value
            else:
                del terms[monom]
        return Poly._raw(self._nvars, terms)

    __radd__ = __add__

    def __sub__(self, other: Poly | Scalar) -> Poly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: Scalar) -> Poly:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return Poly._raw(self._nvars, {})
            if other == 1:
                return self
            return Poly._raw(self._nvars, {monom: coeff * other for monom, coeff in self._terms.items()})
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if not self._terms or not rhs._terms:
            return Poly._raw(self._nvars, {})
        terms: dict[Monomial, Fraction] = {}
        for lmonom, lcoeff in self._terms.items():
            for rmonom, rcoeff in rhs._terms.items():
                monom = tuple(a + b for a, b in zip(lmonom, rmonom))
                value = terms.get(monom, 0) + lcoeff * rcoeff
                if value:
                    terms[monom] = value
                else:
                    del terms[monom]
        return Poly._raw(self._nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Poly:
        if exponent < 0:
            return NotImplemented
        result = Poly.constant(self._nvars, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def partial(self, index: int) -> Poly:
        """Formal partial derivative with respect to `x_index` (0-based).

        Parameters:
            index: The coordinate to differentiate along.

        Raises:
            StructuralError: When the index is out of range.

        Returns:
            The derivative.
        """
        if not 0 <= index < self._nvars:
            raise StructuralError(f"coordinate index {index} out of range for {self._nvars} variables")
        terms: dict[Monomial, Fraction] = {}
        for monom, coeff in self._terms.items():
            exp = monom[index]
            if exp:
                lowered = monom[:index] + (exp - 1,) + monom[index + 1 :]
                terms[lowered] = coeff * exp
        return Poly._raw(self._nvars, terms)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Evaluate exactly at a point.

        Raises:
            StructuralError: When the point has the wrong length.
        """
        if len(point) != self._nvars:
            raise StructuralError(f"point of length {len(point)} given for {self._nvars} variables")
        values = [Fraction(value) for value in point]
        total = Fraction(0)
        for monom, coeff in self._terms.items():
            term = coeff
            for value, exp in zip(values, monom):
                if exp:
                    term *= value**exp
            total += term
        return total

    def sorted_terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Iterate over terms in graded lexicographic order, highest first."""
        for monom in sorted(self._terms, key=lambda monom: (sum(monom), monom), reverse=True):
            yield monom, self._terms[monom]

    def to_records(self) -> list[dict[str, Any]]:
        """Serialize as a list of `{"coeff": "p/q", "exps": [...]}` records."""
        return [{"coeff": format_rational(coeff), "exps": list(monom)} for monom, coeff in self.sorted_terms()]

    @classmethod
    def from_records(cls, nvars: int, records: Iterable[Mapping[str, Any]]) -> Poly:
        """Build a polynomial from records produced by [`to_records`][algebroid_fn.Poly.to_records].

        Raises:
            StructuralError: On exponents that are not non-negative integers, or of the wrong count.
        """
        terms: dict[Monomial, Fraction] = {}
        for record in records:
            exps = record.get("exps", [])
            if not isinstance(exps, (list, tuple)):
                raise StructuralError(f"exponents must be a list, got {exps!r}")
            if any(not isinstance(exp, int) or isinstance(exp, bool) or exp < 0 for exp in exps):
                raise StructuralError(f"exponents must be non-negative integers, got {list(exps)!r}")
            monom = tuple(exps)
            if len(monom) != nvars:
                raise StructuralError(f"exponent vector {list(monom)} does not fit {nvars} variables")
            terms[monom] = terms.get(monom, Fraction(0)) + parse_rational(record["coeff"])
        return cls(nvars, terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for monom, coeff in self.sorted_terms():
            factors = [f"x{i + 1}" + (f"^{exp}" if exp > 1 else "") for i, exp in enumerate(monom) if exp]
            magnitude = abs(coeff)
            if factors and magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([format_rational(magnitude), *factors])
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        text = f"-{body}" if sign == "-" else body
        return text + "".join(f" {sign} {body}" for sign, body in pieces[1:])

    def __repr__(self) -> str:
        return f"Poly({self._nvars}, {str(self)!r})"


def poly_arith(lhs: Poly, rhs: Poly, op: str) -> Poly:
    """Add, subtract or multiply two polynomials over the same variables.

    Parameters:
        lhs: Left operand.
        rhs: Right operand.
        op: One of `"add"`, `"sub"`, `"mul"`.

    Raises:
        StructuralError: On a variable-count mismatch or an unknown operation.

    Returns:
        The exact canonical result.
    """
    if lhs.nvars != rhs.nvars:
        raise StructuralError(f"polynomials over {lhs.nvars} and {rhs.nvars} variables cannot be combined")
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise StructuralError(f"unknown polynomial operation {op!r}")


Vector = tuple[Poly, ...]
"""Fiber vector: one polynomial per frame element of a bundle."""


def zero_vector(nvars: int, rank: int) -> Vector:
    """The zero vector of a rank-`rank` bundle."""
    zero = Poly.zero(nvars)
    return (zero,) * rank


def vector_is_zero(vector: Vector) -> bool:
    """Whether every entry vanishes."""
    return not any(vector)


def vector_add(lhs: Vector, rhs: Vector) -> Vector:
    """Entrywise sum."""
    return tuple(a + b for a, b in zip(lhs, rhs))


def vector_sub(lhs: Vector, rhs: Vector) -> Vector:
    """Entrywise difference."""
    return tuple(a - b for a, b in zip(lhs, rhs))


def vector_scale(factor: Poly | Scalar, vector: Vector) -> Vector:
    """Multiply every entry by a polynomial or a rational."""
    return tuple(entry * factor for entry in vector)
