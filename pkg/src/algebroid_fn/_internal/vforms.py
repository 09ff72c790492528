# Vector-valued forms on an algebroid: shuffles, frame components, evaluation,
# the module wedge and the insertion operator.

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import TYPE_CHECKING, NamedTuple

from algebroid_fn._internal.algebroid import Algebroid, Bundle, Section, VectorBundle, _as_poly
from algebroid_fn._internal.errors import StructuralError
from algebroid_fn._internal.scalars import (
    Poly,
    Scalar,
    Vector,
    vector_add,
    vector_is_zero,
    vector_scale,
    zero_vector,
)

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping, Sequence

_logger = logging.getLogger(__name__)

MultiIndex = tuple[int, ...]
"""Strictly increasing tuple of 0-based frame indices."""


def permutation_sign(perm: Sequence[int]) -> int:
    """Parity of a permutation given in one-line notation, as `+1` or `-1`."""
    inversions = sum(1 for i, j in combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def merge_sign(left: Sequence[int], right: Sequence[int]) -> int:
    """Sign of the shuffle putting the disjoint increasing blocks `left`, `right` into sorted order."""
    inversions = sum(1 for s in left for t in right if s > t)
    return -1 if inversions % 2 else 1


def sort_with_sign(indices: Sequence[int]) -> tuple[int, MultiIndex]:
    """Sort frame indices, returning the sign of the sorting permutation; `0` on a repeated index."""
    if len(set(indices)) != len(indices):
        return 0, ()
    return permutation_sign(indices), tuple(sorted(indices))


class Shuffle(NamedTuple):
    """A permutation ascending within consecutive blocks."""

    perm: tuple[int, ...]
    """One-line notation, 0-based: `perm[i]` is the image of `i`."""
    blocks: tuple[int, ...]
    """Block profile, e.g. `(k, s)` or `(k, l, s)`."""
    sign: int
    """Parity of the permutation."""


@lru_cache(maxsize=None)
def _shuffles(blocks: tuple[int, ...]) -> tuple[Shuffle, ...]:
    total = sum(blocks)

    def fill(remaining: tuple[int, ...], sizes: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if not sizes:
            yield ()
            return
        for chosen in combinations(remaining, sizes[0]):
            rest = tuple(i for i in remaining if i not in chosen)
            for tail in fill(rest, sizes[1:]):
                yield chosen + tail

    return tuple(Shuffle(perm, blocks, permutation_sign(perm)) for perm in fill(tuple(range(total)), blocks))


def enumerate_shuffles(blocks: Sequence[int]) -> tuple[Shuffle, ...]:
    """All shuffles of a block profile `(k, s)` or `(k, l, s)`.

    There are `m! / (k! l! s!)` of them, enumerated deterministically and cached per profile.

    Raises:
        StructuralError: On a negative block size.
    """
    blocks = tuple(int(size) for size in blocks)
    if any(size < 0 for size in blocks):
        raise StructuralError(f"block sizes must be non-negative, got {blocks}")
    return _shuffles(blocks)


class VForm:
    """An element of `Omega^k(A, E)`, stored by its values on increasing frame tuples.

    Absent keys mean zero. Degrees above the rank are identically zero; negative degrees only
    occur as the zero result of degree-lowering operators (e.g. inserting into a function).
    """

    __slots__ = ("_components", "degree", "source", "target")

    def __init__(
        self,
        source: Algebroid,
        target: Bundle,
        degree: int,
        components: Mapping[Sequence[int], Sequence[Poly | Scalar]] | None = None,
    ) -> None:
        """Initialize the form.

        Parameters:
            source: The algebroid `A`.
            target: The value bundle: a `VectorBundle`, the scalar line, or `A` itself.
            degree: The form degree `k`.
            components: Map from frame tuples to value vectors. Unsorted tuples are sorted
                with the corresponding sign, entries on repeated tuples must vanish.

        Raises:
            StructuralError: On out-of-range indices, wrong tuple lengths or wrong vector lengths.
        """
        if target.nvars != source.nvars:
            raise StructuralError("form source and target live over different base charts")
        clean: dict[MultiIndex, Vector] = {}
        for raw_index, raw_value in (components or {}).items():
            index = tuple(raw_index)
            if len(index) != degree:
                raise StructuralError(f"index {list(index)} does not have length {degree}")
            if any(not 0 <= i < source.rank for i in index):
                raise StructuralError(f"index {list(index)} out of range for rank {source.rank}")
            if len(raw_value) != target.rank:
                raise StructuralError(f"value at {list(index)} must have {target.rank} entries")
            value = tuple(_as_poly(source.nvars, entry) for entry in raw_value)
            sign, key = sort_with_sign(index)
            if not sign:
                if not vector_is_zero(value):
                    raise StructuralError(f"non-zero value on repeated index {list(index)}")
                continue
            _accumulate(clean, key, vector_scale(sign, value))
        self.source = source
        self.target = target
        self.degree = degree
        self._components = {key: value for key, value in clean.items() if not vector_is_zero(value)}

    @classmethod
    def _make(cls, source: Algebroid, target: Bundle, degree: int, components: dict[MultiIndex, Vector]) -> VForm:
        # Trusted constructor: keys are increasing and in range.
        form = object.__new__(cls)
        form.source = source
        form.target = target
        form.degree = degree
        form._components = {key: value for key, value in components.items() if not vector_is_zero(value)}
        return form

    @classmethod
    def zero(cls, source: Algebroid, target: Bundle, degree: int) -> VForm:
        """The zero form of the given degree."""
        return cls._make(source, target, degree, {})

    @classmethod
    def dual(cls, source: Algebroid, c: int) -> VForm:
        """The scalar 1-form `e^c` dual to the frame element `e_c`."""
        if not 0 <= c < source.rank:
            raise StructuralError(f"frame index {c} out of range for rank {source.rank}")
        return cls._make(source, scalar_line(source), 1, {(c,): (Poly.constant(source.nvars, 1),)})

    @classmethod
    def identity(cls, source: Algebroid) -> VForm:
        """The identity endomorphism `id` as an element of `Omega^1(A, A)`."""
        return cls._make(
            source,
            source,
            1,
            {(a,): Section.frame(source, a).coeffs for a in range(source.rank)},
        )

    @classmethod
    def scalar(cls, source: Algebroid, function: Poly | Scalar) -> VForm:
        """A function as a scalar 0-form."""
        return cls._make(source, scalar_line(source), 0, {(): (_as_poly(source.nvars, function),)})

    @classmethod
    def from_section(cls, section: Section, source: Algebroid | None = None) -> VForm:
        """A section of `E` as an element of `Omega^0(A, E)`; the source defaults to the section's algebroid."""
        if source is None:
            if not isinstance(section.bundle, Algebroid):
                raise StructuralError("a source algebroid is needed for sections of a vector bundle")
            source = section.bundle
        return cls._make(source, section.bundle, 0, {(): section.coeffs})

    @property
    def components(self) -> Mapping[MultiIndex, Vector]:
        """Non-zero values on increasing frame tuples."""
        return dict(self._components)

    @property
    def is_scalar(self) -> bool:
        """Whether the form takes values in the trivial line bundle."""
        return isinstance(self.target, VectorBundle) and self.target.scalar

    @property
    def is_vector_valued(self) -> bool:
        """Whether the form takes values in its own algebroid."""
        return self.target == self.source

    def indices(self) -> Iterator[MultiIndex]:
        """All increasing frame tuples of this degree."""
        if self.degree < 0:
            return iter(())
        return combinations(range(self.source.rank), self.degree)

    def frame_value(self, indices: Sequence[int]) -> Vector:
        """Value on an arbitrary (possibly unsorted or repeated) frame tuple."""
        sign, key = sort_with_sign(indices)
        value = self._components.get(key) if sign else None
        if value is None:
            return zero_vector(self.source.nvars, self.target.rank)
        return value if sign == 1 else tuple(-entry for entry in value)

    def as_section(self) -> Section:
        """The section of the target bundle represented by a 0-form."""
        if self.degree != 0:
            raise StructuralError(f"only 0-forms are sections, this form has degree {self.degree}")
        return Section(self.target, self.frame_value(()))

    def is_zero(self) -> bool:
        """Whether every component vanishes."""
        return not self._components

    def _check(self, other: VForm) -> None:
        if other.source != self.source or other.target != self.target or other.degree != self.degree:
            raise StructuralError(
                f"cannot combine a degree-{self.degree} form with a degree-{other.degree} form "
                "or forms over different bundles",
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VForm):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.source == other.source
            and self.target == other.target
            and self._components == other._components
        )

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: VForm) -> VForm:
        self._check(other)
        components = dict(self._components)
        for key, value in other._components.items():
            _accumulate(components, key, value)
        return VForm._make(self.source, self.target, self.degree, components)

    def __neg__(self) -> VForm:
        return self * -1

    def __sub__(self, other: VForm) -> VForm:
        return self + (-other)

    def __mul__(self, factor: Poly | Scalar) -> VForm:
        return VForm._make(
            self.source,
            self.target,
            self.degree,
            {key: vector_scale(factor, value) for key, value in self._components.items()},
        )

    __rmul__ = __mul__

    def __repr__(self) -> str:
        parts = [f"{list(index)}: [{', '.join(map(str, value))}]" for index, value in sorted(self._components.items())]
        return f"VForm(degree={self.degree}, target={self.target.name}, {{{', '.join(parts)}}})"


def _accumulate(components: dict[MultiIndex, Vector], key: MultiIndex, value: Vector) -> None:
    current = components.get(key)
    components[key] = value if current is None else vector_add(current, value)


def scalar_line(algebroid: Algebroid) -> VectorBundle:
    """The trivial line bundle over the base of an algebroid."""
    return VectorBundle.line(algebroid.nvars)


def eval_form(form: VForm, *sections: Section) -> Section:
    """Evaluate a form on sections of its source algebroid.

    The result is alternating and multilinear over polynomials: each component contributes
    its value times the determinant of the argument coefficients on its frame tuple.

    Raises:
        StructuralError: When the number of arguments differs from the degree or an argument
            is not a section of the source.
    """
    if len(sections) != form.degree:
        raise StructuralError(f"a degree-{form.degree} form takes {form.degree} arguments, got {len(sections)}")
    for section in sections:
        if section.bundle != form.source:
            raise StructuralError(f"arguments must be sections of {form.source.name}")
    result = zero_vector(form.source.nvars, form.target.rank)
    signed_perms = [(permutation_sign(perm), perm) for perm in permutations(range(form.degree))]
    for index, value in form.components.items():
        weight = Poly.zero(form.source.nvars)
        for sign, perm in signed_perms:
            term = Poly.constant(form.source.nvars, sign)
            for position, slot in enumerate(perm):
                term = term * sections[position].coeffs[index[slot]]
                if not term:
                    break
            weight = weight + term
        if weight:
            result = vector_add(result, vector_scale(weight, value))
    return Section(form.target, result)


def wedge(omega: VForm, phi: VForm) -> VForm:
    """The module product `omega ^ phi` of a scalar form and a bundle-valued form.

    Computed by the `(k, p)`-shuffle sum; `wedge(omega, .)` is the operator `epsilon_omega`.

    Raises:
        StructuralError: When `omega` is not scalar-valued or the sources differ.
    """
    if not omega.is_scalar:
        raise StructuralError("the first wedge factor must be a scalar form")
    if omega.source != phi.source:
        raise StructuralError("wedge factors live on different algebroids")
    degree = omega.degree + phi.degree
    components: dict[MultiIndex, Vector] = {}
    if degree <= phi.source.rank:
        for left, (weight,) in omega.components.items():
            for right, value in phi.components.items():
                if set(left).intersection(right):
                    continue
                key = tuple(sorted(left + right))
                _accumulate(components, key, vector_scale(weight * merge_sign(left, right), value))
    return VForm._make(phi.source, phi.target, degree, components)


def tensor(omega: VForm, section: Section) -> VForm:
    """The vector-valued form `omega ^ X` for a scalar form and a section of the source."""
    return wedge(omega, VForm.from_section(section, omega.source))


def insert(phi: VForm, psi: VForm) -> VForm:
    """The insertion operator `i_phi psi` for an `A`-valued `phi`.

    For `phi` of degree `p` and `psi` of degree `k + 1` the result has degree `p + k`:
    each `(p, k)`-shuffle feeds the value of `phi` on the first block into the first slot of
    `psi`. Inserting into a 0-form gives zero.

    Raises:
        StructuralError: When `phi` is not `A`-valued or the sources differ.
    """
    if not phi.is_vector_valued:
        raise StructuralError("insertion needs a form with values in its algebroid")
    if phi.source != psi.source:
        raise StructuralError("insertion operands live on different algebroids")
    degree = phi.degree + psi.degree - 1
    components: dict[MultiIndex, Vector] = {}
    if psi.degree >= 1 and 0 <= degree <= psi.source.rank:
        for left, direction in phi.components.items():
            for slots, value in psi.components.items():
                for position, c in enumerate(slots):
                    weight = direction[c]
                    if not weight:
                        continue
                    rest = slots[:position] + slots[position + 1 :]
                    if set(left).intersection(rest):
                        continue
                    sign = merge_sign(left, rest) * (-1 if position % 2 else 1)
                    key = tuple(sorted(left + rest))
                    _accumulate(components, key, vector_scale(weight * sign, value))
    return VForm._make(psi.source, psi.target, degree, components)
