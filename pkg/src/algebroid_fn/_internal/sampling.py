# Seeded random instances: polynomials, sections, forms and connections.

from __future__ import annotations

from itertools import product
from typing import TYPE_CHECKING

from algebroid_fn._internal.algebroid import Algebroid, Bundle, Section, VectorBundle
from algebroid_fn._internal.connections import Connection, symmetrize
from algebroid_fn._internal.scalars import Monomial, Poly
from algebroid_fn._internal.vforms import VForm

if TYPE_CHECKING:
    from random import Random


def _monomials(nvars: int, degree: int) -> list[Monomial]:
    return [monom for monom in product(range(degree + 1), repeat=nvars) if sum(monom) <= degree]


def random_poly(rng: Random, nvars: int, *, poly_degree: int = 2, terms: int = 2, bound: int = 5) -> Poly:
    """A polynomial with at most `terms` monomials of degree at most `poly_degree`.

    Coefficients are integers drawn uniformly from `[-bound, bound]`.
    """
    monomials = _monomials(nvars, poly_degree)
    chosen = rng.sample(monomials, min(terms, len(monomials)))
    return Poly(nvars, {monom: rng.randint(-bound, bound) for monom in chosen})


def random_section(rng: Random, bundle: Bundle, **poly_options: int) -> Section:
    """A section with random polynomial coefficients."""
    return Section(bundle, tuple(random_poly(rng, bundle.nvars, **poly_options) for _ in range(bundle.rank)))


def random_form(rng: Random, source: Algebroid, target: Bundle, degree: int, **poly_options: int) -> VForm:
    """A form with a random value on every increasing frame tuple."""
    components = {
        index: [random_poly(rng, source.nvars, **poly_options) for _ in range(target.rank)]
        for index in VForm.zero(source, target, degree).indices()
    }
    return VForm(source, target, degree, components)


def random_bundle(rng: Random, nvars: int, max_rank: int = 2) -> VectorBundle:
    """A trivial bundle of random rank between one and `max_rank`."""
    return VectorBundle(rank=rng.randint(1, max_rank), nvars=nvars, name="E")


def random_connection(rng: Random, base: Algebroid, bundle: Bundle | None = None, **poly_options: int) -> Connection:
    """A connection with random Christoffel symbols; the bundle defaults to `A`."""
    target = base if bundle is None else bundle
    entries = {
        (a, alpha, beta): random_poly(rng, base.nvars, **poly_options)
        for a in range(base.rank)
        for alpha in range(target.rank)
        for beta in range(target.rank)
    }
    return Connection.from_table(base, target, entries, name="random")


def random_torsion_free(rng: Random, base: Algebroid, **poly_options: int) -> Connection:
    """A symmetrized random connection on `A`."""
    return symmetrize(random_connection(rng, base, **poly_options))
