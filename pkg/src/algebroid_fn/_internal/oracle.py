# Brute-force reference implementations: full permutation sums, the classical
# Koszul differential, Christoffel curvature and extraction of the bracket from its
# defining operator equation. Only the scalar tower and the form container are shared.

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial
from typing import TYPE_CHECKING

from algebroid_fn._internal.algebroid import Algebroid, VectorBundle
from algebroid_fn._internal.connections import CurvatureTensor
from algebroid_fn._internal.errors import StructuralError
from algebroid_fn._internal.scalars import Poly, Vector
from algebroid_fn._internal.vforms import VForm

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from algebroid_fn._internal.connections import Connection

_logger = logging.getLogger(__name__)


def parity(perm: Sequence[int]) -> int:
    """Sign of a permutation of `0..n-1` from its cycle decomposition."""
    seen = [False] * len(perm)
    transpositions = 0
    for start in range(len(perm)):
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        transpositions += max(length - 1, 0)
    return -1 if transpositions % 2 else 1


def _value(table: Mapping[tuple[int, ...], Vector], args: Sequence[int], nvars: int, rank: int) -> list[Poly]:
    zero = [Poly.zero(nvars)] * rank
    if len(set(args)) != len(args):
        return zero
    order = sorted(range(len(args)), key=lambda i: args[i])
    stored = table.get(tuple(args[i] for i in order))
    if stored is None:
        return zero
    sign = parity(order)
    return [entry * sign for entry in stored]


def _add(lhs: list[Poly], rhs: Sequence[Poly], weight: Poly | int | Fraction = 1) -> list[Poly]:
    return [a + b * weight for a, b in zip(lhs, rhs)]


def _is_zero(values: Sequence[Poly]) -> bool:
    return not any(values)


def _empty(source: Algebroid, target: Algebroid | VectorBundle, degree: int) -> VForm:
    return VForm(source, target, degree, {})


def insert_bruteforce(phi: VForm, psi: VForm) -> VForm:
    """Insertion `i_phi psi` as a full permutation sum divided by `p! k!`.

    Raises:
        StructuralError: When `phi` is not `A`-valued or the sources differ.
    """
    if phi.target != phi.source or psi.source != phi.source:
        raise StructuralError("insertion needs an A-valued form on the same algebroid")
    algebroid = phi.source
    p, k = phi.degree, psi.degree - 1
    degree = p + k
    if psi.degree < 1 or phi.is_zero() or psi.is_zero() or not 0 <= degree <= algebroid.rank:
        return _empty(algebroid, psi.target, degree)
    phi_table, psi_table = phi.components, psi.components
    nvars, rank, width = algebroid.nvars, algebroid.rank, psi.target.rank
    scale = Fraction(1, factorial(p) * factorial(k))
    components = {}
    for index in combinations(range(rank), degree):
        total = [Poly.zero(nvars)] * width
        for perm in permutations(range(degree)):
            args = [index[i] for i in perm]
            direction = _value(phi_table, args[:p], nvars, rank)
            sign = parity(perm)
            for c, coeff in enumerate(direction):
                if coeff:
                    total = _add(total, _value(psi_table, [c, *args[p:]], nvars, width), coeff * sign)
        components[index] = [entry * scale for entry in total]
    return VForm(algebroid, psi.target, degree, components)


def _anchor(algebroid: Algebroid, coeffs: Sequence[Poly], function: Poly) -> Poly:
    result = Poly.zero(algebroid.nvars)
    for a, coeff in enumerate(coeffs):
        for i, rho in enumerate(algebroid.anchor[a]):
            if coeff and rho:
                result = result + coeff * rho * function.partial(i)
    return result


def _bracket(algebroid: Algebroid, x: Sequence[Poly], y: Sequence[Poly]) -> list[Poly]:
    result = [_anchor(algebroid, x, y[c]) - _anchor(algebroid, y, x[c]) for c in range(algebroid.rank)]
    for a, b in product(range(algebroid.rank), repeat=2):
        if x[a] and y[b]:
            result = _add(result, algebroid.structure[a][b], x[a] * y[b])
    return result


def _evaluate(form: VForm, table: Mapping[tuple[int, ...], Vector], sections: Sequence[Sequence[Poly]]) -> list[Poly]:
    nvars, rank = form.source.nvars, form.source.rank
    total = [Poly.zero(nvars)] * form.target.rank
    for args in product(range(rank), repeat=len(sections)):
        weight = Poly.constant(nvars, 1)
        for section, a in zip(sections, args):
            weight = weight * section[a]
        if weight:
            total = _add(total, _value(table, args, nvars, form.target.rank), weight)
    return total


def de_rham_koszul(algebroid: Algebroid, omega: VForm) -> VForm:
    """The de Rham differential of a scalar form by the Koszul formula on frame sections.

    Raises:
        StructuralError: When `omega` is not a scalar form on `algebroid`.
    """
    if omega.source != algebroid or omega.target != VectorBundle.line(algebroid.nvars):
        raise StructuralError("the Koszul differential acts on scalar forms of the algebroid")
    degree = omega.degree + 1
    if omega.is_zero() or not 0 <= degree <= algebroid.rank:
        return _empty(algebroid, omega.target, degree)
    nvars, rank = algebroid.nvars, algebroid.rank
    table = omega.components
    frame = [[Poly.constant(nvars, int(i == a)) for i in range(rank)] for a in range(rank)]
    components = {}
    for index in combinations(range(rank), degree):
        sections = [frame[a] for a in index]
        total = Poly.zero(nvars)
        for i, z in enumerate(sections):
            rest = sections[:i] + sections[i + 1 :]
            (value,) = _evaluate(omega, table, rest)
            total = total + (-1) ** i * _anchor(algebroid, z, value)
        for i, j in combinations(range(degree), 2):
            rest = [z for position, z in enumerate(sections) if position not in (i, j)]
            commutator = _bracket(algebroid, sections[i], sections[j])
            (value,) = _evaluate(omega, table, [commutator, *rest])
            total = total + (-1) ** (i + j) * value
        components[index] = [total]
    return VForm(algebroid, omega.target, degree, components)


def _lie(algebroid: Algebroid, phi: VForm, omega: VForm) -> VForm:
    first = insert_bruteforce(phi, de_rham_koszul(algebroid, omega))
    second = de_rham_koszul(algebroid, insert_bruteforce(phi, omega))
    return first + second * (-1) ** (phi.degree % 2)


def fn_extract(connection_a: Connection, phi: VForm, psi: VForm) -> VForm:
    """Solve the defining operator equation of the bracket for `[phi, psi]`.

    Applies `[L_phi, i_psi] + (-1)^(k(l-1)) L_{i_psi phi}` to each dual frame form `e^c`
    on scalar forms and reads the `c`-th component of the bracket off the result.

    Raises:
        PreconditionError: When the connection has torsion.
    """
    connection_a.require_torsion_free()
    algebroid = phi.source
    k, l = phi.degree, psi.degree
    degree = k + l
    if not 0 <= degree <= algebroid.rank:
        return _empty(algebroid, algebroid, degree)
    line = VectorBundle.line(algebroid.nvars)
    sign = (-1) ** ((k * (l - 1)) % 2)
    inserted = insert_bruteforce(psi, phi)
    columns = []
    for c in range(algebroid.rank):
        dual = VForm(algebroid, line, 1, {(c,): [1]})
        lie_then_insert = insert_bruteforce(psi, _lie(algebroid, phi, dual))
        insert_then_lie = _lie(algebroid, phi, insert_bruteforce(psi, dual))
        operator = insert_then_lie - lie_then_insert * sign + _lie(algebroid, inserted, dual) * sign
        columns.append(operator.components)
    components = {}
    zero = Poly.zero(algebroid.nvars)
    for index in combinations(range(algebroid.rank), degree):
        components[index] = [column.get(index, (zero,))[0] for column in columns]
    _logger.debug("extracted bracket of degrees %d and %d on %s", k, l, algebroid.name)
    return VForm(algebroid, algebroid, degree, components)


def curvature_bruteforce(connection: Connection) -> CurvatureTensor:
    """Curvature from the Christoffel formula.

    `R_{ab alpha}^beta = rho_a G_{b alpha}^beta - rho_b G_{a alpha}^beta
    + sum_g (G_{b alpha}^g G_{a g}^beta - G_{a alpha}^g G_{b g}^beta) - sum_c c_ab^c G_{c alpha}^beta`.
    """
    base = connection.base
    gamma = connection.christoffel
    m = connection.bundle.rank
    table = []
    for a in range(base.rank):
        plane = []
        for b in range(base.rank):
            rows = []
            for alpha in range(m):
                row = []
                for beta in range(m):
                    entry = base.anchor_derivative(a, gamma[b][alpha][beta])
                    entry = entry - base.anchor_derivative(b, gamma[a][alpha][beta])
                    for g in range(m):
                        entry = entry + gamma[b][alpha][g] * gamma[a][g][beta] - gamma[a][alpha][g] * gamma[b][g][beta]
                    for c in range(base.rank):
                        entry = entry - base.structure[a][b][c] * gamma[c][alpha][beta]
                    row.append(entry)
                rows.append(tuple(row))
            plane.append(tuple(rows))
        table.append(tuple(plane))
    return CurvatureTensor(base, connection.bundle, tuple(table))


def r_extended_bruteforce(connection_a: Connection, phi: VForm, psi: VForm) -> VForm:
    """`R(phi, psi)` as a full permutation sum divided by `k! l!`, from the Christoffel curvature."""
    base = connection_a.base
    k, l = phi.degree, psi.degree
    degree = k + l + 1
    if phi.is_zero() or psi.is_zero() or not 0 <= degree <= base.rank:
        return _empty(base, base, degree)
    table = curvature_bruteforce(connection_a).components
    phi_table, psi_table = phi.components, psi.components
    nvars, rank = base.nvars, base.rank
    scale = Fraction(1, factorial(k) * factorial(l))
    components = {}
    for index in combinations(range(rank), degree):
        total = [Poly.zero(nvars)] * rank
        for perm in permutations(range(degree)):
            args = [index[i] for i in perm]
            x = _value(phi_table, args[:k], nvars, rank)
            y = _value(psi_table, args[k : k + l], nvars, rank)
            sign = parity(perm)
            for a, b in product(range(rank), repeat=2):
                if x[a] and y[b]:
                    total = _add(total, table[a][b][args[-1]], x[a] * y[b] * sign)
        components[index] = [entry * scale for entry in total]
    return VForm(base, base, degree, components)


def _endo(tensor: VForm, vector: Sequence[Poly]) -> list[Poly]:
    table = tensor.components
    nvars, rank = tensor.source.nvars, tensor.source.rank
    result = [Poly.zero(nvars)] * rank
    for a, coeff in enumerate(vector):
        if coeff:
            result = _add(result, _value(table, [a], nvars, rank), coeff)
    return result


def nijenhuis_classical(algebroid: Algebroid, tensor: VForm) -> VForm:
    """The four-term Nijenhuis torsion `[NX, NY] - N[NX, Y] - N[X, NY] + N^2[X, Y]`."""
    if tensor.degree != 1 or tensor.source != algebroid or tensor.target != algebroid:
        raise StructuralError(f"the Nijenhuis torsion needs an A-valued 1-form on {algebroid.name}")
    nvars, rank = algebroid.nvars, algebroid.rank
    frame = [[Poly.constant(nvars, int(i == a)) for i in range(rank)] for a in range(rank)]
    components = {}
    for a, b in combinations(range(rank), 2):
        x, y = frame[a], frame[b]
        nx, ny = _endo(tensor, x), _endo(tensor, y)
        total = _bracket(algebroid, nx, ny)
        total = _add(total, _endo(tensor, _bracket(algebroid, nx, y)), -1)
        total = _add(total, _endo(tensor, _bracket(algebroid, x, ny)), -1)
        total = _add(total, _endo(tensor, _endo(tensor, _bracket(algebroid, x, y))))
        components[(a, b)] = total
    return VForm(algebroid, algebroid, 2, components)


def jacobi_bruteforce(algebroid: Algebroid) -> list[tuple[int, int, int]]:
    """Frame triples `a < b < c` whose Jacobiator does not vanish."""
    nvars, rank = algebroid.nvars, algebroid.rank
    frame = [[Poly.constant(nvars, int(i == a)) for i in range(rank)] for a in range(rank)]
    failures = []
    for a, b, c in combinations(range(rank), 3):
        x, y, z = frame[a], frame[b], frame[c]
        total = _bracket(algebroid, _bracket(algebroid, x, y), z)
        total = _add(total, _bracket(algebroid, _bracket(algebroid, y, z), x))
        total = _add(total, _bracket(algebroid, _bracket(algebroid, z, x), y))
        if not _is_zero(total):
            failures.append((a, b, c))
    return failures
