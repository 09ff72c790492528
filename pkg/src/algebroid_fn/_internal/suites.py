# Verification suites: exact checks of the operator identities on seeded random instances.

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from itertools import product
from random import Random
from typing import TYPE_CHECKING, Any, Callable

from algebroid_fn._internal.algebroid import ZOO, Algebroid, Section, VectorBundle, bracket
from algebroid_fn._internal.config import SuiteOptions
from algebroid_fn._internal.connections import (
    Connection,
    anchor_connection,
    cov_deriv,
    curvature,
    d_nabla,
    d_nabla_squared_check,
    nabla_X_form,
    symmetrize,
    torsion,
)
from algebroid_fn._internal.errors import PreconditionError, UsageError
from algebroid_fn._internal.fncalc import (
    Commutator,
    CovariantDerivative,
    Insertion,
    cov_phi,
    fn_bracket,
    lie_deriv,
    nijenhuis,
    r_extended,
)
from algebroid_fn._internal.oracle import (
    curvature_bruteforce,
    de_rham_koszul,
    fn_extract,
    insert_bruteforce,
    nijenhuis_classical,
    r_extended_bruteforce,
)
from algebroid_fn._internal.sampling import (
    random_bundle,
    random_connection,
    random_form,
    random_section,
    random_torsion_free,
)
from algebroid_fn._internal.specfile import form_to_record, section_to_record
from algebroid_fn._internal.vforms import VForm, eval_form, insert, scalar_line, wedge

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

_logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
REJECTED = "rejected"


@dataclass(frozen=True)
class Check:
    """One exact comparison."""

    suite: str
    """Suite the check belongs to."""
    identity: str
    """Short name of the identity."""
    formula: str
    """The identity being checked."""
    algebroid: str
    """Name of the algebroid of the instance."""
    degrees: tuple[int, ...]
    """Degrees of the random inputs."""
    sample: int
    """Index of the random instance."""
    status: str
    """`pass`, `fail` or `rejected` (a precondition did not hold)."""
    witness: dict[str, Any] | None = None
    """Inputs and both computed sides, on failure or rejection."""

    def to_record(self) -> dict[str, Any]:
        """A JSON-compatible record."""
        return {
            "suite": self.suite,
            "identity": self.identity,
            "formula": self.formula,
            "algebroid": self.algebroid,
            "degrees": list(self.degrees),
            "sample": self.sample,
            "status": self.status,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class VerificationReport:
    """All checks run by a suite, in deterministic order."""

    suite: str
    """Suite name."""
    seed: int
    """Seed the instances were drawn from."""
    checks: tuple[Check, ...] = ()
    """The checks."""

    def count(self, status: str) -> int:
        """Number of checks with the given status."""
        return sum(1 for check in self.checks if check.status == status)

    @property
    def passed(self) -> bool:
        """Whether every check passed; rejected checks do not pass."""
        return all(check.status == PASS for check in self.checks)

    def failures(self) -> list[Check]:
        """Checks that did not pass."""
        return [check for check in self.checks if check.status != PASS]

    def summary(self) -> dict[str, Any]:
        """The closing summary record."""
        return {
            "summary": True,
            "suite": self.suite,
            "seed": self.seed,
            "total": len(self.checks),
            PASS: self.count(PASS),
            FAIL: self.count(FAIL),
            REJECTED: self.count(REJECTED),
        }

    def to_json_lines(self) -> str:
        """One JSON record per check followed by the summary, keys sorted."""
        lines = [json.dumps(check.to_record(), sort_keys=True) for check in self.checks]
        lines.append(json.dumps(self.summary(), sort_keys=True))
        return "\n".join(lines) + "\n"


def _record(value: Any) -> Any:
    if isinstance(value, VForm):
        return form_to_record(value)
    if isinstance(value, Section):
        return section_to_record(value)
    if isinstance(value, bool):
        return value
    return str(value)


@dataclass
class _Instance:
    suite: str
    algebroid: Algebroid
    sample: int
    rng: Random
    options: SuiteOptions
    connection: Connection | None
    checks: list[Check] = field(default_factory=list)

    @property
    def poly(self) -> dict[str, int]:
        return {
            "poly_degree": self.options.poly_degree,
            "terms": self.options.poly_terms,
            "bound": self.options.coeff_bound,
        }

    def form(self, target: Any, degree: int) -> VForm:
        return random_form(self.rng, self.algebroid, target, degree, **self.poly)

    def vector_form(self, degree: int) -> VForm:
        return self.form(self.algebroid, degree)

    def section(self, bundle: Any = None) -> Section:
        return random_section(self.rng, self.algebroid if bundle is None else bundle, **self.poly)

    def bundle(self) -> Any:
        return random_bundle(self.rng, self.algebroid.nvars, self.options.bundle_rank)

    def any_connection(self, bundle: Any = None) -> Connection:
        return random_connection(self.rng, self.algebroid, bundle, **self.poly)

    def torsion_free(self) -> Connection:
        if self.connection is not None:
            return self.connection
        if self.options.torsionful:
            return random_connection(self.rng, self.algebroid, **self.poly)
        return random_torsion_free(self.rng, self.algebroid, **self.poly)

    def degree_pairs(self) -> Iterator[tuple[int, int]]:
        top = min(self.options.max_degree, self.algebroid.rank)
        for k, l in product(range(top + 1), repeat=2):
            if k + l <= self.algebroid.rank:
                yield k, l

    def check(
        self,
        identity: str,
        formula: str,
        degrees: Sequence[int],
        compute: Callable[[], tuple[Any, Any]],
        inputs: dict[str, Any],
    ) -> None:
        witness: dict[str, Any] | None = None
        try:
            lhs, rhs = compute()
        except PreconditionError as error:
            status = REJECTED
            witness = {"error": str(error), "torsion": _record(error.witness) if error.witness is not None else None}
        else:
            status = PASS if lhs == rhs else FAIL
            if status == FAIL:
                witness = {
                    "inputs": {name: _record(value) for name, value in inputs.items()},
                    "lhs": _record(lhs),
                    "rhs": _record(rhs),
                }
        self.checks.append(
            Check(
                suite=self.suite,
                identity=identity,
                formula=formula,
                algebroid=self.algebroid.name,
                degrees=tuple(degrees),
                sample=self.sample,
                status=status,
                witness=witness,
            ),
        )


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _suite_rn(run: _Instance) -> None:
    for k, l in run.degree_pairs():
        phi, psi = run.vector_form(k), run.vector_form(l)
        bundle = run.bundle()
        lhs_op = Commutator(Insertion(phi), Insertion(psi))
        rhs_op = Insertion(insert(phi, psi)) - _sign((k - 1) * (l - 1)) * Insertion(insert(psi, phi))
        for q in range(run.algebroid.rank + 1):
            s = run.form(bundle, q)
            run.check(
                "insertion-commutator",
                "[i_phi, i_psi] = i_{i_phi psi} - (-1)^((k-1)(l-1)) i_{i_psi phi}",
                (k, l, q),
                lambda s=s: (lhs_op(s), rhs_op(s)),
                {"phi": phi, "psi": psi, "s": s},
            )


def _suite_icov(run: _Instance) -> None:
    for k, l in run.degree_pairs():
        phi, psi = run.vector_form(k), run.vector_form(l)
        connection_a = run.torsion_free()
        bundle = run.bundle()
        connection_e = run.any_connection(bundle)
        for q in range(run.algebroid.rank + 1):
            s = run.form(bundle, q)

            def compute(s: VForm = s) -> tuple[VForm, VForm]:
                nabla_phi = CovariantDerivative(connection_a, connection_e, phi)
                lhs = Commutator(nabla_phi, Insertion(psi))(s)
                derived = cov_phi(connection_a, connection_a, phi, psi)
                rhs = insert(derived, s) - _sign(k * (l - 1)) * cov_phi(
                    connection_a,
                    connection_e,
                    insert(psi, phi),
                    s,
                )
                return lhs, rhs

            run.check(
                "covariant-insertion",
                "[nabla_phi, i_psi] = i_{nabla_phi psi} - (-1)^(k(l-1)) nabla_{i_psi phi}",
                (k, l, q),
                compute,
                {"phi": phi, "psi": psi, "s": s},
            )


def _covcov(run: _Instance, connection_e: Connection, target: Any, identity: str) -> None:
    for k, l in run.degree_pairs():
        phi, psi = run.vector_form(k), run.vector_form(l)
        connection_a = run.torsion_free()
        for q in range(run.algebroid.rank + 1):
            s = run.form(target, q)

            def compute(s: VForm = s) -> tuple[VForm, VForm]:
                nabla_phi = CovariantDerivative(connection_a, connection_e, phi)
                nabla_psi = CovariantDerivative(connection_a, connection_e, psi)
                lhs = Commutator(nabla_phi, nabla_psi)(s)
                first = cov_phi(connection_a, connection_e, cov_phi(connection_a, connection_a, phi, psi), s)
                second = cov_phi(connection_a, connection_e, cov_phi(connection_a, connection_a, psi, phi), s)
                rhs = first - _sign(k * l) * second - insert(r_extended(connection_a, phi, psi), s)
                return lhs, rhs

            run.check(
                identity,
                "[nabla_phi, nabla_psi] = nabla_{nabla_phi psi} - (-1)^(kl) nabla_{nabla_psi phi} - i_{R(phi, psi)}",
                (k, l, q),
                compute,
                {"phi": phi, "psi": psi, "s": s},
            )


def _suite_covcov(run: _Instance) -> None:
    rho = anchor_connection(run.algebroid)
    _covcov(run, rho, rho.bundle, "covariant-commutator")
    if run.algebroid.nvars == 0:
        # Zero Christoffel symbols are flat over a point.
        flat = Connection.zero(run.algebroid, VectorBundle(rank=2, nvars=0, name="E"), name="flat")
        _covcov(run, flat, flat.bundle, "covariant-commutator-flat-rank2")


def _suite_main(run: _Instance) -> None:
    first = run.torsion_free()
    second = random_torsion_free(run.rng, run.algebroid, **run.poly)
    for k, l in run.degree_pairs():
        phi, psi = run.vector_form(k), run.vector_form(l)
        inputs = {"phi": phi, "psi": psi}
        run.check(
            "bracket-oracle",
            "[phi, psi] = L_phi psi - (-1)^(kl) L_psi phi equals the bracket solved from its defining equation",
            (k, l),
            lambda phi=phi, psi=psi: (fn_bracket(first, phi, psi), fn_extract(first, phi, psi)),
            inputs,
        )
        run.check(
            "bracket-connection-independence",
            "[phi, psi] computed with two torsion-free connections agree",
            (k, l),
            lambda phi=phi, psi=psi: (fn_bracket(first, phi, psi), fn_bracket(second, phi, psi)),
            inputs,
        )
        run.check(
            "bracket-antisymmetry",
            "[phi, psi] = -(-1)^(kl) [psi, phi]",
            (k, l),
            lambda phi=phi, psi=psi, k=k, l=l: (
                fn_bracket(first, phi, psi),
                -_sign(k * l) * fn_bracket(first, psi, phi),
            ),
            inputs,
        )
    x, y = run.section(), run.section()
    run.check(
        "bracket-sections",
        "[X, Y] of sections as 0-forms is the algebroid bracket",
        (0, 0),
        lambda: (
            fn_bracket(first, VForm.from_section(x), VForm.from_section(y)),
            VForm.from_section(bracket(run.algebroid, x, y)),
        ),
        {"X": x, "Y": y},
    )


def _suite_derivations(run: _Instance) -> None:
    algebroid = run.algebroid
    rho = anchor_connection(algebroid)
    line = scalar_line(algebroid)
    bundle = run.bundle()
    connection_a = run.torsion_free()
    connection_e = run.any_connection(bundle)
    top = min(run.options.max_degree, algebroid.rank)
    for a, q in product(range(algebroid.rank + 1), repeat=2):
        if a + q > algebroid.rank:
            continue
        omega, s = run.form(line, a), run.form(bundle, q)
        inputs: dict[str, Any] = {"omega": omega, "s": s}
        run.check(
            "d-derivation",
            "d(omega ^ s) = d omega ^ s + (-1)^a omega ^ d s",
            (a, q),
            lambda omega=omega, s=s, a=a: (
                d_nabla(connection_e, wedge(omega, s)),
                wedge(d_nabla(rho, omega), s) + _sign(a) * wedge(omega, d_nabla(connection_e, s)),
            ),
            inputs,
        )
        for k in range(top + 1):
            phi = run.vector_form(k)
            derivations = {
                "insertion": (k - 1, lambda f, phi=phi: insert(phi, f), lambda f, phi=phi: insert(phi, f)),
                "lie": (
                    k,
                    lambda f, phi=phi: lie_deriv(rho, phi, f),
                    lambda f, phi=phi: lie_deriv(connection_e, phi, f),
                ),
                "covariant": (
                    k,
                    lambda f, phi=phi: cov_phi(connection_a, rho, phi, f),
                    lambda f, phi=phi: cov_phi(connection_a, connection_e, phi, f),
                ),
            }
            for name, (degree, on_scalars, on_values) in derivations.items():
                run.check(
                    f"{name}-derivation",
                    "D(omega ^ s) = D omega ^ s + (-1)^(deg D a) omega ^ D s",
                    (a, q, k),
                    lambda omega=omega, s=s, a=a, degree=degree, on_scalars=on_scalars, on_values=on_values: (
                        on_values(wedge(omega, s)),
                        wedge(on_scalars(omega), s) + _sign(degree * a) * wedge(omega, on_values(s)),
                    ),
                    {**inputs, "phi": phi},
                )
            if a + k <= algebroid.rank:
                run.check(
                    "covariant-tensoriality",
                    "nabla_{omega ^ phi} s = omega ^ nabla_phi s",
                    (a, q, k),
                    lambda omega=omega, s=s, phi=phi: (
                        cov_phi(connection_a, connection_e, wedge(omega, phi), s),
                        wedge(omega, cov_phi(connection_a, connection_e, phi, s)),
                    ),
                    {**inputs, "phi": phi},
                )
    x = run.section()
    x_form = VForm.from_section(x)
    for q in range(algebroid.rank + 1):
        s = run.form(bundle, q)
        run.check(
            "lie-along-section",
            "L_X s = nabla_X s + i_{nabla X} s",
            (0, q),
            lambda s=s: (
                lie_deriv(connection_e, x_form, s),
                nabla_X_form(connection_a, connection_e, x, s) + insert(d_nabla(connection_a, x_form), s),
            ),
            {"X": x, "s": s},
        )
        run.check(
            "covariant-along-section",
            "nabla_phi s for a section phi = X is nabla_X s",
            (0, q),
            lambda s=s: (
                cov_phi(connection_a, connection_e, x_form, s),
                nabla_X_form(connection_a, connection_e, x, s),
            ),
            {"X": x, "s": s},
        )


def _suite_dsquare(run: _Instance) -> None:
    rho = anchor_connection(run.algebroid)
    bundle = run.bundle()
    connection = run.any_connection(bundle)
    for q in range(run.algebroid.rank + 1):
        s = run.form(bundle, q)
        run.check(
            "d-squared-curvature",
            "(d^nabla)^2 phi = sum over (2, p)-shuffles of R(Z, Z) phi(Z..)",
            (q,),
            lambda s=s: (d_nabla_squared_check(connection, s), True),
            {"phi": s},
        )
        omega = run.form(rho.bundle, q)
        run.check(
            "d-squared-anchor",
            "d d omega = 0 for the flat anchor connection",
            (q,),
            lambda omega=omega: (d_nabla(rho, d_nabla(rho, omega)), VForm.zero(run.algebroid, rho.bundle, q + 2)),
            {"omega": omega},
        )


def _suite_tensoriality(run: _Instance) -> None:
    algebroid = run.algebroid
    connection = run.any_connection()
    bundle = run.bundle()
    connection_e = run.any_connection(bundle)
    x, y = run.section(), run.section()
    s = run.section(bundle)
    inputs = {"X": x, "Y": y, "s": s}
    if algebroid.rank >= 2:
        run.check(
            "torsion-tensorial",
            "T(X, Y) = nabla_X Y - nabla_Y X - [X, Y]",
            (2,),
            lambda: (
                eval_form(torsion(connection), x, y),
                cov_deriv(connection, x, y) - cov_deriv(connection, y, x) - bracket(algebroid, x, y),
            ),
            inputs,
        )
    run.check(
        "curvature-tensorial",
        "R(X, Y) s = nabla_X nabla_Y s - nabla_Y nabla_X s - nabla_[X, Y] s",
        (2,),
        lambda: (
            curvature(connection_e).apply(x, y, s),
            cov_deriv(connection_e, x, cov_deriv(connection_e, y, s))
            - cov_deriv(connection_e, y, cov_deriv(connection_e, x, s))
            - cov_deriv(connection_e, bracket(algebroid, x, y), s),
        ),
        inputs,
    )
    symmetric = symmetrize(connection)
    run.check(
        "symmetrize-torsion-free",
        "torsion(symmetrize(nabla)) = 0",
        (2,),
        lambda: (torsion(symmetric), VForm.zero(algebroid, algebroid, 2)),
        {},
    )
    run.check(
        "symmetrize-projection",
        "symmetrize(symmetrize(nabla)) = symmetrize(nabla)",
        (2,),
        lambda: (symmetrize(symmetric), symmetric),
        {},
    )
    run.check(
        "anchor-connection-flat",
        "the anchor connection on functions is flat",
        (2,),
        lambda: (curvature(anchor_connection(algebroid)).is_flat(), True),
        {},
    )


def _suite_oracle(run: _Instance) -> None:
    algebroid = run.algebroid
    bundle = run.bundle()
    for p, q in product(range(algebroid.rank + 1), range(1, algebroid.rank + 1)):
        if p + q - 1 > min(algebroid.rank, 4):
            continue
        phi, psi = run.vector_form(p), run.form(bundle, q)
        run.check(
            "insertion-bruteforce",
            "i_phi psi by shuffles equals the full permutation sum over p! k!",
            (p, q),
            lambda phi=phi, psi=psi: (insert(phi, psi), insert_bruteforce(phi, psi)),
            {"phi": phi, "psi": psi},
        )
    connection = run.any_connection()
    run.check(
        "curvature-bruteforce",
        "curvature by the defining formula equals the Christoffel formula",
        (2,),
        lambda: (curvature(connection), curvature_bruteforce(connection)),
        {},
    )
    for k, l in run.degree_pairs():
        if k + l + 1 > algebroid.rank:
            continue
        phi, psi = run.vector_form(k), run.vector_form(l)
        run.check(
            "extended-curvature-bruteforce",
            "R(phi, psi) by (k, l, 1)-shuffles equals the full permutation sum",
            (k, l),
            lambda phi=phi, psi=psi: (r_extended(connection, phi, psi), r_extended_bruteforce(connection, phi, psi)),
            {"phi": phi, "psi": psi},
        )
    rho = anchor_connection(algebroid)
    for q in range(algebroid.rank + 1):
        omega = run.form(rho.bundle, q)
        run.check(
            "de-rham-koszul",
            "d omega from the anchor connection equals the Koszul formula",
            (q,),
            lambda omega=omega: (d_nabla(rho, omega), de_rham_koszul(algebroid, omega)),
            {"omega": omega},
        )
    tensor = run.vector_form(1)
    connection_a = run.torsion_free()
    run.check(
        "nijenhuis-classical",
        "[N, N] / 2 = [NX, NY] - N[NX, Y] - N[X, NY] + N^2[X, Y]",
        (1, 1),
        lambda: (nijenhuis(connection_a, tensor), nijenhuis_classical(algebroid, tensor)),
        {"N": tensor},
    )


def _suite_fn_jacobi(run: _Instance) -> None:
    connection = run.torsion_free()
    top = min(run.options.max_degree, 1)
    for k, l, m in product(range(top + 1), repeat=3):
        if k + l + m > run.algebroid.rank:
            continue
        phi, psi, chi = run.vector_form(k), run.vector_form(l), run.vector_form(m)

        def compute(phi: VForm = phi, psi: VForm = psi, chi: VForm = chi, k: int = k, l: int = l) -> tuple[VForm, VForm]:
            lhs = fn_bracket(connection, phi, fn_bracket(connection, psi, chi))
            rhs = fn_bracket(connection, fn_bracket(connection, phi, psi), chi) + _sign(k * l) * fn_bracket(
                connection,
                psi,
                fn_bracket(connection, phi, chi),
            )
            return lhs, rhs

        run.check(
            "bracket-jacobi",
            "[phi, [psi, chi]] = [[phi, psi], chi] + (-1)^(kl) [psi, [phi, chi]]",
            (k, l, m),
            compute,
            {"phi": phi, "psi": psi, "chi": chi},
        )


SUITES: dict[str, Callable[[_Instance], None]] = {
    "rn": _suite_rn,
    "icov": _suite_icov,
    "covcov": _suite_covcov,
    "main": _suite_main,
    "derivations": _suite_derivations,
    "dsquare": _suite_dsquare,
    "tensoriality": _suite_tensoriality,
    "oracle": _suite_oracle,
    "fn-jacobi": _suite_fn_jacobi,
}
"""Suite runners by name."""


def run_suite(
    name: str,
    options: SuiteOptions | None = None,
    *,
    algebroids: Sequence[Algebroid] | None = None,
    connection: Connection | None = None,
) -> VerificationReport:
    """Run a verification suite.

    Parameters:
        name: One of the names in `SUITES`.
        options: Seed and size bounds; defaults apply when omitted.
        algebroids: Algebroids to run on, instead of the built-in ones named in the options.
        connection: Connection on `A` to use wherever a torsion-free one is required,
            instead of a random one. A connection with torsion yields rejected checks.

    Raises:
        UsageError: On an unknown suite name.

    Returns:
        The report, identical for identical arguments.
    """
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    options = options or SuiteOptions()
    targets = list(algebroids) if algebroids is not None else [ZOO[zoo_name]() for zoo_name in options.algebroids]
    checks: list[Check] = []
    for algebroid in targets:
        own_connection = connection if connection is not None and connection.base == algebroid else None
        for sample in range(options.samples):
            rng = Random(f"{options.seed}/{name}/{algebroid.name}/{sample}")  # noqa: S311
            instance = _Instance(name, algebroid, sample, rng, options, own_connection)
            SUITES[name](instance)
            _logger.debug("%s on %s, sample %d: %d check(s)", name, algebroid.name, sample, len(instance.checks))
            checks.extend(instance.checks)
    report = VerificationReport(name, options.seed, tuple(checks))
    _logger.info("suite %s: %d/%d passed", name, report.count(PASS), len(checks))
    return report
