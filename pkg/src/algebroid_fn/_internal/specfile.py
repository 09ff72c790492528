# Spec files: JSON documents describing an algebroid, extra bundles, connections and forms.
# Indices are 1-based in files and 0-based everywhere else.

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import TYPE_CHECKING, Any, Union

from algebroid_fn._internal.algebroid import (
    Algebroid,
    Bundle,
    Section,
    ValidationReport,
    VectorBundle,
    validate_algebroid,
)
from algebroid_fn._internal.connections import Connection
from algebroid_fn._internal.errors import AlgebroidError, SpecError, UsageError
from algebroid_fn._internal.scalars import Poly, parse_rational
from algebroid_fn._internal.vforms import VForm

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

_logger = logging.getLogger(__name__)

ALGEBROID_TARGET = "A"
"""Target name of forms with values in the algebroid."""
SCALAR_TARGET = "scalar"
"""Target name of scalar forms."""

PolyRecord = Union[str, int, list]
"""A polynomial in a spec file: a rational literal or a list of `{"coeff", "exps"}` terms."""


@dataclass
class SpecFile:
    """A parsed and resolved spec file."""

    algebroid: Algebroid
    """The algebroid."""
    bundles: dict[str, VectorBundle] = field(default_factory=dict)
    """Extra vector bundles by name."""
    connections: dict[str, Connection] = field(default_factory=dict)
    """Connections by name."""
    forms: dict[str, VForm] = field(default_factory=dict)
    """Forms by name."""
    report: ValidationReport | None = None
    """Validation report of the algebroid, unless validation was skipped."""
    path: str = "<string>"
    """Where the spec was read from."""

    def form(self, name: str) -> VForm:
        """A form by name.

        Raises:
            UsageError: When there is no such form.
        """
        try:
            return self.forms[name]
        except KeyError:
            raise UsageError(f"no form named {name!r} in {self.path}; known: {', '.join(self.forms) or 'none'}") from None

    def connection(self, name: str) -> Connection:
        """A connection by name.

        Raises:
            UsageError: When there is no such connection.
        """
        try:
            return self.connections[name]
        except KeyError:
            known = ", ".join(self.connections) or "none"
            raise UsageError(f"no connection named {name!r} in {self.path}; known: {known}") from None


def _reject_duplicates(pairs: list[tuple[str, Any]]) -> dict[str, Any]:
    result: dict[str, Any] = {}
    for key, value in pairs:
        if key in result:
            raise ValueError(f"duplicate name {key!r}")
        result[key] = value
    return result


class _Reader:
    def __init__(self, path: str, *, skip_validate: bool = False) -> None:
        self.path = path
        self.skip_validate = skip_validate

    def error(self, message: str, record: str | None = None) -> SpecError:
        return SpecError(message, path=self.path, record=record)

    def expect(self, value: Any, kind: type | tuple[type, ...], what: str, record: str) -> Any:
        if not isinstance(value, kind) or isinstance(value, bool):
            raise self.error(f"{what} must be of type {getattr(kind, '__name__', kind)}", record)
        return value

    def poly(self, nvars: int, value: Any, record: str) -> Poly:
        try:
            if isinstance(value, list):
                return Poly.from_records(nvars, value)
            return Poly.constant(nvars, parse_rational(value))
        except (AttributeError, KeyError, TypeError, ValueError) as error:
            raise self.error(f"invalid polynomial: {error}", record) from None

    def index(self, value: Any, bound: int, what: str, record: str) -> int:
        self.expect(value, int, what, record)
        if not 1 <= value <= bound:
            raise self.error(f"{what} {value} out of range 1..{bound}", record)
        return value - 1

    def algebroid(self, data: Any) -> Algebroid:
        record = "algebroid"
        data = self.expect(data, dict, "algebroid", record)
        name = str(data.get("name", "A"))
        # `n` and `r` are accepted as short names
        nvars = self.expect(data.get("nvars", data.get("n", 0)), int, "nvars", record)
        rank = self.expect(data.get("rank", data.get("r")), int, "rank", record)
        if nvars < 0 or rank < 1:
            raise self.error("nvars must be non-negative and rank positive", record)
        anchor_rows = self.expect(data.get("anchor", [[0] * nvars for _ in range(rank)]), list, "anchor", record)
        if len(anchor_rows) != rank or any(not isinstance(row, list) or len(row) != nvars for row in anchor_rows):
            raise self.error(f"anchor must be a {rank}x{nvars} table", record)
        anchor = [[self.poly(nvars, value, record) for value in row] for row in anchor_rows]
        structure: dict[tuple[int, int, int], Poly] = {}
        seen: set[tuple[int, int, int]] = set()
        for entry in self.expect(data.get("structure", []), list, "structure", record):
            entry = self.expect(entry, dict, "structure entry", record)
            a = self.index(entry.get("a"), rank, "structure index a", record)
            b = self.index(entry.get("b"), rank, "structure index b", record)
            c = self.index(entry.get("c"), rank, "structure index c", record)
            if a == b:
                raise self.error(f"structure entry ({a + 1}, {b + 1}, {c + 1}) lies on the diagonal", record)
            key = (min(a, b), max(a, b), c)
            if key in seen:
                raise self.error(f"duplicate structure entry for ({a + 1}, {b + 1}, {c + 1})", record)
            seen.add(key)
            structure[(a, b, c)] = self.poly(nvars, entry.get("value"), record)
        try:
            return Algebroid.from_tables(nvars, rank, anchor, structure, name=name)
        except AlgebroidError as error:
            raise self.error(str(error), record) from None

    def bundles(self, data: Any, nvars: int) -> dict[str, VectorBundle]:
        bundles = {}
        for name, entry in self.expect(data, dict, "bundles", "bundles").items():
            record = f"bundles.{name}"
            if name in (ALGEBROID_TARGET, SCALAR_TARGET):
                raise self.error(f"bundle name {name!r} is reserved", record)
            entry = self.expect(entry, dict, "bundle", record)
            rank = self.expect(entry.get("rank"), int, "rank", record)
            if rank < 1:
                raise self.error("rank must be positive", record)
            bundles[name] = VectorBundle(rank=rank, nvars=nvars, name=name)
        return bundles

    def target(self, value: Any, algebroid: Algebroid, bundles: Mapping[str, VectorBundle], record: str) -> Bundle:
        if value == ALGEBROID_TARGET:
            return algebroid
        if value == SCALAR_TARGET:
            return VectorBundle.line(algebroid.nvars)
        if isinstance(value, dict):
            rank = self.expect(value.get("rank"), int, "rank", record)
            if rank < 1:
                raise self.error("rank must be positive", record)
            return VectorBundle(rank=rank, nvars=algebroid.nvars, name=str(value.get("name", "E")))
        if isinstance(value, str) and value in bundles:
            return bundles[value]
        raise self.error(f"unknown bundle {value!r}", record)

    def connection(
        self,
        name: str,
        data: Any,
        algebroid: Algebroid,
        bundles: Mapping[str, VectorBundle],
    ) -> Connection:
        record = f"connections.{name}"
        data = self.expect(data, dict, "connection", record)
        bundle = self.target(data.get("bundle", ALGEBROID_TARGET), algebroid, bundles, record)
        entries: dict[tuple[int, int, int], Poly] = {}
        for entry in self.expect(data.get("christoffel", []), list, "christoffel", record):
            entry = self.expect(entry, dict, "christoffel entry", record)
            key = (
                self.index(entry.get("a"), algebroid.rank, "christoffel index a", record),
                self.index(entry.get("alpha"), bundle.rank, "christoffel index alpha", record),
                self.index(entry.get("beta"), bundle.rank, "christoffel index beta", record),
            )
            if key in entries:
                raise self.error(f"duplicate christoffel entry {[i + 1 for i in key]}", record)
            entries[key] = self.poly(algebroid.nvars, entry.get("value"), record)
        return Connection.from_table(algebroid, bundle, entries, name=name)

    def form(self, name: str, data: Any, algebroid: Algebroid, bundles: Mapping[str, VectorBundle]) -> VForm:
        record = f"forms.{name}"
        data = self.expect(data, dict, "form", record)
        degree = self.expect(data.get("degree"), int, "degree", record)
        if degree < 0:
            raise self.error("degree must be non-negative", record)
        target = self.target(data.get("target", ALGEBROID_TARGET), algebroid, bundles, record)
        components: dict[tuple[int, ...], list[Poly]] = {}
        for entry in self.expect(data.get("components", []), list, "components", record):
            entry = self.expect(entry, dict, "component", record)
            raw_index = self.expect(entry.get("index", []), list, "index", record)
            index = tuple(self.index(i, algebroid.rank, "form index", record) for i in raw_index)
            if tuple(sorted(index)) in {tuple(sorted(key)) for key in components}:
                raise self.error(f"duplicate component {[i + 1 for i in index]}", record)
            values = self.expect(entry.get("value"), list, "value", record)
            components[index] = [self.poly(algebroid.nvars, value, record) for value in values]
        try:
            return VForm(algebroid, target, degree, components)
        except AlgebroidError as error:
            raise self.error(str(error), record) from None

    def document(self, data: Any) -> SpecFile:
        data = self.expect(data, dict, "spec", "spec")
        unknown = set(data) - {"algebroid", "bundles", "connections", "forms"}
        if unknown:
            raise self.error(f"unknown section(s) {', '.join(sorted(unknown))}", "spec")
        if "algebroid" not in data:
            raise self.error("missing algebroid section", "spec")
        algebroid = self.algebroid(data["algebroid"])
        report = None
        if self.skip_validate:
            _logger.debug("%s: validation of %s skipped", self.path, algebroid.name)
        else:
            report = validate_algebroid(algebroid)
            if report.jacobi_failures:
                triple, _ = report.jacobi_failures[0]
                raise self.error(f"jacobi identity fails on frame triple {[i + 1 for i in triple]}", "algebroid")
            if report.anchor_failures:
                (a, b, i), _ = report.anchor_failures[0]
                raise self.error(
                    f"anchor is not a bracket morphism on frame pair {[a + 1, b + 1]} (coordinate x{i + 1})",
                    "algebroid",
                )
        bundles = self.bundles(data.get("bundles", {}), algebroid.nvars)
        connections = {
            name: self.connection(name, entry, algebroid, bundles)
            for name, entry in self.expect(data.get("connections", {}), dict, "connections", "connections").items()
        }
        forms = {
            name: self.form(name, entry, algebroid, bundles)
            for name, entry in self.expect(data.get("forms", {}), dict, "forms", "forms").items()
        }
        return SpecFile(algebroid, bundles, connections, forms, report, self.path)


def parse_spec_text(text: str, path: str = "<string>", *, skip_validate: bool = False) -> SpecFile:
    """Parse and resolve a spec document.

    Raises:
        SpecError: On syntax errors (with line and column), unknown references,
            dimension mismatches or a failing validation.
    """
    try:
        data = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as error:
        raise SpecError(error.msg, path=path, line=error.lineno, column=error.colno) from None
    except ValueError as error:
        raise SpecError(str(error), path=path) from None
    spec = _Reader(path, skip_validate=skip_validate).document(data)
    _logger.debug(
        "%s: %d bundle(s), %d connection(s), %d form(s)",
        path,
        len(spec.bundles),
        len(spec.connections),
        len(spec.forms),
    )
    return spec


def parse_spec(path: str | Path, *, skip_validate: bool = False) -> SpecFile:
    """Read and parse a spec file.

    Raises:
        SpecError: When the file cannot be read or parsed.
    """
    try:
        text = Path(path).read_text(encoding="utf8")
    except OSError as error:
        raise SpecError(error.strerror or str(error), path=str(path)) from None
    return parse_spec_text(text, str(path), skip_validate=skip_validate)


def poly_to_record(poly: Poly) -> PolyRecord:
    """A polynomial as written in spec files: a rational literal when constant."""
    if poly.is_constant():
        return str(poly.constant_term())
    return poly.to_records()


def section_to_record(section: Section) -> list[PolyRecord]:
    """Coefficients of a section."""
    return [poly_to_record(coeff) for coeff in section.coeffs]


def target_to_record(target: Bundle, bundles: Mapping[str, VectorBundle] | None = None) -> Any:
    """The name or inline record of a form target."""
    if isinstance(target, Algebroid):
        return ALGEBROID_TARGET
    if target.scalar:
        return SCALAR_TARGET
    if bundles and bundles.get(target.name) == target:
        return target.name
    return {"name": target.name, "rank": target.rank}


def form_to_record(form: VForm, bundles: Mapping[str, VectorBundle] | None = None) -> dict[str, Any]:
    """A form as written in spec files, components in increasing index order."""
    return {
        "degree": form.degree,
        "target": target_to_record(form.target, bundles),
        "components": [
            {"index": [i + 1 for i in index], "value": [poly_to_record(entry) for entry in value]}
            for index, value in sorted(form.components.items())
        ],
    }


def algebroid_to_record(algebroid: Algebroid) -> dict[str, Any]:
    """An algebroid as written in spec files."""
    structure = [
        {"a": a + 1, "b": b + 1, "c": c + 1, "value": poly_to_record(value)}
        for a, b in combinations(range(algebroid.rank), 2)
        for c, value in enumerate(algebroid.frame_bracket(a, b))
        if value
    ]
    return {
        "name": algebroid.name,
        "nvars": algebroid.nvars,
        "rank": algebroid.rank,
        "anchor": [[poly_to_record(entry) for entry in row] for row in algebroid.anchor],
        "structure": structure,
    }


def connection_to_record(connection: Connection, bundles: Mapping[str, VectorBundle] | None = None) -> dict[str, Any]:
    """A connection as written in spec files, zero entries omitted."""
    entries = [
        {"a": a + 1, "alpha": alpha + 1, "beta": beta + 1, "value": poly_to_record(value)}
        for a, row in enumerate(connection.christoffel)
        for alpha, vector in enumerate(row)
        for beta, value in enumerate(vector)
        if value
    ]
    return {"bundle": target_to_record(connection.bundle, bundles), "christoffel": entries}


def spec_to_record(spec: SpecFile) -> dict[str, Any]:
    """A whole spec as a JSON-compatible document."""
    return {
        "algebroid": algebroid_to_record(spec.algebroid),
        "bundles": {name: {"rank": bundle.rank} for name, bundle in spec.bundles.items()},
        "connections": {name: connection_to_record(conn, spec.bundles) for name, conn in spec.connections.items()},
        "forms": {name: form_to_record(form, spec.bundles) for name, form in spec.forms.items()},
    }


def dump_json(document: Any) -> str:
    """Serialize deterministically."""
    return json.dumps(document, indent=2, sort_keys=True)


def parse_indices(text: str | Sequence[int], rank: int) -> tuple[int, ...]:
    """Parse 1-based comma-separated frame indices into 0-based ones.

    Raises:
        UsageError: On malformed or out-of-range indices.
    """
    items = [item.strip() for item in text.split(",") if item.strip()] if isinstance(text, str) else list(text)
    result = []
    for item in items:
        try:
            value = int(item)
        except (TypeError, ValueError):
            raise UsageError(f"invalid frame index {item!r}") from None
        if not 1 <= value <= rank:
            raise UsageError(f"frame index {value} out of range 1..{rank}")
        result.append(value - 1)
    return tuple(result)
