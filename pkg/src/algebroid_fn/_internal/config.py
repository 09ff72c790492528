# Configuration and options dataclasses.

from __future__ import annotations

import logging
import os
import sys
from typing import TYPE_CHECKING, Annotated, Any

from algebroid_fn._internal.algebroid import ZOO
from algebroid_fn._internal.errors import UsageError

# YORE: EOL 3.10: Replace block with line 2.
if sys.version_info >= (3, 11):
    from typing import Self
else:
    from typing_extensions import Self


_logger = logging.getLogger(__name__)


try:
    # When Pydantic is available, use it to validate options (done automatically).
    # Users can therefore opt into validation by installing the `validation` extra.
    import pydantic

    if getattr(pydantic, "__version__", "1.").startswith("1."):
        raise ImportError  # noqa: TRY301

    # YORE: EOL 3.9: Remove block.
    if sys.version_info < (3, 10):
        try:
            import eval_type_backport  # noqa: F401
        except ImportError:
            _logger.debug(
                "Pydantic needs the `eval-type-backport` package to be installed "
                "for modern type syntax to work on Python 3.9. "
                "Deactivating Pydantic validation for suite options.",
            )
            raise

    from inspect import cleandoc

    from pydantic import Field as BaseField
    from pydantic.dataclasses import dataclass

    def _Field(  # noqa: N802
        *args: Any,
        description: str,
        **kwargs: Any,
    ) -> None:
        return BaseField(
            *args,
            description=cleandoc(description),
            field_title_generator=lambda name, _: name,
            **kwargs,
        )

except ImportError:
    from dataclasses import dataclass

    def _Field(*args: Any, **kwargs: Any) -> None:  # type: ignore[misc]  # noqa: N802
        pass


if TYPE_CHECKING:
    from collections.abc import MutableMapping


SEED_ENV_VAR = "ALGEBROID_FN_SEED"
"""Environment variable overriding the default seed of the `verify` command."""

# YORE: EOL 3.9: Remove block.
_dataclass_options = {"frozen": True}
if sys.version_info >= (3, 10):
    _dataclass_options["kw_only"] = True


# YORE: EOL 3.9: Replace `**_dataclass_options` with `frozen=True, kw_only=True` within line.
@dataclass(**_dataclass_options)
class SuiteInputOptions:
    """Accepted verification suite options."""

    seed: Annotated[
        int,
        _Field(description="Seed of the random instance generator."),
    ] = 0

    samples: Annotated[
        int,
        _Field(description="Random instances per algebroid and degree pair.", ge=1),
    ] = 1

    max_degree: Annotated[
        int,
        _Field(description="Largest degree of the random A-valued forms.", ge=0),
    ] = 2

    poly_degree: Annotated[
        int,
        _Field(description="Largest total degree of random polynomial coefficients.", ge=0),
    ] = 2

    poly_terms: Annotated[
        int,
        _Field(description="Largest number of monomials in a random polynomial coefficient.", ge=1),
    ] = 2

    coeff_bound: Annotated[
        int,
        _Field(description="Random integer coefficients are drawn from `[-coeff_bound, coeff_bound]`.", ge=1),
    ] = 5

    bundle_rank: Annotated[
        int,
        _Field(description="Rank of the random vector bundle `E`.", ge=1),
    ] = 2

    algebroids: Annotated[
        tuple[str, ...],
        _Field(description="Names of the built-in algebroids to run on."),
    ] = tuple(ZOO)

    torsionful: Annotated[
        bool,
        _Field(description="Use a connection with torsion where a torsion-free one is required."),
    ] = False

    @classmethod
    def coerce(cls, **data: Any) -> MutableMapping[str, Any]:
        """Coerce data."""
        return data

    @classmethod
    def from_data(cls, **data: Any) -> Self:
        """Create an instance from a dictionary."""
        return cls(**cls.coerce(**data))


# YORE: EOL 3.9: Replace `**_dataclass_options` with `frozen=True, kw_only=True` within line.
@dataclass(**_dataclass_options)
class SuiteOptions(SuiteInputOptions):  # type: ignore[override,unused-ignore]
    """Final options passed to the suites."""

    @classmethod
    def coerce(cls, **data: Any) -> MutableMapping[str, Any]:
        """Split comma-separated algebroid names and check them against the built-in ones.

        Raises:
            UsageError: On an unknown algebroid name.
        """
        names = data.get("algebroids")
        if isinstance(names, str):
            names = [name.strip() for name in names.split(",") if name.strip()]
        if names is not None:
            unknown = [name for name in names if name not in ZOO]
            if unknown:
                raise UsageError(f"unknown algebroid(s) {', '.join(unknown)}; known: {', '.join(ZOO)}")
            data["algebroids"] = tuple(names)
        return super().coerce(**data)


def default_seed() -> int:
    """The seed from the environment, or zero.

    Raises:
        UsageError: When the environment variable is not an integer.
    """
    value = os.environ.get(SEED_ENV_VAR, "")
    if not value:
        return 0
    try:
        return int(value)
    except ValueError as error:
        raise UsageError(f"{SEED_ENV_VAR} must be an integer, got {value!r}") from error
