# Environment report for bug reports: platform, interpreter,
# ALGEBROID_FN* variables and versions of this package and its optional extras.

from __future__ import annotations

import os
import platform
import sys
from dataclasses import dataclass, field
from importlib import metadata
from typing import TextIO

ENV_PREFIX = "ALGEBROID_FN"
"""Prefix of the environment variables read by this package."""

REPORTED_PACKAGES = ("algebroid-fn", "pydantic")
"""Distributions whose versions are reported."""


@dataclass
class _Environment:
    """What a bug report needs to know about the running environment."""

    interpreter: str
    """Implementation name and version, e.g. `cpython 3.12.1`."""
    executable: str
    """Path to the Python executable."""
    system: str
    """Operating system description."""
    variables: dict[str, str] = field(default_factory=dict)
    """Relevant environment variables that are set."""
    packages: dict[str, str | None] = field(default_factory=dict)
    """Versions of the reported distributions, `None` when not installed."""

    def lines(self) -> list[str]:
        """The report as Markdown list items."""
        result = [
            f"- __System__: {self.system}",
            f"- __Python__: {self.interpreter} ({self.executable})",
            "- __Environment variables__:",
        ]
        result.extend(f"  - `{name}`: `{value}`" for name, value in self.variables.items())
        result.append("- __Installed packages__:")
        result.extend(
            f"  - `{name}` v{version}" if version else f"  - `{name}` not installed"
            for name, version in self.packages.items()
        )
        return result


def _interpreter() -> str:
    impl = sys.implementation
    version = f"{impl.version.major}.{impl.version.minor}.{impl.version.micro}"
    if impl.version.releaselevel != "final":
        version += impl.version.releaselevel[0] + str(impl.version.serial)
    return f"{impl.name} {version}"


def _version(dist: str) -> str | None:
    try:
        return metadata.version(dist)
    except metadata.PackageNotFoundError:
        return None


def _get_debug_info() -> _Environment:
    names = ["PYTHONPATH", *sorted(var for var in os.environ if var.startswith(ENV_PREFIX))]
    return _Environment(
        interpreter=_interpreter(),
        executable=sys.executable,
        system=platform.platform(),
        variables={name: value for name in names if (value := os.getenv(name))},
        packages={dist: _version(dist) for dist in REPORTED_PACKAGES},
    )


def print_debug_info(stream: TextIO | None = None) -> None:
    """Print the environment report."""
    for line in _get_debug_info().lines():
        print(line, file=stream or sys.stdout)


if __name__ == "__main__":
    print_debug_info()
