# Project version for pdm-backend: the latest Git tag, else the latest changelog entry.

import re
from pathlib import Path

from pdm.backend.hooks.version import SCMVersion, Version, default_version_formatter, get_version_from_scm

_root = Path(__file__).parent.parent
_release_heading = re.compile(r"^## \[(?P<version>\d+\.\d+\.\d+)\]")
_fallback = SCMVersion(Version("0.0.0"), None, False, None, None)  # noqa: FBT003


def _changelog_version() -> Version | None:
    try:
        lines = (_root / "CHANGELOG.md").read_text(encoding="utf8").splitlines()
    except OSError:
        return None
    for line in lines:
        if match := _release_heading.match(line):
            return Version(match["version"])
    return None


def get_version() -> str:
    scm_version = get_version_from_scm(_root) or _fallback
    # untagged checkouts report 0.x
    if scm_version.version <= Version("0.1") and (released := _changelog_version()):
        scm_version = scm_version._replace(version=released)
    return default_version_formatter(scm_version)


if __name__ == "__main__":
    print(get_version())
