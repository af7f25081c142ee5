"""Regenerate the golden CLI fixtures in tests/fixtures.

    python tools/regen_fixtures.py

Fixtures are the --machine output of ``homology`` and
``twisted-homology --all-systems`` for every catalog example, with the
default run configuration.  Review the diff before committing.
"""

from __future__ import annotations

import io
from pathlib import Path

from twistedhom.catalog import CATALOG_EXAMPLES
from twistedhom.cli import main

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "tests" / "fixtures"
COMMANDS = {
    "homology": ["homology"],
    "twisted-homology": ["twisted-homology", "--all-systems"],
}


def fixture_name(entry: str) -> str:
    return entry.replace(":", "_").replace("*", "x").replace(",", "-") + ".txt"


def render(command: str, entry: str) -> str:
    out = io.StringIO()
    status = main(COMMANDS[command] + ["--builtin", entry, "--machine"], stdout=out, env={})
    if status != 0:
        raise SystemExit(f"{command} {entry} exited with {status}")
    return out.getvalue()


def main_() -> None:
    for command in COMMANDS:
        d = FIXTURES / command
        d.mkdir(parents=True, exist_ok=True)
        for entry in CATALOG_EXAMPLES:
            if command == "twisted-homology" and entry == "empty":
                continue
            (d / fixture_name(entry)).write_text(render(command, entry))
    print("wrote", FIXTURES)


if __name__ == "__main__":
    main_()
