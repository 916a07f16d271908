import json
from pathlib import Path

import pytest

from normlab.corpus import builtin_group

DATA = Path(__file__).parent / "data"

# oracle group names -> catalog names
ORACLE_NAMES = {"E8": "C2^3"}


@pytest.fixture(scope="session")
def oracle():
    return json.loads((DATA / "oracle_values.json").read_text())


@pytest.fixture
def oracle_group():
    """Catalog group for an oracle name."""
    return lambda name: builtin_group(ORACLE_NAMES.get(name, name))


# -- acceptance criteria: one summary line each --------------------------------------------

_ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = {}


@pytest.fixture
def criterion(request):
    """Call with (number, title, ok, note); the line is printed in the terminal summary."""
    results = request.config.stash[_ACCEPTANCE]

    def record(num: int, title: str, ok: bool, note: str = "") -> None:
        results[num] = (title, ok, note)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_ACCEPTANCE, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in range(1, 10):
        title, ok, note = results.get(num, ("not recorded (test errored or was deselected)", False, ""))
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}  {note}".rstrip())
