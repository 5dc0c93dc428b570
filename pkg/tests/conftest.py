import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def pytest_addoption(parser):
    parser.addoption(
        "--run-deep",
        action="store_true",
        default=False,
        help="run scans that take many minutes",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-deep"):
        return
    marker = pytest.mark.skip(reason="deep scan; enable with --run-deep")
    for item in items:
        if "deep" in item.keywords:
            item.add_marker(marker)


# criterion number -> (description, outcome); filled in by test_acceptance
ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        description, outcome = ACCEPTANCE[num]
        terminalreporter.write_line(f"ACCEPTANCE {num:>2}: {outcome} - {description}")
