import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import fixture_configs, random_corpus  # noqa: E402


@pytest.fixture(scope="session")
def corpus():
    return random_corpus()


@pytest.fixture(scope="session")
def fixtures():
    return fixture_configs()


# --------------------------------------------------- acceptance reporting

_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None and rep.when == "call":
        num, text = marker.args
        _ACCEPTANCE.append((num, "PASS" if rep.passed else "FAIL", text, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, status, text, dur in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"AC{num:>2} {status}  {text}  ({dur:.1f}s)")
