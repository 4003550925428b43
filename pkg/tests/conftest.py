import itertools

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def brute_force_classes(n):
    """Least rotations of every mixed binary string of length n."""
    out = set()
    for bits in itertools.product("LR", repeat=n):
        s = "".join(bits)
        if "L" in s and "R" in s:
            out.add(min(s[i:] + s[:i] for i in range(n)))
    return sorted(out)


@pytest.fixture(scope="session")
def words_upto_10():
    from entvol.words import enumerate_words
    return enumerate_words(2, 10)


_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        _CRITERIA.append((mark.args[0], status, mark.args[1]))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for cid, status, text in sorted(_CRITERIA, key=lambda c: (int(str(c[0]).rstrip("abc")), str(c[0]))):
        terminalreporter.write_line(f"criterion {cid:<4} {status}  {text}")
