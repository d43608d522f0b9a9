import pytest

_criteria = {}  # num -> [title, passed]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    entry = _criteria.setdefault(num, [title, True])
    if rep.failed or (rep.when == "call" and rep.skipped):
        entry[1] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_criteria):
        title, ok = _criteria[num]
        tr.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}")
    passed = sum(ok for _, ok in _criteria.values())
    tr.write_line(f"{passed}/{len(_criteria)} criteria passed")
