"""Shared fixtures: a recorder for acceptance-criterion verdicts."""

import pytest

_VERDICTS: list[str] = []


class Recorder:
    def __call__(self, label: str, passed: bool, detail: str) -> None:
        line = f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}"
        _VERDICTS.append(line)
        print(line)


@pytest.fixture(scope="session")
def verdict():
    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
