from __future__ import annotations

import pytest

ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def record():
    """Record one acceptance line; printed in the terminal summary."""

    def _record(label: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE.append((label, bool(ok), detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in sorted(ACCEPTANCE, key=lambda x: x[0]):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
