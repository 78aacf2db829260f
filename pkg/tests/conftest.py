from __future__ import annotations

import pytest

_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}


@pytest.fixture
def criterion(request):
    """record(number, part, ok, detail) for the acceptance summary."""
    store = request.config.stash[_RESULTS]

    def record(number: int, part: str, ok: bool, detail: str = "") -> bool:
        store.setdefault(number, []).append((part, bool(ok), detail))
        line = f"criterion {number} [{part}]: {'PASS' if ok else 'FAIL'} {detail}".rstrip()
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash.get(_RESULTS, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(store):
        parts = store[number]
        ok = all(p[1] for p in parts)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}")
        for part, part_ok, detail in parts:
            terminalreporter.write_line(f"    {'ok  ' if part_ok else 'FAIL'} {part}: {detail}")
