from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile("default")

import pytest

_SCORECARD: dict[int, str] = {}


@pytest.fixture
def scorecard():
    """Record one summary line per acceptance criterion."""

    def record(cid: int, ok: bool, detail: str):
        _SCORECARD[cid] = f"criterion {cid:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(_SCORECARD[cid])
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _SCORECARD:
        terminalreporter.section("acceptance criteria")
        for cid in sorted(_SCORECARD):
            terminalreporter.write_line(_SCORECARD[cid])
