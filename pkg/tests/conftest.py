import pytest

from schreierlab import _kernels

# criterion number -> (passed, description, seconds); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str, float]] = {}


@pytest.fixture(scope="session", autouse=True)
def _compiled_kernels():
    # keep JIT compilation out of the timed acceptance checks
    _kernels.warmup()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, what, secs = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {what}  ({secs:.2f} s)")
