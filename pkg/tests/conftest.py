import pytest

from qrcs.cost_models import CostParams


@pytest.fixture
def anchor():
    """Published toy-problem parameters with equal prefactors."""
    return CostParams(n=3.32e8, d=7, kappa=1e4, epsilon=1e-2, c_cg=1.0, c_cjs=1.0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in RESULTS.items():
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
