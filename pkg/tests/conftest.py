import numpy as np
import pytest

from momenta import campaign

ROOT2 = np.sqrt(2.0)

#: The 3x3 real symmetric matrix used as the worked example throughout the
#: test suite; its eigenvalues are exactly {-12, 0, 12}.
EXAMPLE_3X3 = np.array([
    [3.0, -3.0 * ROOT2, -9.0],
    [-3.0 * ROOT2, -6.0, -3.0 * ROOT2],
    [-9.0, -3.0 * ROOT2, 3.0],
], dtype=np.complex128)


@pytest.fixture
def example_3x3():
    return EXAMPLE_3X3.copy()


@pytest.fixture(scope="session")
def shared_corpus():
    """The 200-instance corpus shared by the block, scalar, and oracle suites."""
    return campaign.corpus(count=200, seed=42, n_range=(2, 6), r_max=3)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if getattr(rep, "when", "call") != "call":
                continue
            if "test_acceptance.py" in nodeid:
                name = nodeid.split("::")[-1]
                lines[name] = "PASS" if status == "passed" else "FAIL"
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name in sorted(lines):
            terminalreporter.write_line(f"{name}: {lines[name]}")
