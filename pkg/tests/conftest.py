import numpy as np
import pytest

from ritzbounds.harness import intermediate_instance, sharp_instance


@pytest.fixture
def counterexample():
    """The 4x4 instance whose intermediate majorant breaks the sine-squared bound."""
    return intermediate_instance()


@pytest.fixture
def sharp_pair():
    a, x, y, th = sharp_instance([np.pi / 3, np.pi / 6])
    return a, x, y, th


def random_herm(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


ACCEPTANCE_LINES = []


def record(criterion, ok, detail):
    line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
