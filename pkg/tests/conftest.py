import numpy as np
import pytest

from cyclic_oscillator import make_params, random_params

#: Lines recorded by the acceptance suite, echoed in the terminal summary.
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture
def p2():
    """lambda = 2, nu = (1/2, -1/2): nu_hat = (0, 1), so [n] = n + 1 for odd n."""
    return make_params(2, [0.5, -0.5])


@pytest.fixture
def p3():
    """Undeformed lambda = 3."""
    return make_params(3, [0, 0, 0])


def param_grid(lams=(2, 3, 4, 5), count=5, seed=2024):
    rng = np.random.default_rng(seed)
    return [random_params(lam, rng) for lam in lams for _ in range(count)]
