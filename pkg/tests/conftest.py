import pytest

from approxhe.params import TOY, CkksParams
from approxhe.ring import RingElement
from approxhe.sampling import RngState

# The worked example's random choices, coefficient of x^0 first.
EX_S = [0, 1, -1, 0]
EX_A = [-221, 67, -15, 103]
EX_E = [1, 1, 0, 0]
EX_V = [1, 0, 0, 1]
EX_E0 = [-1, 0, 0, 1]
EX_E1 = [-1, 0, 1, 0]
EX_M = [160, 90, 160, 45]

ARITH = CkksParams(M=16, N=8, delta=2**20, p=2**20, q0=2**20, L=3, sigma_err=3.2, h=4)

ACCEPTANCE_LINES: list[str] = []


def example_rng(seed=0):
    """RngState replaying the worked example's key and encryption samples."""
    return RngState(seed, {
        "hwt": [EX_S],
        "uniform": [EX_A],
        "dg": [EX_E, [0, 0, 0, 0], EX_E0, EX_E1],
        "zo": [EX_V],
    })


def poly(coeffs, q=None):
    return RingElement(tuple(coeffs), q)


@pytest.fixture
def toy():
    return TOY


@pytest.fixture
def arith():
    return ARITH


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
