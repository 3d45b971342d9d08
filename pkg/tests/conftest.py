from pathlib import Path

import pytest

from alphafractal import make_spec

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"

# name -> (f, b, alpha); all on uniform N=5 partitions of [0, 1]
GOLDEN = {
    "cubic_linear": ("x^3 + x", "2*x", (0.2, -0.3, 0.5, 0.3, 0.4)),
    "log2": ("1/(x+1)", "1 - x/2", (-0.2, 0.4, 0.3, -0.6, 0.1)),
    "cubic_square": ("x^3", "x^2", (-0.1, 0.0, 0.1, 0.2, 0.3)),
    "neg_cubic_square": ("-x^3", "-x^2", (-0.1, 0.0, 0.1, 0.2, 0.3)),
    "square_linear": ("x^2", "x", (0.2, -0.1, 0.0, 0.3, 0.4)),
    "sqrt": ("sqrt(x)", "x", (0.3, 0.5, 0.2, 0.15, 0.02)),
}


def golden_spec(name):
    f, b, alpha = GOLDEN[name]
    return make_spec(f, b, alpha, uniform=5)


@pytest.fixture
def cubic():
    return golden_spec("cubic_linear")


@pytest.fixture(params=sorted(GOLDEN))
def any_golden(request):
    return golden_spec(request.param)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
