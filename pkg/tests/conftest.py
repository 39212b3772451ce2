import pytest
from hypothesis import strategies as st

from wilfmotzkin.weights import ParityPoly, WeightSystem

ACCEPTANCE_LINES = []


@st.composite
def affine_systems(draw, lo=-4, hi=4):
    """Random parity-split systems of degree <= 1 in every weight."""
    coef = st.integers(min_value=lo, max_value=hi)

    def poly():
        return ParityPoly((draw(coef), draw(coef)), (draw(coef), draw(coef)))

    return WeightSystem(poly(), poly(), poly(), "random")


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion."""
    def record(number, title, passed, detail=""):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert passed, line
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
