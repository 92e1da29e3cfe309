import numpy as np
import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
complex_coeff = st.builds(complex, finite, finite)


def poly_coeffs(max_order=8):
    return st.lists(complex_coeff, min_size=1, max_size=max_order + 1)


@pytest.fixture
def unit_grid():
    """5 x 5 grid over the square [-2, 2]^2 intersected with |z| <= 2."""
    x = np.linspace(-1.4, 1.4, 5)
    return (x[:, None] + 1j * x[None, :]).ravel()


#: acceptance lines recorded by tests/test_acceptance.py, printed after the run
ACCEPTANCE_LINES = {}


def record_acceptance(key, ok: bool, detail: str, seconds: float):
    line = f"ACCEPTANCE {key}: {'PASS' if ok else 'FAIL'} ({seconds:.1f} s) {detail}"
    ACCEPTANCE_LINES[key] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.split()[0]), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
