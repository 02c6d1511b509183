import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def disk_points(draw, rmax=0.95):
    r = draw(st.floats(0.0, rmax))
    t = draw(st.floats(0.0, 2 * np.pi))
    return complex(r * np.cos(t), r * np.sin(t))


@st.composite
def closed_disk_points(draw):
    r = draw(st.one_of(st.floats(0.0, 1.0), st.just(1.0)))
    t = draw(st.floats(0.0, 2 * np.pi))
    return complex(r * np.cos(t), r * np.sin(t))


@st.composite
def uhp_points(draw, xmax=3.0, ymin=0.05, ymax=3.0):
    return complex(draw(st.floats(-xmax, xmax)), draw(st.floats(ymin, ymax)))


@st.composite
def unit_points(draw):
    t = draw(st.floats(0.0, 2 * np.pi))
    return complex(np.cos(t), np.sin(t))


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
