import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def series_and_window(draw, min_n=4, max_n=80):
    n = draw(st.integers(min_n, max_n))
    L = draw(st.integers(2, n // 2))
    seed = draw(st.integers(0, 2**32 - 1))
    scale = draw(st.sampled_from([1e-3, 1.0, 1e4]))
    y = scale * np.random.default_rng(seed).standard_normal(n)
    return y, L


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def sine(n=50, period=3):
    t = np.arange(1, n + 1)
    return np.sin(2 * np.pi * t / period)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS, key=lambda k: int(k.split(".")[0])):
        ok, text = RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key:>4}  {text}")
