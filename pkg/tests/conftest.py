import pytest
from hypothesis import HealthCheck, settings, strategies as st

from netclosure import System, fixtures

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def F1():
    return fixtures.load("F1")


@pytest.fixture(scope="session")
def F2():
    return fixtures.load("F2")


@st.composite
def systems(draw, min_n=1, max_n=7, directed=True):
    """Random mixed systems: each ordered pair independently gets an arc."""
    n = draw(st.integers(min_n, max_n))
    labels = [f"v{i}" for i in range(n)]
    out = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            kind = draw(st.sampled_from(("none", "both", "fwd", "back") if directed else ("none", "both")))
            if kind in ("both", "fwd"):
                out[i] |= 1 << j
            if kind in ("both", "back"):
                out[j] |= 1 << i
    return System(labels, out)


@st.composite
def system_and_sets(draw, k=2, **kw):
    s = draw(systems(**kw))
    masks = [draw(st.integers(0, (1 << s.n) - 1)) for _ in range(k)]
    return (s, *[s.from_mask(m) for m in masks])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
