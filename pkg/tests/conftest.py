import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from dmgweak.graph import Dmg

settings.register_profile(
    "suite",
    max_examples=1000,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@st.composite
def dmgs(draw, min_nodes=1, max_nodes=5, density=None):
    """Random DMG with bit rows; loops are drawn like any other edge."""
    n = draw(st.integers(min_nodes, max_nodes))
    p = density if density is not None else draw(st.sampled_from([0.15, 0.3, 0.5, 0.7]))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_dmg(n, p, random.Random(seed))


def random_dmg(n, p, rng):
    d = [(a, b) for a in range(n) for b in range(n) if rng.random() < p]
    bi = [(a, b) for a in range(n) for b in range(a, n) if rng.random() < p]
    return Dmg.from_edges(n, d, bi)


@st.composite
def graph_and_set(draw, max_nodes=5):
    g = draw(dmgs(max_nodes=max_nodes))
    c = draw(st.integers(0, (1 << g.n) - 1))
    return g, c


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
