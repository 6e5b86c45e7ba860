import os

import networkx as nx
import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mesotext import synthetic

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def small_graphs(draw, min_nodes=2, max_nodes=12):
    n = draw(st.integers(min_nodes, max_nodes))
    p = draw(st.floats(0.1, 0.9))
    seed = draw(st.integers(0, 2**31 - 1))
    return nx.gnp_random_graph(n, p, seed=seed)


@pytest.fixture(scope="session")
def synthetic_corpus(tmp_path_factory):
    """Small 4-author toy corpus: returns the manifest path."""
    root = tmp_path_factory.mktemp("corpus")
    return synthetic.write_corpus(root, books_per_author=3, n_par=60, seed=3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
