import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from mesotext import netmeasures as nm
from mesotext.netmeasures import NodeMeasureTable, measure_network

from conftest import small_graphs
from oracles import accessibility as acc_oracle
from oracles import moments, saw_distribution, to_meso
from oracles import symmetry as sym_oracle


def test_star_assortativity_is_minus_one():
    assert nm.assortativity(to_meso(nx.star_graph(6))) == pytest.approx(-1.0, abs=1e-9)


def test_regular_graph_assortativity_is_degenerate():
    r, flag = nm.assortativity(to_meso(nx.complete_graph(6)), return_flag=True)
    assert (r, flag) == (0.0, True)


def test_assortativity_matches_networkx():
    g = nx.barabasi_albert_graph(80, 3, seed=4)
    assert nm.assortativity(to_meso(g)) == pytest.approx(nx.degree_assortativity_coefficient(g), abs=1e-9)


def test_cycle_accessibility_h2():
    net = to_meso(nx.cycle_graph(8))
    for v in range(8):
        assert nm.accessibility(net, v, 2) == pytest.approx(2.0, abs=1e-9)


def test_clique_accessibility_counts_walk_endpoints():
    # SAW endpoints in K4 can sit at distance 1, so all 3 other nodes are reachable
    net = to_meso(nx.complete_graph(4))
    for h in (2, 3):
        assert nm.accessibility(net, 0, h) == pytest.approx(3.0, abs=1e-12)


@pytest.mark.parametrize("n", [5, 6, 8, 12])
@pytest.mark.parametrize("variant", ["backbone", "merged"])
def test_cycle_symmetry_is_one(n, variant):
    net = to_meso(nx.cycle_graph(n))
    for h in (2, 3, 4):
        assert nm.symmetry(net, 0, h, variant) == pytest.approx(1.0, abs=1e-9)


def test_star_hub_symmetry():
    net = to_meso(nx.star_graph(5))
    assert nm.symmetry(net, 1, 2, "backbone") == pytest.approx(1.0, abs=1e-12)


def test_clique_with_tail_symmetry_frozen():
    # K4 on {0,1,2,3}, tail 3-4-5, root 4: hand-derived values
    g = nx.complete_graph(4)
    g.add_edges_from([(3, 4), (4, 5)])
    net = to_meso(g)
    assert nm.symmetry(net, 4, 2, "backbone") == pytest.approx(math.sqrt(3) / 2, abs=1e-12)
    assert nm.symmetry(net, 4, 2, "merged") == pytest.approx(1.0, abs=1e-12)


def test_isolated_root_scores_zero():
    g = nx.path_graph(3)
    g.add_node(3)
    net = to_meso(g)
    assert nm.symmetry(net, 3, 2) == 0.0
    assert nm.accessibility(net, 3, 2) == 0.0
    table = measure_network(net)
    assert table.isolated.tolist() == [False, False, False, True]


def test_triangle_clustering():
    net = to_meso(nx.complete_graph(3))
    assert all(nm.clustering(net, v) == pytest.approx(1.0, abs=1e-9) for v in range(3))


def test_regular_degree_std_zero():
    st = nm.degree_stats(to_meso(nx.circulant_graph(10, [1, 2])))
    assert st.std == pytest.approx(0.0, abs=1e-9)


def test_star_degree_moments():
    st = nm.degree_stats(to_meso(nx.star_graph(4)))
    assert st.std == pytest.approx(1.2)
    assert st.skewness == pytest.approx(1.5)


def test_aggregate_frozen():
    a = nm.aggregate([1, 2, 3])
    assert (a.mean, a.std, a.skewness) == pytest.approx((2.0, math.sqrt(2 / 3), 0.0))
    b = nm.aggregate([0, 0, 0, 4])
    assert (b.std, b.skewness) == pytest.approx((math.sqrt(3), 2 / math.sqrt(3)))
    with pytest.raises(ValueError):
        nm.aggregate([])


@given(small_graphs())
@settings(max_examples=40)
def test_saw_matches_enumeration(g):
    net = to_meso(g)
    for v in g.nodes:
        for h in (1, 2, 3):
            got = nm.saw_endpoints(net, v, h)
            ref = saw_distribution(g, v, h)
            want = np.zeros(len(g))
            for u, m in ref.items():
                want[u] = m
            np.testing.assert_allclose(got, want, atol=1e-12)


@given(small_graphs())
@settings(max_examples=40)
def test_symmetry_matches_recursive_walk(g):
    net = to_meso(g)
    for v in g.nodes:
        for h in (2, 3, 4):
            for variant in ("backbone", "merged"):
                assert nm.symmetry(net, v, h, variant) == pytest.approx(sym_oracle(g, v, h, variant), abs=1e-9)


@given(small_graphs(min_nodes=3))
def test_measure_table_against_networkx(g):
    net = to_meso(g)
    table = measure_network(net)
    deg = dict(g.degree())
    np.testing.assert_array_equal(table.columns["degree"], [deg[v] for v in range(len(g))])
    cl = nx.clustering(g)
    np.testing.assert_allclose(table.columns["clustering"], [cl[v] for v in range(len(g))], atol=1e-12)
    and_ = nx.average_neighbor_degree(g)
    np.testing.assert_allclose(table.columns["avg_neighbor_degree"], [and_[v] for v in range(len(g))], atol=1e-12)
    for v in range(len(g)):
        assert table.columns["accessibility_h2"][v] == pytest.approx(acc_oracle(g, v, 2), abs=1e-9)


@given(small_graphs())
def test_measure_bounds(g):
    table = measure_network(to_meso(g))
    for name, col in table.columns.items():
        assert np.all(np.isfinite(col))
        if name.startswith("symmetry"):
            assert np.all((col >= 0) & (col <= 1))
        if name == "clustering":
            assert np.all((col >= 0) & (col <= 1))
    for h in (2, 3):
        # never more than the number of distinct walk endpoints
        net = to_meso(g)
        for v in range(len(g)):
            support = np.count_nonzero(nm.saw_endpoints(net, v, h))
            assert table.columns[f"accessibility_h{h}"][v] <= support + 1e-9
    assert -1.0 <= table.assortativity <= 1.0


@given(small_graphs())
def test_aggregate_matches_moments(g):
    x = [d for _, d in g.degree()]
    st = nm.aggregate(x)
    assert (st.mean, st.std, st.skewness) == pytest.approx(moments(x), abs=1e-9)


def test_table_roundtrip(tmp_path):
    table = measure_network(to_meso(nx.karate_club_graph()))
    table.write(tmp_path / "k5.csv")
    back = NodeMeasureTable.read(tmp_path / "k5.csv")
    assert back.columns.keys() == table.columns.keys()
    for k in table.columns:
        np.testing.assert_array_equal(back.columns[k], table.columns[k])
    assert back.assortativity == table.assortativity


def test_concentric_levels_match_bfs():
    g = nx.karate_club_graph()
    levels = nm.concentric_levels(to_meso(g), 0, 3)
    dist = nx.single_source_shortest_path_length(g, 0, cutoff=3)
    for ell, lv in enumerate(levels):
        assert lv == {v for v, d in dist.items() if d == ell}
