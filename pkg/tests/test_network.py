"""Coupling graph model, presets, and the JSON form."""

import json
import math

import numpy as np
import pytest

from gatebound import (
    QubitNetwork,
    edge_best_coupling,
    geodesic_distance,
    heisenberg_chain,
    ising_chain,
    min_coupling,
    star,
)
from gatebound.errors import DomainError, ParseError
from gatebound.network import load_network, network_from_dict, network_to_dict
from gatebound.simulator import drift_matrix

from helpers import kron_word, random_connected_network, uniform_chain


def test_min_coupling_uniform_chain():
    net = uniform_chain(4, g=2.0)
    assert min_coupling(net) == 2.0


def test_min_coupling_ising_preset():
    assert min_coupling(ising_chain(5, J=1.0)) == pytest.approx(math.pi / 2)


def test_min_coupling_ignores_zeros_and_uses_abs():
    g1 = np.zeros((3, 3))
    g1[0, 0] = -0.1
    g1[1, 2] = 1.0
    g2 = np.zeros((3, 3))
    g2[2, 2] = 0.5
    net = QubitNetwork(n=3, edges={(0, 1): g1, (1, 2): g2})
    assert min_coupling(net) == pytest.approx(0.1)


def test_edge_best_coupling():
    net = uniform_chain(3, g=1.0)
    assert edge_best_coupling(net, (0, 1)) == 1.0
    g = np.zeros((3, 3))
    g[0, 1] = 0.1
    g[2, 0] = -1.0
    net = QubitNetwork(n=2, edges={(0, 1): g})
    assert edge_best_coupling(net, (0, 1)) == 1.0
    with pytest.raises(DomainError):
        edge_best_coupling(net, (0, 5))


def test_heisenberg_preset_edge_entries():
    net = heisenberg_chain(3, J=1.0)
    g = net.edge_tensor((0, 1))
    assert g[0, 0] == pytest.approx(math.pi / 2)
    assert g[1, 1] == pytest.approx(math.pi / 2)
    assert edge_best_coupling(net, (1, 2)) == pytest.approx(math.pi / 2)


def test_geodesic_distance():
    net = uniform_chain(3)
    assert geodesic_distance(net, 0, 2) == 2
    assert geodesic_distance(net, 1, 1) == 0
    st = star(5, J=1.0)
    assert geodesic_distance(st, 0, 3) == 1
    assert geodesic_distance(st, 2, 4) == 2


def test_geodesic_is_a_metric_on_random_graphs():
    rng = np.random.default_rng(17)
    for _ in range(10):
        n = int(rng.integers(3, 9))
        net = random_connected_network(rng, n, extra_edges=int(rng.integers(0, 3)))
        d = [[geodesic_distance(net, i, j) for j in range(n)] for i in range(n)]
        for i in range(n):
            assert d[i][i] == 0
            for j in range(n):
                assert d[i][j] == d[j][i]
                for k in range(n):
                    assert d[i][k] <= d[i][j] + d[j][k]


def test_ising_drift_matrix_oracle():
    # drift must equal (pi/2) J sum_k Z_k Z_{k+1} exactly
    for n in (2, 3, 4):
        net = ising_chain(n, J=1.0)
        H = drift_matrix(net)
        expected = np.zeros((2 ** n, 2 ** n), dtype=complex)
        for k in range(n - 1):
            text = "I" * k + "ZZ" + "I" * (n - k - 2)
            expected += math.pi / 2 * kron_word(text)
        assert np.linalg.norm(H - expected) < 1e-12


def test_star_drift_matrix_oracle():
    net = star(3, J=1.0)
    H = drift_matrix(net)
    expected = (
        kron_word("XXI") + kron_word("YYI") + kron_word("XIX") + kron_word("YIY")
        + kron_word("IYI") + kron_word("IIY")
    ).astype(complex)
    assert np.linalg.norm(H - expected) < 1e-12
    assert net.control_model == "star_reduced"


def test_validation_errors():
    g = np.zeros((3, 3))
    g[2, 2] = 1.0
    with pytest.raises(DomainError):  # self loop
        QubitNetwork(n=2, edges={(0, 0): g})
    with pytest.raises(DomainError):  # disconnected
        QubitNetwork(n=4, edges={(0, 1): g, (2, 3): g.copy()})
    with pytest.raises(DomainError):  # all-zero tensor
        QubitNetwork(n=2, edges={(0, 1): np.zeros((3, 3))})
    with pytest.raises(DomainError):  # no edges
        QubitNetwork(n=2, edges={})


def test_json_round_trip(tmp_path):
    rng = np.random.default_rng(23)
    net = random_connected_network(rng, 4, extra_edges=2)
    data = network_to_dict(net)
    back = network_from_dict(json.loads(json.dumps(data)))
    assert back.n == net.n
    assert back.sorted_edges() == net.sorted_edges()
    for e in net.sorted_edges():
        assert np.allclose(back.edge_tensor(e), net.edge_tensor(e))
    path = tmp_path / "net.json"
    path.write_text(json.dumps(data))
    assert load_network(path).sorted_edges() == net.sorted_edges()


def test_preset_shorthand_and_parse_errors(tmp_path):
    net = network_from_dict({"preset": "ising_chain", "n": 3, "J": 2.0})
    assert min_coupling(net) == pytest.approx(math.pi)
    with pytest.raises(ParseError):
        network_from_dict({"preset": "nope", "n": 3})
    with pytest.raises(ParseError):
        network_from_dict({"n": 3})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        load_network(bad)
