import json

import pytest

from src.core.errors import NetworkTooLarge, ParentOutOfRange, SchemaError, TruthTableSizeMismatch
from src.core.rbn import BooleanNetwork, expand, network_to_document, parse_network, random_network
from src.core.system import analyze


def test_swap_network(swap_network):
    sys = expand(swap_network)
    assert sys.successor == (0, 2, 1, 3)
    assert sorted(len(cycle) for cycle in analyze(sys).attractors) == [1, 1, 2]


def test_constant_gene():
    net = parse_network({"n": 1, "nodes": [{"parents": [], "tt": [1]}]})
    assert expand(net).successor == (1, 1)


def test_negated_feedback_gives_four_cycle():
    net = parse_network({"n": 2, "nodes": [{"parents": [1], "tt": [1, 0]}, {"parents": [0], "tt": [0, 1]}]})
    sys = expand(net)
    assert sys.successor == (1, 3, 0, 2)
    assert analyze(sys).attractors == ((0, 1, 3, 2),)


def test_first_parent_is_high_bit():
    # 基因 0 仅在 (g0, g1) = (1, 0) 时为 1
    net = parse_network({"n": 2, "nodes": [{"parents": [0, 1], "tt": [0, 0, 1, 0]}, {"parents": [], "tt": [0]}]})
    assert expand(net).successor == (0, 1, 0, 0)


def test_parse_accepts_text(swap_network):
    text = json.dumps(network_to_document(swap_network))
    assert parse_network(text) == swap_network
    assert network_to_document(swap_network)["nodes"][0] == {"parents": [1], "tt": [0, 1]}


def test_truth_table_size():
    with pytest.raises(TruthTableSizeMismatch) as info:
        parse_network({"nodes": [{"parents": [0], "tt": [0]}]})
    assert (info.value.expected, info.value.actual) == (2, 1)


def test_parent_out_of_range():
    with pytest.raises(ParentOutOfRange):
        parse_network({"nodes": [{"parents": [3], "tt": [0, 1]}]})


@pytest.mark.parametrize("doc", [
    "nope",
    {"genes": []},
    {"n": 2, "nodes": [{"parents": [], "tt": [0]}]},
    {"nodes": [{"parents": [], "tt": [2]}]},
    {"nodes": [{"parents": [0]}]},
    {"nodes": [{"parents": [True], "tt": [0, 1]}]},
])
def test_schema_errors(doc):
    with pytest.raises(SchemaError):
        parse_network(doc)


def test_network_too_large():
    net = random_network(3, 1, seed=0)
    with pytest.raises(NetworkTooLarge):
        expand(net, max_genes=2)


def test_random_network():
    net = random_network(10, 2, seed=1)
    assert isinstance(net, BooleanNetwork)
    assert net == random_network(10, 2, seed=1)
    assert all(len(set(node.parents)) == 2 for node in net.nodes)
    sys = expand(net)
    assert sys.num_states == 1024
    assert all(0 <= t < 1024 for t in sys.successor)
    with pytest.raises(SchemaError):
        random_network(2, 3, seed=0)
