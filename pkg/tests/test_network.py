import io

import pytest

from manetids.engine import to_ticks
from manetids.network import Network, SimulationInvariantError
from manetids.scenario import Mode, Scenario
from manetids.trace import TraceWriter


def traced_run(scenario):
    stream = io.StringIO()
    result = Network(scenario, trace=TraceWriter(stream)).run()
    return result, stream.getvalue()

@pytest.mark.parametrize('mode', list(Mode))
def test_same_seed_same_trace(small_scenario, mode):
    scenario = small_scenario.replace(mode=mode)
    first, text = traced_run(scenario)
    second, again = traced_run(scenario)
    assert text == again
    assert first.ledger == second.ledger
    assert first.detections == second.detections

def test_different_seed_different_trace(small_scenario):
    _, a = traced_run(small_scenario)
    _, b = traced_run(small_scenario.replace(seed=small_scenario.seed + 1))
    assert a != b

def test_modes_share_flows_and_trajectories(small_scenario):
    nets = {m: Network(small_scenario.replace(mode=m)) for m in Mode}
    normal = nets[Mode.NORMAL]
    n = small_scenario.node_count
    for mode, net in nets.items():
        assert net.flows == normal.flows
        assert net.positions()[:n].tolist() == normal.positions()[:n].tolist()
    assert nets[Mode.ATTACK].attackers == nets[Mode.IDS].attackers
    assert normal.attackers == []
    assert len(nets[Mode.IDS].nodes) == n + small_scenario.ids_count
    assert nets[Mode.IDS].monitors == list(range(n, n + 1))

    for net in nets.values():
        net.run_until(to_ticks(2.0))
    ref = nets[Mode.NORMAL].positions()[:n].tolist()
    for net in nets.values():
        assert net.positions()[:n].tolist() == ref

def test_flows_never_touch_attackers(small_scenario):
    net = Network(small_scenario.replace(mode=Mode.ATTACK, flow_count=8))
    for flow in net.flows:
        assert flow.source not in net.attackers
        assert flow.destination not in net.attackers

@pytest.mark.parametrize('mode', list(Mode))
def test_packet_conservation(small_scenario, mode):
    net = Network(small_scenario.replace(mode=mode))
    result = net.run()
    ledger = result.ledger
    assert ledger.received_unique + ledger.total_dropped + \
        net.packets_in_flight() == ledger.sent
    assert ledger.received_unique <= ledger.sent

def test_conservation_failure_is_reported(line_run):
    net, _, _ = line_run
    net.ledger.count_sent(net.now)
    with pytest.raises(SimulationInvariantError):
        net.check_conservation()

def test_staggered_join_keeps_late_nodes_silent(small_scenario):
    scenario = small_scenario.replace(staggered_join=True, join_window=3.0)
    net = Network(scenario)
    assert all(0 <= n.join_time <= to_ticks(3.0) for n in net.nodes)
    assert len({n.join_time for n in net.nodes}) > 1
    net.run_until(to_ticks(0.5))
    for node in net.nodes:
        if node.join_time > net.now:
            assert net.adjacency.neighbors(node.id) == ()

def test_black_holes_cost_deliveries():
    received = {}
    for mode in (Mode.NORMAL, Mode.ATTACK):
        result = Network(Scenario(node_count=30, duration=30.0, seed=2,
                                  mode=mode)).run()
        received[mode] = result.ledger.received_unique
    assert received[Mode.NORMAL] > received[Mode.ATTACK]
