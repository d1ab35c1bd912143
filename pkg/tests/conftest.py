"""File containing common pytest fixtures used by multiple test files."""
import io

import numpy as np
import pytest

from manetids.network import CbrFlow, Network
from manetids.scenario import Mode, Scenario
from manetids.trace import TraceWriter


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help="also run the full campaign acceptance suite")


def pytest_configure(config):
    config.addinivalue_line('markers',
                            "slow: campaign-sized runs, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)

# range 250 m everywhere; node i sits at row i
LINE = [(0.0, 0.0), (200.0, 0.0), (400.0, 0.0), (600.0, 0.0), (800.0, 0.0)]
DIAMOND = [(0.0, 0.0), (200.0, 140.0), (200.0, -140.0), (400.0, 0.0)]
# chain 0-1-2-3, black hole 4 next to the source only, IDS node 5 hearing
# 0, 1 and 4
GUARDED_CHAIN = [(0.0, 0.0), (200.0, 0.0), (400.0, 0.0), (600.0, 0.0),
                 (0.0, 200.0), (100.0, 100.0)]
ISOLATED = [(0.0, 0.0), (200.0, 0.0), (1000.0, 1000.0)]


def build_static(positions, flows=(), mode=Mode.NORMAL, attackers=(),
                 monitors=(), duration=6.0, trace=None, **fields):
    scenario = Scenario(node_count=len(positions), mode=mode,
                        duration=duration,
                        attacker_count=max(len(attackers), 1),
                        ids_count=max(len(monitors), 1), **fields)
    return Network(scenario, trace=trace, positions=positions,
                   attackers=list(attackers), monitors=list(monitors),
                   flows=list(flows))


def random_static_layout(seed, n=14, side=600.0):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, side, size=(n, 2))


def disk_graph(positions, radius=250.0):
    diff = positions[:, None, :] - positions[None, :, :]
    within = np.sqrt((diff ** 2).sum(axis=2)) <= radius
    np.fill_diagonal(within, False)
    return within.astype(int)


def follow(net, node, destination, first_hop):
    """Nodes visited when leaving `node` through `first_hop` and then taking
    the head path at every later node. Stops at the first revisit."""
    walk = [node]
    current = first_hop
    while current != destination and current not in walk:
        walk.append(current)
        path = net.agent(current).usable_path(destination)
        if path is None:
            return walk
        current = path.next_hop
    return walk + [current]


def unsound_alternatives(net, destinations):
    """``(node, destination, next_hop, hop_count, walk)`` of every
    alternative that does not reach its destination in exactly hop_count
    hops without revisiting a node."""
    found = []
    for node in net.nodes:
        for destination in destinations:
            entry = node.table.valid_entry(destination, net.now)
            if entry is None:
                continue
            assert len(set(entry.next_hops)) == len(entry.next_hops)
            for path in entry.paths:
                walk = follow(net, node.id, destination, path.next_hop)
                if (walk[-1] != destination or len(set(walk)) != len(walk)
                        or len(walk) - 1 != path.hop_count):
                    found.append((node.id, destination, path.next_hop,
                                  path.hop_count, walk))
    return found


@pytest.fixture
def static_network():
    """Factory of networks with frozen positions and explicit roles."""
    return build_static


@pytest.fixture
def line_run():
    """Finished run of one flow 0 -> 4 along the five node line, with its
    trace text."""
    stream = io.StringIO()
    net = build_static(LINE, [CbrFlow(0, 0, 4, start=1.0, stop=5.0)],
                       trace=TraceWriter(stream))
    result = net.run()
    return net, result, stream.getvalue()


@pytest.fixture
def guarded_chain():
    """Factory running the chain with a black hole in the given mode."""
    def run(mode, duration=10.0, trace=None):
        net = build_static(GUARDED_CHAIN,
                           [CbrFlow(0, 0, 3, start=1.0, stop=duration)],
                           mode=mode, attackers=[4], monitors=[5],
                           duration=duration, trace=trace)
        return net, net.run()
    return run


@pytest.fixture(scope='module')
def small_scenario():
    return Scenario(node_count=10, width=500.0, height=500.0, duration=4.0,
                    flow_count=3, attacker_count=1, ids_count=1, seed=3)
