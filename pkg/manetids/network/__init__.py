from manetids.network.node import NodeState, Role
from manetids.network.channel import Channel
from manetids.network.traffic import (CbrFlow, TrafficSink, emit_cbr,
    select_flows)
from manetids.network.network import Network, RunResult, SimulationInvariantError
