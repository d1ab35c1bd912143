"""Constant bit rate sources and sinks."""
from dataclasses import dataclass
from logging import warning

from manetids.engine.simulator import (EventKind, TICKS_PER_SECOND,
    format_time, to_ticks)
from manetids.routing.messages import DataPacket


@dataclass(frozen=True)
class CbrFlow:
    """One CBR flow.

    Attributes:
        flow_id (int): Flow index.
        source, destination (int): Endpoints.
        rate (float): Packets per second.
        payload_size (int): Bytes per packet.
        start, stop (float): Emission window ``[start, stop)`` in seconds.
    """
    flow_id: int
    source: int
    destination: int
    rate: float = 3.0
    payload_size: int = 512
    start: float = 0.0
    stop: float = 100.0

    def __post_init__(self):
        if self.rate <= 0:
            raise ValueError("rate must be positive, got {}".format(self.rate))
        if self.stop < self.start:
            raise ValueError("stop must not precede start")
        if self.source == self.destination:
            raise ValueError("source and destination must differ")

    def emission_time(self, k):
        """Tick of the `k`-th emission: start plus exactly ``k / rate``
        seconds, rounded to the tick."""
        return to_ticks(self.start) + int(round(k * TICKS_PER_SECOND
                                                / self.rate))

    def emission_times(self):
        stop = to_ticks(self.stop)
        times = []
        k = 0
        while self.emission_time(k) < stop:
            times.append(self.emission_time(k))
            k += 1
        return times


def select_flows(population, attackers, flow_count, rng, rate=3.0,
                 payload_size=512, start=1.0, stop=100.0):
    """Draw flow endpoints among honest nodes.

    Sources are distinct; each destination is any other honest node. Each
    flow starts at `start` plus an offset uniform in ``[0, 1/rate)``.

    Args:
        population (iterable(int)): Candidate node ids.
        attackers (container): Ids that never take part in a flow.
        flow_count (int): Flows wanted.
        rng (RngStream): The traffic stream.

    Returns:
        list(CbrFlow): Possibly fewer than `flow_count` flows if there are
        not enough honest nodes.
    """
    eligible = [n for n in population if n not in attackers]
    if len(eligible) < 2:
        warning("fewer than two honest nodes; no flows created")
        return []
    sources = rng.permutation(eligible)[:flow_count]
    if len(sources) < flow_count:
        warning("only %d honest nodes, creating %d flows instead of %d",
                len(eligible), len(sources), flow_count)
    flows = []
    for flow_id, source in enumerate(sources):
        others = [n for n in eligible if n != source]
        destination = others[rng.integers(0, len(others) - 1)]
        offset = rng.uniform(0.0, 1.0 / rate)
        flows.append(CbrFlow(flow_id, source, destination, rate, payload_size,
                             min(start + offset, stop), stop))
    return flows


def emit_cbr(flow, network, ttl=32):
    """Schedule the emissions of `flow` on `network`.

    Emissions are chained: each one schedules the next, so the queue holds
    at most one pending emission per flow.

    Returns:
        SimEvent: The first emission, or None for an empty window.
    """
    stop = to_ticks(flow.stop)

    def emit(k):
        pkt = DataPacket(flow.flow_id, k, flow.source, flow.destination,
                         network.now, ttl, flow.payload_size)
        network.originate_data(pkt)
        next_time = flow.emission_time(k + 1)
        if next_time < stop and next_time <= network.end_time:
            network.sim.schedule(next_time, EventKind.TRAFFIC, emit, k + 1)

    first = flow.emission_time(0)
    if first >= stop or first > network.end_time:
        return None
    return network.sim.schedule(first, EventKind.TRAFFIC, emit, 0)


class TrafficSink(object):
    """Destination side of every flow: counts each packet once."""

    def __init__(self, network):
        self.network = network
        self._received = set()

    def __len__(self):
        return len(self._received)

    def sink_receive(self, node_id, pkt):
        """Record the arrival of `pkt` at its destination `node_id`.

        Returns:
            bool: False for a duplicate.
        """
        now = self.network.now
        if pkt.uid in self._received:
            self.network.ledger.count_duplicate(now)
            self.network.record('dup', node_id, pkt.source, pkt.label, None)
            return False
        self._received.add(pkt.uid)
        delay = now - pkt.created_at
        self.network.ledger.count_received(now, delay)
        self.network.record('recv', node_id, pkt.source, pkt.label, delay)
        return True

    def __repr__(self):
        return 'TrafficSink({} received, t={})'.format(
            len(self._received), format_time(self.network.now))
