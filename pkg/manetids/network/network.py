"""Wires nodes, channel, traffic and monitors into one simulation run."""
from dataclasses import dataclass, field
from logging import debug, info

import numpy as np

from manetids.adversary.blackhole import AttackerProfile, BlackholeAgent
from manetids.detectors.ids_monitor import IdsMonitor
from manetids.engine.random_streams import RngStream
from manetids.engine.simulator import (EventKind, Simulator, format_time,
    to_seconds, to_ticks)
from manetids.metrics.ledger import MetricsLedger
from manetids.mobility.adjacency import compute_adjacency
from manetids.mobility.waypoint import (NodeKinematics, random_kinematics,
    step_waypoint)
from manetids.network.channel import Channel
from manetids.network.node import NodeState, Role
from manetids.network.traffic import TrafficSink, emit_cbr, select_flows
from manetids.routing.aomdv import AomdvAgent
from manetids.routing.messages import DataPacket, MessageKind
from manetids.scenario import Mode


class SimulationInvariantError(AssertionError):
    """A run ended in a state that cannot happen in a correct simulation."""


@dataclass
class RunResult:
    """What a finished run reports.

    Attributes:
        scenario (Scenario): Configuration of the run.
        ledger (MetricsLedger): Final counters.
        attackers (list(int)): Black hole ids (empty in normal mode).
        monitors (list(int)): IDS node ids (empty unless ids mode).
        flows (list(CbrFlow)): Traffic of the run.
        detections (list(tuple)): ``(tick, ids_node, subject)`` in time
            order.
        blacklisted (list(int)): Ids blacklisted by at least one honest node.
        events_processed (int): Events fired by the engine.
    """
    scenario: object
    ledger: MetricsLedger
    attackers: list
    monitors: list
    flows: list
    detections: list = field(default_factory=list)
    blacklisted: list = field(default_factory=list)
    events_processed: int = 0

    @property
    def last_detection(self):
        return self.detections[-1][0] if self.detections else None


class Network(object):
    """One simulated MANET.

    By default nodes are placed and moved by random waypoint, attackers and
    flows are drawn from the scenario seed and, in ids mode, IDS nodes are
    added after the density population. Tests may instead pass fixed
    `positions` (no movement), explicit `attackers`, `monitors` and `flows`.

    Args:
        scenario (Scenario): Validated configuration.
        trace (TraceWriter, optional): Receives one line per event.
        positions (array-like, optional): ``(n, 2)`` static positions.
        attackers (list(int), optional): Black hole ids for a static layout.
        monitors (list(int), optional): IDS node ids for a static layout.
        flows (list(CbrFlow), optional): Traffic; drawn from the traffic
            stream when omitted with a mobile layout, none when omitted with
            a static one.
    """

    def __init__(self, scenario, trace=None, positions=None, attackers=None,
                 monitors=None, flows=None):
        self.scenario = s = scenario.validate()
        self.trace = trace
        self.sim = Simulator()
        self.end_time = to_ticks(s.duration)
        self.ledger = MetricsLedger(s.report_interval, s.payload_size)
        self.sink = TrafficSink(self)
        self.bounds = (s.width, s.height)
        self.speed_range = (s.v_min, s.v_max)
        self.mobile = positions is None

        self._mobility_rngs = {}
        topology = RngStream(s.seed, 'topology')
        if self.mobile:
            population = list(range(s.node_count))
            # drawn in every mode so the three modes share flows and
            # trajectories
            drawn = sorted(topology.permutation(population)[:s.attacker_count])
            monitor_ids = list(range(s.node_count,
                                     s.node_count + s.effective_ids_count))
            node_ids = population + monitor_ids
            kinematics = [random_kinematics(self.bounds, self.speed_range,
                                            self._mobility_rng(n))
                          for n in node_ids]
        else:
            positions = np.asarray(positions, dtype=np.float64).reshape(-1, 2)
            node_ids = list(range(positions.shape[0]))
            population = node_ids
            drawn = sorted(attackers or [])
            monitor_ids = sorted(monitors or []) if s.mode == Mode.IDS else []
            kinematics = [NodeKinematics(x, y, x, y, 0.0)
                          for x, y in positions.tolist()]

        self.attackers = drawn if s.mode != Mode.NORMAL else []
        self.monitors = monitor_ids
        if s.staggered_join:
            join_times = [to_ticks(topology.uniform(0.0, s.join_window))
                          for _ in node_ids]
        else:
            join_times = [0] * len(node_ids)

        self.nodes = []
        profile = AttackerProfile(s.fake_hop_count, s.seq_inflation)
        for n in node_ids:
            if n in self.attackers:
                role = Role.BLACKHOLE
            elif n in self.monitors:
                role = Role.IDS_MONITOR
            else:
                role = Role.NORMAL
            node = NodeState(n, role, kinematics[n], join_times[n],
                             s.rreq_cache_lifetime)
            if role == Role.BLACKHOLE:
                node.agent = BlackholeAgent(node, self, profile=profile,
                                            **s.routing_params())
            else:
                node.agent = AomdvAgent(node, self, **s.routing_params())
            if role == Role.IDS_MONITOR:
                node.monitor = IdsMonitor(node, self,
                    audit_interval=s.audit_interval,
                    min_packets=s.audit_min_packets,
                    confirm_window=s.confirm_window,
                    excuse_span=s.discovery_span,
                    global_view=s.ids_global_view)
            self.nodes.append(node)
        self._monitor_objs = [self.nodes[n].monitor for n in self.monitors]

        self.adjacency = self._compute_adjacency()
        self.channel = Channel(self.sim, self.adjacency, s.per_hop_latency,
                               s.jitter, RngStream(s.seed, 'jitter'),
                               self._arrive)

        if flows is None:
            flows = [] if not self.mobile else select_flows(
                range(s.node_count), drawn, s.flow_count,
                RngStream(s.seed, 'traffic'), rate=s.cbr_rate,
                payload_size=s.payload_size, start=s.traffic_start,
                stop=s.duration)
        self.flows = list(flows)

        self.link_breaks = []
        self._started = False

    def _mobility_rng(self, node_id):
        rng = self._mobility_rngs.get(node_id)
        if rng is None:
            rng = self._mobility_rngs[node_id] = RngStream(
                self.scenario.seed, 'mobility', node_id)
        return rng

    @property
    def now(self):
        return self.sim.clock

    def node(self, node_id):
        return self.nodes[node_id]

    def agent(self, node_id):
        return self.nodes[node_id].agent

    def positions(self):
        return np.array([n.position for n in self.nodes], dtype=np.float64)

    def _compute_adjacency(self):
        active = [n.join_time <= self.now for n in self.nodes]
        return compute_adjacency(self.positions(),
                                 self.scenario.transmission_range, active)

    # event sources

    def start(self):
        """Schedule mobility ticks, traffic and audits. Idempotent."""
        if self._started:
            return
        self._started = True
        s = self.scenario
        tick = to_ticks(s.mobility_tick)
        needs_ticks = self.mobile or (s.staggered_join and any(
            n.join_time > 0 for n in self.nodes))
        if needs_ticks and tick <= self.end_time:
            self.sim.schedule(tick, EventKind.MOBILITY, self._mobility_tick,
                              tick)
        for flow in self.flows:
            emit_cbr(flow, self, ttl=s.data_ttl)
        for monitor in self._monitor_objs:
            monitor.start(self.end_time)
        info("network of %d nodes: attackers %s, monitors %s, %d flows",
             len(self.nodes), self.attackers, self.monitors, len(self.flows))

    def _mobility_tick(self, tick):
        dt = to_seconds(tick)
        then = to_seconds(self.now - tick)
        if self.mobile:
            for node in self.nodes:
                node.kinematics = step_waypoint(node.kinematics, dt,
                    self.bounds, self.speed_range,
                    self._mobility_rng(node.id), now=then,
                    pause=self.scenario.pause)
        self.adjacency = self.channel.adjacency = self._compute_adjacency()
        if self.now + tick <= self.end_time:
            self.sim.schedule(self.now + tick, EventKind.MOBILITY,
                              self._mobility_tick, tick)

    def originate_data(self, pkt):
        """A source emits `pkt`."""
        pkt.visited.append(pkt.source)
        self.ledger.count_sent(self.now)
        self.record('send', pkt.source, pkt.destination, pkt.label, None)
        self.agent(pkt.source).forward_data(pkt)

    # transmission surface used by agents and monitors

    def broadcast(self, sender, msg):
        self.ledger.count_routing(msg.kind, self.now)
        self.record('ctl', sender, None, None, msg.kind.value)
        for monitor in self._monitor_objs:
            monitor.observe_control(sender, msg)
        return self.channel.broadcast(sender, msg)

    def unicast(self, sender, receiver, msg):
        """Send a control message to a neighbor.

        Returns:
            bool: False on a link break (already handled by the sender).
        """
        self.ledger.count_routing(msg.kind, self.now)
        self.record('ctl', sender, receiver, None, msg.kind.value)
        for monitor in self._monitor_objs:
            monitor.observe_control(sender, msg)
        if self.channel.channel_deliver(sender, receiver, msg):
            return True
        self.link_break(sender, receiver)
        return False

    def send_data(self, sender, receiver, pkt):
        """Hand `pkt` to the neighbor `receiver`.

        Returns:
            bool: False on a link break (already handled by the sender).
        """
        self.ledger.count_transmission(self.now)
        self.record('tx', sender, receiver, pkt.label, pkt.ttl)
        for monitor in self._monitor_objs:
            monitor.observe_transmission(sender, pkt)
        if self.channel.channel_deliver(sender, receiver, pkt):
            for monitor in self._monitor_objs:
                monitor.observe_forwarding(sender, receiver, pkt)
            return True
        self.link_break(sender, receiver)
        return False

    def link_break(self, sender, dead_neighbor):
        self.link_breaks.append((self.now, sender, dead_neighbor))
        self.record('lbrk', sender, dead_neighbor, None, None)
        self.agent(sender).handle_link_break(dead_neighbor)

    def schedule_timer(self, delay, callback, *args):
        return self.sim.schedule_after(delay, EventKind.TIMER, callback, *args)

    def deliver(self, node_id, pkt):
        return self.sink.sink_receive(node_id, pkt)

    def drop_data(self, node_id, pkt, cause, peer=None):
        self.ledger.count_drop(cause, self.now)
        self.record('drop', node_id, peer, pkt.label, cause)

    def record(self, kind, node, peer, packet, detail):
        if self.trace is not None:
            self.trace.write(self.now, kind, node, peer, packet, detail)

    def _arrive(self, sender, receiver, payload):
        agent = self.agent(receiver)
        if isinstance(payload, DataPacket):
            agent.handle_data(payload, sender)
        elif payload.kind == MessageKind.RREQ:
            agent.handle_rreq(payload, sender)
        elif payload.kind == MessageKind.RREP:
            agent.handle_rrep(payload, sender)
        elif payload.kind == MessageKind.RERR:
            agent.handle_rerr(payload, sender)
        else:
            agent.handle_alert(payload, sender)

    # running

    def run_until(self, end_time):
        """Advance to `end_time` ticks (capped at the scenario end)."""
        self.start()
        return self.sim.run_until(min(int(end_time), self.end_time))

    def packets_in_flight(self):
        """Data packets buffered at nodes or travelling on a link."""
        return self.channel.data_in_transit + sum(n.buffered()
                                                  for n in self.nodes)

    def check_conservation(self):
        """Raises:
            SimulationInvariantError: The ledger's derived in-flight count
            disagrees with the packets actually held.
        """
        held = self.packets_in_flight()
        if self.ledger.in_flight != held or held < 0:
            raise SimulationInvariantError(
                "packet conservation violated at {}: sent {} - received {} - "
                "dropped {} = {} but {} packets are held".format(
                    format_time(self.now), self.ledger.sent,
                    self.ledger.received_unique, self.ledger.total_dropped,
                    self.ledger.in_flight, held))

    def detections(self):
        found = [(t, m.node.id, subject) for m in self._monitor_objs
                 for t, subject in m.detections]
        return sorted(found)

    def blacklisted(self):
        honest = (n for n in self.nodes if n.role != Role.BLACKHOLE)
        return sorted(set().union(*(set(n.blacklist) for n in honest)))

    def run(self):
        """Run to the scenario end and check conservation.

        Returns:
            RunResult: Final state of the run.
        """
        self.run_until(self.end_time)
        self.ledger.elapsed = self.end_time
        self.check_conservation()
        debug("run finished after %d events", self.sim.processed)
        return RunResult(self.scenario, self.ledger, list(self.attackers),
                         list(self.monitors), list(self.flows),
                         self.detections(), self.blacklisted(),
                         self.sim.processed)
