"""On-demand multipath distance vector routing.

Route discovery floods an RREQ; only the destination answers. It answers the
first copy of a flood, every copy that arrives through a new last hop and
every copy with a strictly smaller hop count. Relays rebroadcast the first
copy and any copy with a strictly smaller hop count, so on a frozen topology
the shortest reply travels along a shortest reverse path and the head of the
resulting :class:`~manetids.routing.route_table.RouteEntry` has the BFS
distance as its hop count.

Every rebroadcast RREQ and every forwarded RREP advertises a hop count, and a
node only installs a path through a neighbor whose advertisement is shorter
than its own (see :meth:`~manetids.routing.route_table.RouteEntry.admits`).
Copies echoed back by downstream neighbors are therefore never installed and
failover never bounces a packet back upstream. Control messages that have
travelled more than `max_control_hops` links are discarded.
"""
from collections import deque
from dataclasses import dataclass
from logging import debug

from manetids.detectors.audit import filter_paths
from manetids.engine.simulator import to_ticks
from manetids.routing.agent import RoutingAgent
from manetids.routing.messages import ControlMessage, MessageKind
from manetids.routing.route_table import NoPathError, select_path


@dataclass
class Discovery:
    """An ongoing route discovery for one destination."""
    attempts: int = 0
    timer: object = None


class AomdvAgent(RoutingAgent):
    """Routing behavior of an honest node.

    Args:
        node (NodeState): Node driven by this agent.
        network (Network): Transmission, timers and trace.
        active_route_lifetime (float): Seconds an unused route stays valid.
        discovery_timeout (float): Seconds before the first retry.
        retry_limit (int): Total discovery attempts, the first included.
        backoff_factor (float): Timeout multiplier per retry.
        buffer_capacity (int): Packets buffered per destination while
            discovering; overflow drops the oldest.
        max_paths (int): Alternatives kept per destination.
        alert_piggyback (bool): Attach the blacklist to control messages and
            adopt the blacklist attached by others.
        max_control_hops (int): RREQs and RREPs whose hop count exceeds this
            are dropped on receipt.
    """
    # black holes stay silent about route failures
    emits_maintenance = True

    def __init__(self, node, network, active_route_lifetime=10.0,
                 discovery_timeout=1.0, retry_limit=3, backoff_factor=2,
                 buffer_capacity=64, max_paths=4, alert_piggyback=True,
                 max_control_hops=32):
        super(AomdvAgent, self).__init__(node, network,
            active_route_lifetime=active_route_lifetime,
            discovery_timeout=discovery_timeout, retry_limit=retry_limit,
            backoff_factor=backoff_factor, buffer_capacity=buffer_capacity,
            max_paths=max_paths, alert_piggyback=alert_piggyback,
            max_control_hops=max_control_hops)
        self.lifetime = to_ticks(active_route_lifetime)
        self.discovery_timeout = discovery_timeout
        self.retry_limit = retry_limit
        self.backoff_factor = backoff_factor
        self.buffer_capacity = buffer_capacity
        self.max_paths = max_paths
        self.alert_piggyback = alert_piggyback
        self.max_control_hops = max_control_hops

    @property
    def now(self):
        return self.network.now

    def piggyback_blacklist(self):
        if self.alert_piggyback:
            return self.node.blacklist.ids
        return frozenset()

    def usable_path(self, destination):
        """Head alternative toward `destination` avoiding blacklisted next
        hops, or None."""
        entry = self.node.table.valid_entry(destination, self.now)
        try:
            return select_path(entry, self.node.blacklist)
        except NoPathError:
            return None

    # route discovery

    def originate_discovery(self, destination):
        """Start a discovery for `destination` unless one is running.

        Returns:
            ControlMessage: The broadcast RREQ, or None if a discovery was
            already in progress.
        """
        if destination in self.node.discoveries:
            return None
        self.node.discoveries[destination] = Discovery()
        return self._send_rreq(destination)

    def _send_rreq(self, destination):
        node = self.node
        discovery = node.discoveries[destination]
        discovery.attempts += 1
        node.seq += 1
        node.broadcast_id += 1
        known = node.table.get(destination)
        msg = ControlMessage(MessageKind.RREQ, origin=node.id,
            target=destination, broadcast_id=node.broadcast_id, hop_count=0,
            origin_seq=node.seq, dest_seq=known.dest_seq if known else 0,
            blacklist=self.piggyback_blacklist())
        node.rreq_cache.record(msg.flood_key, 0, self.now)

        timeout = self.discovery_timeout * self.backoff_factor ** (
            discovery.attempts - 1)
        discovery.timer = self.network.schedule_timer(to_ticks(timeout),
            self.on_discovery_timeout, destination)
        self.network.broadcast(node.id, msg)
        return msg

    def on_discovery_timeout(self, destination):
        node = self.node
        discovery = node.discoveries.get(destination)
        if discovery is None:
            return
        if self.usable_path(destination) is not None:
            self._route_ready(destination)
        elif discovery.attempts >= self.retry_limit:
            del node.discoveries[destination]
            self._discovery_failed(destination, discovery.attempts)
        else:
            self._send_rreq(destination)

    def _discovery_failed(self, destination, attempts):
        node = self.node
        debug("node %d: discovery for %d failed after %d attempts", node.id,
              destination, attempts)
        self.network.record('dfail', node.id, destination, None, attempts)
        for pkt in node.buffers.pop(destination, ()):
            self.network.drop_data(node.id, pkt, 'no_route')
        if self.emits_maintenance:
            self._send_rerr([destination])

    def _route_ready(self, destination):
        node = self.node
        discovery = node.discoveries.pop(destination, None)
        if discovery is not None and discovery.timer is not None:
            discovery.timer.cancel()
        for pkt in node.buffers.pop(destination, ()):
            self.forward_data(pkt)

    # control messages

    def too_far(self, msg):
        if msg.hop_count <= self.max_control_hops:
            return False
        debug("node %d: dropping %s from %d after %d hops", self.node.id,
              msg.kind.value, msg.origin, msg.hop_count)
        return True

    def handle_rreq(self, msg, via):
        node = self.node
        if msg.origin == node.id or self.too_far(msg):
            return
        hop_count = msg.hop_count + 1
        reverse = node.table.entry(msg.origin)
        if reverse.admits(msg.hop_count, msg.origin_seq):
            reverse.offer(via, hop_count, msg.origin_seq, self.now,
                          self.lifetime, self.max_paths,
                          vouched_by=msg.origin)

        record = node.rreq_cache.lookup(msg.flood_key, self.now)
        if msg.target == node.id:
            self._answer_rreq(msg, via, hop_count, record)
            return
        if record is None:
            node.rreq_cache.record(msg.flood_key, hop_count, self.now)
        elif hop_count < record.best_hop_count:
            record.best_hop_count = hop_count
        else:
            return
        reverse.advertise(hop_count, msg.origin_seq)
        self._rebroadcast(msg)

    def _rebroadcast(self, msg):
        self.network.broadcast(self.node.id,
                               msg.relayed(self.piggyback_blacklist()))

    def _answer_rreq(self, msg, via, hop_count, record):
        node = self.node
        if record is None:
            record = node.rreq_cache.record(msg.flood_key, hop_count, self.now)
            node.seq = max(node.seq, msg.dest_seq) + 1
            record.reply_seq = node.seq
        elif hop_count < record.best_hop_count:
            record.best_hop_count = hop_count
        elif (via in record.replied_via
              or len(record.replied_via) >= self.max_paths):
            return
        record.replied_via.add(via)
        reply = ControlMessage(MessageKind.RREP, origin=msg.origin,
            target=node.id, broadcast_id=msg.broadcast_id, hop_count=0,
            dest_seq=record.reply_seq, replier=node.id,
            blacklist=self.piggyback_blacklist())
        self.network.unicast(node.id, via, reply)

    def handle_rrep(self, msg, via):
        node = self.node
        if msg.replier in node.blacklist or msg.target == node.id:
            return
        if self.too_far(msg):
            return
        entry = node.table.entry(msg.target)
        # stale replies and replies no shorter than what this node already
        # advertised are neither installed nor forwarded
        if entry.admits(msg.hop_count, msg.dest_seq):
            hop_count = msg.hop_count + 1
            entry.offer(via, hop_count, msg.dest_seq, self.now, self.lifetime,
                        self.max_paths, vouched_by=msg.replier)
            if msg.origin != node.id:
                entry.advertise(hop_count, msg.dest_seq)
                self._forward_control(
                    msg.relayed(self.piggyback_blacklist()), msg.origin)
        # a relay may be discovering the same destination for its own buffer
        if (msg.target in node.discoveries
                and self.usable_path(msg.target) is not None):
            self._route_ready(msg.target)

    def _forward_control(self, msg, toward):
        """Unicast `msg` along the route to `toward`, falling back to
        alternatives when links turn out broken."""
        for _ in range(self.max_paths + 1):
            path = self.usable_path(toward)
            if path is None:
                break
            if self.network.unicast(self.node.id, path.next_hop, msg):
                return True
        self.network.ledger.count_stale_reply()
        self.network.record('stale', self.node.id, toward, None,
                            msg.kind.value)
        return False

    def handle_rerr(self, msg, via):
        node = self.node
        lost = []
        for destination in msg.unreachable:
            entry = node.table.get(destination)
            if entry is None or via not in entry.next_hops:
                continue
            was_valid = entry.valid
            entry.remove_next_hop(via)
            if was_valid and not entry.paths:
                lost.append(destination)
        if lost and self.emits_maintenance:
            self._send_rerr(lost)

    def _send_rerr(self, destinations):
        msg = ControlMessage(MessageKind.RERR, origin=self.node.id,
                             unreachable=tuple(sorted(destinations)),
                             blacklist=self.piggyback_blacklist())
        self.network.broadcast(self.node.id, msg)

    def handle_link_break(self, dead_neighbor):
        """Prune every alternative through `dead_neighbor`; entries left
        without paths are reported in one RERR."""
        lost = []
        for entry in self.node.table.entries_via(dead_neighbor):
            was_valid = entry.valid
            entry.remove_next_hop(dead_neighbor)
            if was_valid and not entry.paths:
                lost.append(entry.destination)
        if lost and self.emits_maintenance:
            self._send_rerr(lost)
        return lost

    # blacklist

    def handle_alert(self, msg, via):
        subject = msg.alert_subject
        if subject == self.node.id or subject in self.node.blacklist:
            return
        self.blacklist_node(subject, detector=msg.origin)
        # ALERTs carry no piggyback; receivers must still see the subject as new
        self.network.broadcast(self.node.id, msg.relayed(frozenset()))

    def adopt_blacklist(self, ids, via=None):
        adopted = []
        if not self.alert_piggyback:
            return adopted
        for subject in sorted(ids):
            if subject != self.node.id and self.blacklist_node(subject):
                adopted.append(subject)
        return adopted

    def blacklist_node(self, subject, detector=None):
        """Add `subject` to the blacklist and purge routes that depend on it.

        Entries whose sequence number was vouched for by `subject` are
        forgotten entirely; everywhere else only the alternatives through
        `subject` are removed.

        Returns:
            bool: False if `subject` was already blacklisted.
        """
        node = self.node
        if not node.blacklist.add(subject, self.now, detector):
            return False
        self.network.record('blk', node.id, subject, None,
                            '-' if detector is None else detector)
        for entry in node.table:
            if entry.vouched_by == subject:
                entry.forget()
            else:
                node.table.replace(filter_paths(entry, node.blacklist))
        return True

    # data

    def forward_data(self, pkt):
        """Deliver `pkt` locally or hand it to the next hop.

        Without a usable path the packet is buffered and a discovery starts.
        """
        node = self.node
        if pkt.destination == node.id:
            self.network.deliver(node.id, pkt)
            return
        for _ in range(self.max_paths + 1):
            entry = node.table.valid_entry(pkt.destination, self.now)
            try:
                path = select_path(entry, node.blacklist)
            except NoPathError:
                break
            entry.touch(self.now, self.lifetime)
            if self.network.send_data(node.id, path.next_hop, pkt):
                return
        self._buffer(pkt)
        self.originate_discovery(pkt.destination)

    def _buffer(self, pkt):
        queue = self.node.buffers.setdefault(pkt.destination, deque())
        if len(queue) >= self.buffer_capacity:
            self.network.drop_data(self.node.id, queue.popleft(), 'buffer')
        queue.append(pkt)

    def handle_data(self, pkt, via):
        pkt.visited.append(self.node.id)
        if pkt.destination == self.node.id:
            self.network.deliver(self.node.id, pkt)
            return
        pkt.ttl -= 1
        if pkt.ttl <= 0:
            self.network.drop_data(self.node.id, pkt, 'ttl', peer=via)
            return
        self.forward_data(pkt)
