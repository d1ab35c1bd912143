from logging import info

from manetids.detectors.audit import AuditLedger, AuditVerdict, Verdict
from manetids.engine.simulator import EventKind, format_time, to_ticks
from manetids.routing.messages import ControlMessage, MessageKind


class IdsMonitor(object):
    """Promiscuous forwarding auditor attached to an IDS node.

    The monitor overhears every transmission of a node within its radio range
    (every transmission at all with `global_view`). A data handoff to a next
    hop is confirmed once that next hop is overheard transmitting the same
    packet. At each audit tick a next hop with at least `min_packets` resolved
    handoffs and no confirmation at all is declared malicious and an ALERT is
    flooded.

    Args:
        node (NodeState): The IDS node; its agent relays like any honest node.
        network (Network): Network whose transmissions are overheard.
        audit_interval (float): Seconds between audit ticks.
        min_packets (int): Resolved handoffs needed before a verdict.
        confirm_window (float): Seconds a handoff may stay unconfirmed.
        excuse_span (float): Seconds after overheard route maintenance by a
            next hop during which handoffs to it for that destination are not
            audited.
        global_view (bool): Overhear the whole network.
    """

    def __init__(self, node, network, audit_interval=1.0, min_packets=5,
                 confirm_window=0.5, excuse_span=7.0, global_view=False):
        self.node = node
        self.network = network
        self.audit_interval = to_ticks(audit_interval)
        self.min_packets = min_packets
        self.confirm_window = to_ticks(confirm_window)
        self.excuse_span = to_ticks(excuse_span)
        self.global_view = global_view
        self.ledger = AuditLedger()
        self.verdicts = []
        # (time, subject) pairs, in order
        self.detections = []
        self._excused = {}

    def start(self, end_time):
        """Schedule audit ticks every `audit_interval` up to `end_time`."""
        self._end_time = end_time
        if self.audit_interval <= end_time:
            self.network.sim.schedule(self.audit_interval, EventKind.AUDIT,
                                      self.audit)

    def overhears(self, node_id):
        if self.global_view or node_id == self.node.id:
            return True
        return self.network.adjacency.are_neighbors(self.node.id, node_id)

    def observe_transmission(self, sender, pkt):
        """`sender` was heard transmitting `pkt`, which confirms the handoff
        that brought the packet to it. Called for every attempt, whether or
        not the receiver is still in range."""
        if self.overhears(sender):
            self.ledger.confirm(pkt.uid, sender)

    def observe_forwarding(self, sender, receiver, pkt):
        """Open a pending handoff of `pkt` from `sender` to `receiver`.

        Called only once the channel has accepted the transmission, so a
        receiver that already moved out of the sender's range is never held
        to account for the packet.
        """
        now = self.network.now
        if receiver == self.node.id or receiver in self.node.blacklist:
            return
        if not self.overhears(receiver):
            return
        if receiver == pkt.destination:
            self.ledger.hand_off_confirmed(sender, receiver, pkt.destination)
            return
        if pkt.ttl <= 1:
            # expires at the receiver
            return
        if self._excused.get((receiver, pkt.destination), -1) >= now:
            return
        self.ledger.hand_off(pkt.uid, sender, receiver, pkt.destination,
                             now + self.confirm_window)

    def observe_control(self, sender, msg):
        """Route maintenance by `sender` (an RREQ it originates or an RERR)
        explains why it holds back data for the affected destinations."""
        if not self.overhears(sender):
            return
        if msg.kind == MessageKind.RREQ and msg.origin == sender \
                and msg.hop_count == 0:
            destinations = (msg.target,)
        elif msg.kind == MessageKind.RERR:
            destinations = msg.unreachable
        else:
            return
        until = self.network.now + self.excuse_span
        for destination in destinations:
            self.ledger.confirm_destination(sender, destination)
            self._excused[(sender, destination)] = until

    def audit_next_hop(self, subject):
        """Verdict on `subject` from every handoff resolved since the
        monitor first saw data handed to it. Evidence is never reset, so a
        single confirmed forward clears a next hop for the rest of the run.

        Returns:
            AuditVerdict: Or None while fewer than `min_packets` handoffs to
            `subject` are resolved.
        """
        handed, confirmed = self.ledger.totals(subject)
        if handed < self.min_packets:
            return None
        verdict = Verdict.MISMATCH if confirmed == 0 else Verdict.CONSISTENT
        return AuditVerdict(subject, verdict, handed, confirmed)

    def audit(self):
        """Audit tick: expire stale handoffs, judge every observed next hop
        and raise an ALERT for each mismatch."""
        now = self.network.now
        self.ledger.expire(now)
        verdicts = []
        for subject in self.ledger.subjects():
            if subject in self.node.blacklist:
                continue
            verdict = self.audit_next_hop(subject)
            if verdict is None:
                continue
            verdicts.append(verdict)
            if verdict.verdict == Verdict.MISMATCH:
                self.broadcast_alert(subject, verdict)
        self.verdicts.extend(verdicts)

        next_tick = now + self.audit_interval
        if next_tick <= self._end_time:
            self.network.sim.schedule(next_tick, EventKind.AUDIT, self.audit)
        return verdicts

    def broadcast_alert(self, subject, verdict=None):
        """Blacklist `subject` locally and flood an ALERT naming it."""
        node = self.node
        now = self.network.now
        evidence = verdict.evidence if verdict is not None else (0, 0)
        info("IDS node %d detected node %d at %ss (handed off %d, confirmed "
             "%d)", node.id, subject, format_time(now), *evidence)
        self.detections.append((now, subject))
        self.network.record('detect', node.id, subject, None,
                            '{}/{}'.format(*evidence))
        node.agent.blacklist_node(subject, detector=node.id)
        node.broadcast_id += 1
        msg = ControlMessage(MessageKind.ALERT, origin=node.id,
                             broadcast_id=node.broadcast_id,
                             alert_subject=subject)
        self.network.broadcast(node.id, msg)
        return msg
