from dataclasses import dataclass

from manetids.routing.aomdv import AomdvAgent
from manetids.routing.messages import ControlMessage, MessageKind


@dataclass(frozen=True)
class AttackerProfile:
    """Parameters of the forged route replies.

    Attributes:
        fake_hop_count (int): Hop count claimed in every forged RREP.
        seq_inflation (int): Added to the highest destination sequence number
            seen, so the forged reply always looks fresher.
        drop_data (bool): Discard every data packet received.
    """
    fake_hop_count: int = 1
    seq_inflation: int = 100
    drop_data: bool = True

    def __post_init__(self):
        if self.fake_hop_count < 1:
            raise ValueError("fake_hop_count must be at least 1, got "
                             "{}".format(self.fake_hop_count))
        if self.seq_inflation < 1:
            raise ValueError("seq_inflation must be at least 1, got "
                             "{}".format(self.seq_inflation))


class BlackholeAgent(AomdvAgent):
    """Black hole: claims a one-hop, maximally fresh route to any requested
    destination and drops all data it receives.

    It never rebroadcasts RREQs, never originates discovery or RERR and does
    not relay ALERTs. Other control traffic still updates its table.

    Args:
        node (NodeState): Node driven by this agent.
        network (Network): Network the attacker lives in.
        profile (AttackerProfile): Forged reply parameters.
        **kwargs: Routing parameters, see :class:`AomdvAgent`.
    """
    emits_maintenance = False

    def __init__(self, node, network, profile=None, **kwargs):
        super(BlackholeAgent, self).__init__(node, network, **kwargs)
        self.profile = profile if profile is not None else AttackerProfile()
        # highest destination sequence number seen per destination
        self.max_seen = {}
        self.fake_replies = 0

    def handle_rreq(self, msg, via):
        return self.blackhole_handle_rreq(msg, via)

    def blackhole_handle_rreq(self, msg, via):
        """Answer the flood with a forged RREP sent straight back to `via`.

        One forged reply per flood; duplicates only refresh the reverse
        route.
        """
        node = self.node
        if msg.origin == node.id:
            return None
        node.table.entry(msg.origin).offer(via, msg.hop_count + 1,
            msg.origin_seq, self.now, self.lifetime, self.max_paths,
            vouched_by=msg.origin)

        known = node.table.get(msg.target)
        seen = max(self.max_seen.get(msg.target, 0), msg.dest_seq,
                   known.dest_seq if known is not None else 0)
        self.max_seen[msg.target] = seen
        if node.rreq_cache.lookup(msg.flood_key, self.now) is not None:
            return None
        node.rreq_cache.record(msg.flood_key, msg.hop_count + 1, self.now)

        forged = ControlMessage(MessageKind.RREP, origin=msg.origin,
            target=msg.target, broadcast_id=msg.broadcast_id,
            hop_count=self.profile.fake_hop_count,
            dest_seq=seen + self.profile.seq_inflation, replier=node.id)
        self.fake_replies += 1
        self.network.unicast(node.id, via, forged)
        return forged

    def handle_data(self, pkt, via):
        return self.blackhole_handle_data(pkt, via)

    def blackhole_handle_data(self, pkt, via):
        if pkt.source == self.node.id or not self.profile.drop_data:
            return super(BlackholeAgent, self).handle_data(pkt, via)
        pkt.visited.append(self.node.id)
        self.network.drop_data(self.node.id, pkt, 'attacker', peer=via)

    def handle_alert(self, msg, via):
        return None

    def adopt_blacklist(self, ids, via=None):
        return []

    def blacklist_node(self, subject, detector=None):
        return False
