from dataclasses import dataclass, field, replace
from enum import Enum


class MessageKind(str, Enum):
    RREQ = 'RREQ'
    RREP = 'RREP'
    RERR = 'RERR'
    ALERT = 'ALERT'


@dataclass(frozen=True)
class ControlMessage:
    """Routing control record.

    Field use by kind:

    * RREQ: `origin` floods a request for `target`; ``(origin, broadcast_id)``
      names the flood.
    * RREP: travels back to `origin` (the requester) advertising a route to
      `target`; `replier` is the node that generated it.
    * RERR: `origin` is the sender; `unreachable` lists lost destinations.
    * ALERT: `origin` is the detecting monitor, `broadcast_id` names the
      flood and `alert_subject` is the detected node.

    `blacklist` carries the sender's known attackers (piggyback).
    """
    kind: MessageKind
    origin: int
    target: int = -1
    broadcast_id: int = 0
    hop_count: int = 0
    origin_seq: int = 0
    dest_seq: int = 0
    alert_subject: int = None
    replier: int = None
    unreachable: tuple = ()
    blacklist: frozenset = field(default_factory=frozenset)

    def relayed(self, blacklist=None):
        """Copy for the next relay: hop count plus one."""
        if blacklist is None:
            blacklist = self.blacklist
        return replace(self, hop_count=self.hop_count + 1, blacklist=blacklist)

    @property
    def flood_key(self):
        return (self.origin, self.broadcast_id)


@dataclass
class DataPacket:
    """One CBR datagram.

    Attributes:
        flow_id (int): Flow the packet belongs to.
        sequence (int): Sequence number within the flow.
        source, destination (int): Flow endpoints.
        created_at (int): Emission time in ticks.
        ttl (int): Hops remaining.
        size (int): Payload bytes.
        visited (list(int)): Nodes that held the packet, in order.
    """
    flow_id: int
    sequence: int
    source: int
    destination: int
    created_at: int
    ttl: int
    size: int = 512
    visited: list = field(default_factory=list)

    @property
    def uid(self):
        return (self.flow_id, self.sequence)

    @property
    def label(self):
        return '{}:{}'.format(self.flow_id, self.sequence)
