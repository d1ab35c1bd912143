from enum import Enum

from manetids.detectors.audit import Blacklist
from manetids.engine.simulator import to_ticks
from manetids.routing.route_table import RoutingTable, RreqSeenCache


class Role(str, Enum):
    NORMAL = 'normal'
    BLACKHOLE = 'blackhole'
    IDS_MONITOR = 'ids'


class NodeState(object):
    """Everything one node knows.

    Attributes:
        id (int): Node id, also its row in the network's position array.
        role (Role): Behavior of the node.
        kinematics (NodeKinematics): Position, waypoint and speed.
        join_time (int): Tick at which the node joins the network.
        table (RoutingTable): Multipath routes.
        blacklist (Blacklist): Detected attackers.
        seq (int): Own destination sequence number.
        broadcast_id (int): Last flood id originated.
        rreq_cache (RreqSeenCache): Floods seen recently.
        buffers (dict): Destination to deque of packets awaiting a route.
        discoveries (dict): Destination to running discovery.
        agent (RoutingAgent): Routing behavior, set by the network.
        monitor (IdsMonitor): Forwarding auditor of IDS nodes, else None.
    """

    def __init__(self, node_id, role, kinematics, join_time=0,
                 rreq_cache_lifetime=3.0):
        self.id = node_id
        self.role = Role(role)
        self.kinematics = kinematics
        self.join_time = join_time
        self.table = RoutingTable()
        self.blacklist = Blacklist()
        self.seq = 0
        self.broadcast_id = 0
        self.rreq_cache = RreqSeenCache(to_ticks(rreq_cache_lifetime))
        self.buffers = {}
        self.discoveries = {}
        self.agent = None
        self.monitor = None

    @property
    def position(self):
        return self.kinematics.position

    def buffered(self):
        return sum(len(q) for q in self.buffers.values())

    def __repr__(self):
        return 'NodeState({}, {})'.format(self.id, self.role.value)
