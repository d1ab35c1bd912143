from manetids.routing.messages import ControlMessage, DataPacket, MessageKind
from manetids.routing.route_table import (FloodRecord, NoPathError,
    PathAlternative, RouteEntry, RoutingTable, RreqSeenCache, select_path)
from manetids.routing.agent import RoutingAgent
from manetids.routing.aomdv import AomdvAgent
