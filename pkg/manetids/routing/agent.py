from abc import abstractmethod
from functools import wraps

from manetids.decorating_metaclass import ApplyDecorator

MESSAGE_HANDLERS = ('handle_rreq', 'handle_rrep', 'handle_rerr', 'handle_alert')


def is_message_handler(attr, value):
    return attr in MESSAGE_HANDLERS and callable(value)

def refuse_blacklisted(func):
    """Decorator for control message handlers.

    Messages relayed by a blacklisted neighbor are discarded before the
    handler runs. Otherwise the blacklist piggybacked on the message is merged
    into the receiving node's own blacklist first.
    """
    @wraps(func)
    def wrapper(self, msg, via, *args, **kwargs):
        if via in self.node.blacklist:
            return None
        if msg.blacklist:
            self.adopt_blacklist(msg.blacklist, via)
        return func(self, msg, via, *args, **kwargs)
    return wrapper


BaseClass = ApplyDecorator(refuse_blacklisted, is_message_handler)

class RoutingAgent(BaseClass):
    """Abstract base class for the routing behavior of a node.

    An agent reacts to messages delivered to its node by the network. The
    message handlers (``handle_rreq``, ``handle_rrep``, ``handle_rerr`` and
    ``handle_alert``) are wrapped by :func:`refuse_blacklisted`, including
    overrides in subclasses.
    """

    @abstractmethod
    def __init__(self, node, network, **kwargs):
        """
        Args:
            node (NodeState): State of the node this agent drives.
            network (Network): Network used to transmit and schedule.
            **kwargs: Agent-specific parameters, kept in `_params`.
        """
        self.node = node
        self.network = network
        self._params = kwargs

    def adopt_blacklist(self, ids, via=None):
        """Merge node ids learned from a neighbor. Returns the adopted ids."""
        return []

    def handle_rreq(self, msg, via):
        raise NotImplementedError("'handle_rreq' is not supported by "
                                  "{}.".format(type(self).__name__))

    def handle_rrep(self, msg, via):
        raise NotImplementedError("'handle_rrep' is not supported by "
                                  "{}.".format(type(self).__name__))

    def handle_rerr(self, msg, via):
        raise NotImplementedError("'handle_rerr' is not supported by "
                                  "{}.".format(type(self).__name__))

    def handle_alert(self, msg, via):
        raise NotImplementedError("'handle_alert' is not supported by "
                                  "{}.".format(type(self).__name__))

    def handle_data(self, pkt, via):
        raise NotImplementedError("'handle_data' is not supported by "
                                  "{}.".format(type(self).__name__))

    def handle_link_break(self, dead_neighbor):
        raise NotImplementedError("'handle_link_break' is not supported by "
                                  "{}.".format(type(self).__name__))
