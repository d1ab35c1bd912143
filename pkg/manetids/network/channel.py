from manetids.engine.simulator import EventKind, to_ticks
from manetids.routing.messages import DataPacket


class Channel(object):
    """Loss-free disk-range link layer.

    Whether the receiver hears a transmission is decided at send time from
    the current adjacency. A heard transmission arrives after the per-hop
    latency plus a jitter drawn uniformly (whole ticks) from the jitter
    stream.

    Args:
        sim (Simulator): Engine that schedules arrivals.
        adjacency (Adjacency): Initial neighbor sets; replace it whenever the
            topology changes.
        latency (float): Seconds per hop.
        jitter (float): Jitter bound in seconds.
        rng (RngStream): The jitter stream.
        on_arrival (callable): Called as ``on_arrival(sender, receiver,
            payload)`` when a transmission arrives.
    """

    def __init__(self, sim, adjacency, latency, jitter, rng, on_arrival):
        self.sim = sim
        self.adjacency = adjacency
        self.latency = to_ticks(latency)
        self.jitter = to_ticks(jitter)
        self.rng = rng
        self.on_arrival = on_arrival
        self.data_in_transit = 0

    def channel_deliver(self, sender, receiver, payload):
        """Unicast.

        Returns:
            bool: False if `receiver` is not a neighbor of `sender`, which
            the caller treats as a link break.
        """
        if not self.adjacency.are_neighbors(sender, receiver):
            return False
        self._schedule(sender, receiver, payload)
        return True

    def broadcast(self, sender, payload):
        """One arrival per current neighbor, in ascending id order.

        Returns:
            int: Number of arrivals scheduled.
        """
        neighbors = self.adjacency.neighbors(sender)
        for receiver in neighbors:
            self._schedule(sender, receiver, payload)
        return len(neighbors)

    def _schedule(self, sender, receiver, payload):
        delay = self.latency + self.rng.integers(-self.jitter, self.jitter)
        if isinstance(payload, DataPacket):
            self.data_in_transit += 1
        return self.sim.schedule_after(delay, EventKind.DELIVERY, self._arrive,
                                       sender, receiver, payload)

    def _arrive(self, sender, receiver, payload):
        if isinstance(payload, DataPacket):
            self.data_in_transit -= 1
        self.on_arrival(sender, receiver, payload)
