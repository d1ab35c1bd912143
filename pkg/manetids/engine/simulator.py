"""Discrete-event engine: virtual clock, event queue and the run loop.

Time is kept as an integer number of ticks (microseconds) so that event
ordering never depends on floating point rounding.
"""
from enum import Enum
import heapq

TICKS_PER_SECOND = 1000000


def to_ticks(seconds):
    """Convert virtual seconds to integer ticks (rounded to the microsecond)."""
    return int(round(seconds * TICKS_PER_SECOND))

def to_seconds(ticks):
    return ticks / TICKS_PER_SECOND

def format_time(ticks):
    """Render ticks as seconds with exactly six decimals, e.g. ``12.000333``."""
    return '{}.{:06d}'.format(ticks // TICKS_PER_SECOND, ticks % TICKS_PER_SECOND)


class SchedulingError(ValueError):
    """Error raised when an event is scheduled before the current clock."""


class EventKind(str, Enum):
    MOBILITY = 'mobility'
    DELIVERY = 'delivery'
    TRAFFIC = 'traffic'
    TIMER = 'timer'
    AUDIT = 'audit'


class SimEvent(object):
    """A scheduled callback.

    Attributes:
        fire_time (int): Virtual time in ticks.
        sequence (int): Insertion counter used to order events with equal
            `fire_time`.
        kind (EventKind): Event category.
        cancelled (bool): Cancelled events stay in the queue but are skipped.
    """
    __slots__ = ('fire_time', 'sequence', 'kind', 'callback', 'args',
                 'cancelled')

    def __init__(self, fire_time, sequence, kind, callback, args=()):
        self.fire_time = fire_time
        self.sequence = sequence
        self.kind = kind
        self.callback = callback
        self.args = args
        self.cancelled = False

    def cancel(self):
        self.cancelled = True

    def __lt__(self, other):
        return (self.fire_time, self.sequence) < (other.fire_time, other.sequence)

    def __repr__(self):
        return 'SimEvent({}, #{}, {})'.format(format_time(self.fire_time),
                                              self.sequence, self.kind.value)


class Simulator(object):
    """Single-threaded event loop.

    Events fire in ``(fire_time, sequence)`` order. The simulator holds no
    global state so independent instances may run side by side.

    Examples:
        >>> sim = Simulator()
        >>> fired = []
        >>> _ = sim.schedule(to_ticks(1.0), EventKind.TIMER, fired.append, 'a')
        >>> sim.run_until(to_ticks(2.0))
        2000000
        >>> fired
        ['a']
    """

    def __init__(self, on_event=None):
        """
        Args:
            on_event (callable, optional): Called with each processed
                :obj:`SimEvent` before its callback runs.
        """
        self._queue = []
        self._sequence = 0
        self.clock = 0
        self.processed = 0
        self.on_event = on_event

    @property
    def now(self):
        """Current virtual time in ticks."""
        return self.clock

    def schedule(self, fire_time, kind, callback, *args):
        """Enqueue `callback(*args)` to run at `fire_time` ticks.

        Returns:
            SimEvent: Handle which may be cancelled.

        Raises:
            SchedulingError: `fire_time` lies before the current clock.
        """
        fire_time = int(fire_time)
        if fire_time < self.clock:
            raise SchedulingError("cannot schedule {} event at {} before clock "
                "{}".format(EventKind(kind).value, format_time(fire_time),
                            format_time(self.clock)))
        event = SimEvent(fire_time, self._sequence, EventKind(kind), callback,
                         args)
        self._sequence += 1
        heapq.heappush(self._queue, event)
        return event

    def schedule_after(self, delay, kind, callback, *args):
        return self.schedule(self.clock + int(delay), kind, callback, *args)

    def pending(self):
        return sum(1 for e in self._queue if not e.cancelled)

    def run_until(self, end_time):
        """Process every event with ``fire_time <= end_time`` then set the
        clock to `end_time`.

        Args:
            end_time (int): Virtual time in ticks.

        Returns:
            int: The final clock.
        """
        end_time = int(end_time)
        queue = self._queue
        while queue and queue[0].fire_time <= end_time:
            event = heapq.heappop(queue)
            if event.cancelled:
                continue
            self.clock = event.fire_time
            self.processed += 1
            if self.on_event is not None:
                self.on_event(event)
            event.callback(*event.args)
        self.clock = max(self.clock, end_time)
        return self.clock
