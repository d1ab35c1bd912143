"""Event trace.

One line per event, six space separated columns::

    time kind node peer packet detail

`time` is virtual seconds with six decimals. Missing values are written as
``-``. Kinds:

=======  ==========================================================
send     source emits a data packet (peer: destination)
tx       data transmission attempt (peer: receiver, detail: ttl)
recv     first arrival at the destination (peer: source,
         detail: delay in ticks)
dup      repeated arrival at the destination
drop     data packet destroyed (detail: attacker, ttl, buffer or
         no_route)
ctl      control transmission (peer: receiver or ``-`` for a
         broadcast, detail: RREQ, RREP, RERR or ALERT)
stale    route reply discarded for lack of a reverse route
lbrk     link break noticed by the sender (peer: lost neighbor)
dfail    discovery gave up (peer: destination, detail: attempts)
detect   IDS node flags a next hop (peer: subject, detail:
         handed/confirmed)
blk      node blacklists another (peer: subject, detail: detector)
=======  ==========================================================
"""
from manetids.engine.simulator import format_time

TRACE_COLUMNS = ('time', 'kind', 'node', 'peer', 'packet', 'detail')
TRACE_KINDS = ('send', 'tx', 'recv', 'dup', 'drop', 'ctl', 'stale', 'lbrk',
               'dfail', 'detect', 'blk')
MISSING = '-'


def _field(value):
    return MISSING if value is None else str(value)


class TraceWriter(object):
    """Append trace lines to a text stream.

    Args:
        stream: Object with a ``write`` method, e.g. an open file.
    """

    def __init__(self, stream):
        self.stream = stream
        self.lines = 0

    def write(self, time, kind, node, peer=None, packet=None, detail=None):
        if kind not in TRACE_KINDS:
            raise ValueError("unknown trace kind {!r}".format(kind))
        self.stream.write('{} {} {} {} {} {}\n'.format(format_time(time),
            kind, _field(node), _field(peer), _field(packet), _field(detail)))
        self.lines += 1
