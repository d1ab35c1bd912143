"""Monotone counters of one simulation run."""
from collections import Counter

import numpy as np
import pandas as pd

from manetids.engine.simulator import to_seconds, to_ticks
from manetids.routing.messages import MessageKind

DROP_CAUSES = ('attacker', 'ttl', 'buffer', 'no_route')

BUCKET_FIELDS = ('sent', 'received', 'duplicates') + tuple(
    'dropped_' + c for c in DROP_CAUSES) + ('routing_packets', 'transmissions')


class MetricsLedger(object):
    """Counters from which every network metric is derived.

    Every counter only grows during a run. Each increment is also added to
    the bucket of the reporting interval containing its time stamp, so the
    interval series always sum to the cumulative counts.

    Attributes:
        sent (int): Data packets emitted by sources.
        received_unique (int): Distinct data packets that reached their
            destination.
        duplicates (int): Repeated arrivals of an already received packet.
        dropped (dict): Drops per cause, keys :data:`DROP_CAUSES`.
        routing_kinds (collections.Counter): Control transmissions per
            :class:`~manetids.routing.messages.MessageKind` value.
        stale_replies (int): RREPs discarded for lack of a reverse route.
        transmissions (int): Hop-by-hop data transmission attempts.
        delay_sum (int): Sum of end-to-end delays in ticks.
        delay_samples (int): Number of delays summed.
        elapsed (int): Ticks covered by the run, set when it ends.
    """

    def __init__(self, report_interval=1.0, payload_size=512):
        """
        Args:
            report_interval (float): Width of a reporting interval in seconds.
            payload_size (int): Bytes per data packet, for byte throughput.
        """
        if report_interval <= 0:
            raise ValueError("report_interval must be positive")
        self.report_interval = to_ticks(report_interval)
        self.payload_size = payload_size
        self.sent = 0
        self.received_unique = 0
        self.duplicates = 0
        self.dropped = dict.fromkeys(DROP_CAUSES, 0)
        self.routing_kinds = Counter()
        self.stale_replies = 0
        self.transmissions = 0
        self.delay_sum = 0
        self.delay_samples = 0
        self.elapsed = 0
        self._buckets = {}

    def _bump(self, field, now, amount=1):
        bucket = self._buckets.setdefault(now // self.report_interval,
                                          Counter())
        bucket[field] += amount

    def count_sent(self, now):
        self.sent += 1
        self._bump('sent', now)

    def count_received(self, now, delay):
        self.received_unique += 1
        self.delay_sum += delay
        self.delay_samples += 1
        self._bump('received', now)

    def count_duplicate(self, now):
        self.duplicates += 1
        self._bump('duplicates', now)

    def count_drop(self, cause, now):
        if cause not in self.dropped:
            raise ValueError("unknown drop cause {!r}".format(cause))
        self.dropped[cause] += 1
        self._bump('dropped_' + cause, now)

    def count_routing(self, kind, now):
        self.routing_kinds[MessageKind(kind).value] += 1
        self._bump('routing_packets', now)

    def count_transmission(self, now):
        self.transmissions += 1
        self._bump('transmissions', now)

    def count_stale_reply(self):
        self.stale_replies += 1

    @property
    def dropped_attacker(self):
        return self.dropped['attacker']

    @property
    def dropped_ttl(self):
        return self.dropped['ttl']

    @property
    def dropped_buffer(self):
        return self.dropped['buffer']

    @property
    def dropped_no_route(self):
        return self.dropped['no_route']

    @property
    def total_dropped(self):
        return sum(self.dropped.values())

    @property
    def routing_packets_sent(self):
        return sum(self.routing_kinds.values())

    @property
    def in_flight(self):
        """Packets neither delivered nor dropped (buffered or on a link)."""
        return self.sent - self.received_unique - self.total_dropped

    @property
    def elapsed_seconds(self):
        return to_seconds(self.elapsed)

    def counters(self):
        """Flat dictionary of every scalar counter."""
        counters = {
            'sent': self.sent,
            'received_unique': self.received_unique,
            'duplicates': self.duplicates,
            'routing_packets_sent': self.routing_packets_sent,
            'stale_replies': self.stale_replies,
            'transmissions': self.transmissions,
            'delay_sum': self.delay_sum,
            'delay_samples': self.delay_samples,
        }
        for cause in DROP_CAUSES:
            counters['dropped_' + cause] = self.dropped[cause]
        for kind in MessageKind:
            counters['routing_' + kind.value] = self.routing_kinds[kind.value]
        return counters

    def to_frame(self):
        """Per-interval counts.

        Returns:
            pandas.DataFrame: One row per reporting interval from 0 through
            the last interval touched (or covered by `elapsed`), indexed by
            interval start in seconds, with one column per bucket field plus
            the cumulative ``in_flight`` at the end of each interval.
        """
        last = max(list(self._buckets) + [max(self.elapsed - 1, 0)
                                          // self.report_interval])
        index = np.arange(last + 1)
        frame = pd.DataFrame(0, index=index, columns=list(BUCKET_FIELDS),
                             dtype=np.int64)
        for i, bucket in self._buckets.items():
            for field, count in bucket.items():
                frame.at[i, field] = count
        drops = frame[['dropped_' + c for c in DROP_CAUSES]].sum(axis=1)
        frame['in_flight'] = (frame['sent'] - frame['received']
                              - drops).cumsum()
        frame.index = pd.Index(index * to_seconds(self.report_interval),
                               name='interval_start')
        return frame

    def __eq__(self, other):
        if not isinstance(other, MetricsLedger):
            return NotImplemented
        return (self.counters() == other.counters()
                and self.to_frame().equals(other.to_frame()))

    def __repr__(self):
        return 'MetricsLedger(sent={}, received={}, dropped={}, routing={})'\
            .format(self.sent, self.received_unique, self.total_dropped,
                    self.routing_packets_sent)
