from manetids.metrics.ledger import DROP_CAUSES
from manetids.metrics.metric import Metric
from manetids.engine.simulator import TICKS_PER_SECOND, to_seconds


class NetworkMetric(Metric):
    """Performance metrics of one run.

    Ratios with a zero denominator return None rather than a number; see
    :meth:`pdr` for the one exception.
    """

    def __init__(self, ledger, elapsed=None):
        """
        Args:
            ledger (MetricsLedger): Counters of a finished run.
            elapsed (float, optional): Seconds to divide by for throughput.
                Defaults to the time the run covered.

        Raises:
            TypeError: `ledger` must be a
                :obj:`~manetids.metrics.ledger.MetricsLedger`.
        """
        super(NetworkMetric, self).__init__(ledger)
        self.elapsed = (ledger.elapsed_seconds if elapsed is None
                        else float(elapsed))

    def num_sent(self):
        return self.ledger.sent

    def packets_received(self):
        """Distinct data packets delivered."""
        return self.ledger.received_unique

    def pdr(self):
        r"""Packet delivery ratio,
        :math:`\frac{received\_unique}{sent}`.

        With nothing sent the ratio is defined as 1.0;
        :meth:`pdr_is_vacuous` tells that case apart.
        """
        if self.ledger.sent == 0:
            return 1.0
        return self.ledger.received_unique / self.ledger.sent

    def pdr_is_vacuous(self):
        return self.ledger.sent == 0

    def avg_delay(self):
        """Mean end-to-end delay in milliseconds, None without samples."""
        if self.ledger.delay_samples == 0:
            return None
        return (self.ledger.delay_sum / self.ledger.delay_samples
                * 1000.0 / TICKS_PER_SECOND)

    def routing_packets(self, kind=None):
        """Control transmissions, all kinds or the given
        :class:`~manetids.routing.messages.MessageKind`."""
        if kind is None:
            return self.ledger.routing_packets_sent
        return self.ledger.routing_kinds[getattr(kind, 'value', kind)]

    def nrl(self):
        """Normalized routing load: routing packets per delivered packet.
        None when nothing was delivered."""
        if self.ledger.received_unique == 0:
            return None
        return self.ledger.routing_packets_sent / self.ledger.received_unique

    def throughput(self, elapsed=None):
        """Delivered packets per second over `elapsed` seconds."""
        elapsed = self.elapsed if elapsed is None else elapsed
        if elapsed <= 0:
            raise ValueError("elapsed must be positive, got {}".format(elapsed))
        return self.ledger.received_unique / elapsed

    def throughput_bytes(self, elapsed=None):
        return self.throughput(elapsed) * self.ledger.payload_size

    def num_dropped(self, cause=None):
        if cause is None:
            return self.ledger.total_dropped
        return self.ledger.dropped[cause]

    def drop_pct(self, cause=None):
        """Percentage of sent packets dropped, overall or for one cause."""
        if self.ledger.sent == 0:
            return 0.0
        return 100.0 * self.num_dropped(cause) / self.ledger.sent

    def drop_split(self):
        return {cause: self.drop_pct(cause) for cause in DROP_CAUSES}

    def in_flight(self):
        return self.ledger.in_flight

    def throughput_series(self):
        """Delivered packets per second in each reporting interval."""
        frame = self.ledger.to_frame()
        return frame['received'] / to_seconds(self.ledger.report_interval)
