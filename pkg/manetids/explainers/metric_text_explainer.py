from manetids.explainers import Explainer


def _absent(value, fmt='{}'):
    return 'absent' if value is None else fmt.format(value)


class MetricTextExplainer(Explainer):
    """Class for explaining network metric values with text.

    Each method briefly says what the metric is and prints its value.
    Undefined values (zero denominators) are printed as ``absent``.
    """

    def pdr(self):
        text = "Packet delivery ratio (unique packets received / sent): {}"\
            .format(self.metric.pdr())
        if self.metric.pdr_is_vacuous():
            text += " (vacuous: nothing was sent)"
        return text

    def avg_delay(self):
        return "Average end-to-end delay: {} ms".format(
            _absent(self.metric.avg_delay()))

    def nrl(self):
        return ("Normalized routing load (routing packets per delivered data "
                "packet): {}".format(_absent(self.metric.nrl())))

    def routing_packets(self, kind=None):
        if kind is None:
            return "Routing packets transmitted: {}".format(
                self.metric.routing_packets())
        return "{} packets transmitted: {}".format(
            getattr(kind, 'value', kind), self.metric.routing_packets(kind))

    def throughput(self, elapsed=None):
        return "Throughput: {} packets/s ({} bytes/s)".format(
            self.metric.throughput(elapsed),
            self.metric.throughput_bytes(elapsed))

    def drop_pct(self, cause=None):
        if cause is None:
            return "Dropped packets: {}% of sent".format(
                self.metric.drop_pct())
        return "Packets dropped by cause '{}': {}% of sent".format(
            cause, self.metric.drop_pct(cause))

    def packets_received(self):
        return "Packets received: {}".format(self.metric.packets_received())

    def num_sent(self):
        return "Packets sent: {}".format(self.metric.num_sent())
