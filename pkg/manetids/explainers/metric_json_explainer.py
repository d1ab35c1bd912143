from collections import OrderedDict
import json

from manetids.explainers import MetricTextExplainer
from manetids.metrics.ledger import DROP_CAUSES


class MetricJSONExplainer(MetricTextExplainer):
    """Class for explaining network metric values in JSON format.

    Absent values serialize as ``null``.
    """

    def pdr(self):
        outcome = super(MetricJSONExplainer, self).pdr()
        response = OrderedDict((
            ("metric", "Packet Delivery Ratio"),
            ("message", outcome),
            ("numSent", self.metric.num_sent()),
            ("numReceived", self.metric.packets_received()),
            ("vacuous", self.metric.pdr_is_vacuous()),
            ("description", "Computed as the number of distinct data packets "
                "received at their destination divided by the number of data "
                "packets sent by sources. Defined as 1.0 when nothing was "
                "sent."),
            ("ideal", "The ideal value of this metric is 1.0")
        ))
        return json.dumps(response)

    def avg_delay(self):
        outcome = super(MetricJSONExplainer, self).avg_delay()
        response = OrderedDict((
            ("metric", "Average End-to-End Delay"),
            ("message", outcome),
            ("value", self.metric.avg_delay()),
            ("unit", "ms"),
            ("numSamples", self.metric.ledger.delay_samples),
            ("description", "Computed as the mean time between emission at "
                "the source and first arrival at the destination.")
        ))
        return json.dumps(response)

    def nrl(self):
        outcome = super(MetricJSONExplainer, self).nrl()
        response = OrderedDict((
            ("metric", "Normalized Routing Load"),
            ("message", outcome),
            ("value", self.metric.nrl()),
            ("numRoutingPackets", self.metric.routing_packets()),
            ("numReceived", self.metric.packets_received()),
            ("description", "Computed as the number of control packet "
                "transmissions (RREQ, RREP, RERR and ALERT, every hop counted) "
                "divided by the number of data packets delivered."),
            ("ideal", "Lower is better")
        ))
        return json.dumps(response)

    def routing_packets(self, kind=None):
        outcome = super(MetricJSONExplainer, self).routing_packets(kind)
        response = OrderedDict((
            ("metric", "Routing Packets"),
            ("message", outcome),
            ("value", self.metric.routing_packets(kind)),
            ("kind", getattr(kind, 'value', kind)),
        ))
        return json.dumps(response)

    def throughput(self, elapsed=None):
        outcome = super(MetricJSONExplainer, self).throughput(elapsed)
        response = OrderedDict((
            ("metric", "Throughput"),
            ("message", outcome),
            ("packetsPerSecond", self.metric.throughput(elapsed)),
            ("bytesPerSecond", self.metric.throughput_bytes(elapsed)),
            ("description", "Computed as the number of distinct data packets "
                "delivered divided by the elapsed virtual time.")
        ))
        return json.dumps(response)

    def drop_pct(self, cause=None):
        outcome = super(MetricJSONExplainer, self).drop_pct(cause)
        response = OrderedDict((
            ("metric", "Drop Percentage"),
            ("message", outcome),
            ("value", self.metric.drop_pct(cause)),
            ("byCause", OrderedDict((c, self.metric.drop_pct(c))
                                    for c in DROP_CAUSES)),
            ("description", "Computed as 100 times the number of dropped data "
                "packets divided by the number of data packets sent."),
            ("ideal", "The ideal value of this metric is 0.0")
        ))
        return json.dumps(response)

    def packets_received(self):
        outcome = super(MetricJSONExplainer, self).packets_received()
        response = OrderedDict((
            ("metric", "Packets Received"),
            ("message", outcome),
            ("value", self.metric.packets_received())
        ))
        return json.dumps(response)
