import json

import pytest

from manetids.explainers import MetricJSONExplainer, MetricTextExplainer
from manetids.metrics import MetricsLedger, NetworkMetric


def ledger_with(sent, received, delay=4000):
    ledger = MetricsLedger()
    for t in range(sent):
        ledger.count_sent(t)
    for t in range(received):
        ledger.count_received(t + delay, delay)
    ledger.count_routing('RREQ', 0)
    ledger.elapsed = 2000000
    return ledger

def test_text_explainer():
    text = MetricTextExplainer(NetworkMetric(ledger_with(4, 2)))
    assert text.pdr().endswith(': 0.5')
    assert text.avg_delay() == "Average end-to-end delay: 4.0 ms"
    assert '0.5' in text.nrl()
    assert text.routing_packets('RREQ') == "RREQ packets transmitted: 1"
    assert text.throughput().startswith("Throughput: 1.0 packets/s")

def test_text_explainer_absent_values():
    text = MetricTextExplainer(NetworkMetric(ledger_with(0, 0)))
    assert 'vacuous' in text.pdr()
    assert text.avg_delay().endswith('absent ms')
    assert text.nrl().endswith('absent')

def test_json_explainer():
    explainer = MetricJSONExplainer(NetworkMetric(ledger_with(4, 2)))
    pdr = json.loads(explainer.pdr())
    assert pdr['metric'] == "Packet Delivery Ratio"
    assert (pdr['numSent'], pdr['numReceived']) == (4, 2)
    drop = json.loads(explainer.drop_pct())
    assert set(drop['byCause']) == {'attacker', 'ttl', 'buffer', 'no_route'}
    nrl = json.loads(MetricJSONExplainer(
        NetworkMetric(ledger_with(3, 0))).nrl())
    assert nrl['value'] is None

def test_explainer_requires_metric():
    with pytest.raises(TypeError):
        MetricTextExplainer(ledger_with(1, 1))
