"""This is the helper script for rebuilding and comparing metrics."""
from collections import OrderedDict

from manetids.metrics.ledger import DROP_CAUSES, MetricsLedger
from manetids.metrics.network_metric import NetworkMetric

# recount dispatch: trace kind -> how it updates a ledger
_RECOUNT = {
    'send': lambda ledger, t, detail: ledger.count_sent(t),
    'recv': lambda ledger, t, detail: ledger.count_received(t, int(detail)),
    'dup': lambda ledger, t, detail: ledger.count_duplicate(t),
    'drop': lambda ledger, t, detail: ledger.count_drop(detail, t),
    'ctl': lambda ledger, t, detail: ledger.count_routing(detail, t),
    'tx': lambda ledger, t, detail: ledger.count_transmission(t),
    'stale': lambda ledger, t, detail: ledger.count_stale_reply(),
}


def recount_ledger(trace, report_interval=1.0, payload_size=512,
                   elapsed=None):
    """Rebuild a ledger from a trace alone.

    Args:
        trace (TraceDataset): Parsed trace.
        report_interval (float): Bucket width in seconds, as in the run.
        payload_size (int): Bytes per data packet, as in the run.
        elapsed (int, optional): Ticks the run covered.

    Returns:
        MetricsLedger: Counters that must equal the run's own ledger.
    """
    ledger = MetricsLedger(report_interval, payload_size)
    events = trace.events
    counted = events[events['kind'].isin(list(_RECOUNT))]
    for kind, ticks, detail in zip(counted['kind'], counted['ticks'],
                                   counted['detail']):
        _RECOUNT[kind](ledger, int(ticks), detail)
    if elapsed is not None:
        ledger.elapsed = int(elapsed)
    elif len(events):
        ledger.elapsed = int(events['ticks'].max())
    return ledger


def compare_ledgers(expected, actual):
    """Differences between two ledgers.

    Returns:
        dict: Counter name to ``(expected, actual)`` for every scalar counter
        that differs, plus ``'intervals'`` when the per-interval series
        differ. Empty when the ledgers agree.
    """
    diff = OrderedDict()
    a, b = expected.counters(), actual.counters()
    for name in a:
        if a[name] != b.get(name):
            diff[name] = (a[name], b.get(name))
    fa, fb = expected.to_frame(), actual.to_frame()
    if not fa.equals(fb):
        diff['intervals'] = (len(fa), len(fb))
    return diff


def summarize(ledger, elapsed=None):
    """Every reported metric of a ledger, in report order.

    Undefined values (no delay samples, nothing delivered) are None.
    """
    metric = NetworkMetric(ledger, elapsed=elapsed)
    summary = OrderedDict((
        ('pdr', metric.pdr()),
        ('pdr_vacuous', int(metric.pdr_is_vacuous())),
        ('avg_delay_ms', metric.avg_delay()),
        ('nrl', metric.nrl()),
        ('routing_packets', metric.routing_packets()),
        ('throughput', metric.throughput() if metric.elapsed > 0 else 0.0),
        ('throughput_bytes',
         metric.throughput_bytes() if metric.elapsed > 0 else 0.0),
        ('drop_pct', metric.drop_pct()),
    ))
    for cause in DROP_CAUSES:
        summary['drop_pct_' + cause] = metric.drop_pct(cause)
    summary['packets_received'] = metric.packets_received()
    summary['in_flight'] = metric.in_flight()
    for name, value in ledger.counters().items():
        summary.setdefault(name, value)
    return summary
