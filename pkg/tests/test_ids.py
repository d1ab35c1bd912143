import io

from manetids.datasets import TraceDataset
from manetids.detectors import (AuditLedger, Blacklist, IdsMonitor, Verdict)
from manetids.engine import to_ticks
from manetids.network import Role
from manetids.routing.messages import DataPacket
from manetids.scenario import Mode
from manetids.trace import TraceWriter


def test_ledger_confirms_and_expires():
    ledger = AuditLedger()
    ledger.hand_off((0, 1), sender=0, next_hop=4, destination=3,
                    expires_at=100)
    ledger.hand_off((0, 2), sender=0, next_hop=4, destination=3,
                    expires_at=200)
    assert ledger.totals(4) == (0, 0)
    assert ledger.confirm((0, 1), 4)
    assert not ledger.confirm((0, 1), 4)
    assert ledger.totals(4) == (1, 1)
    assert ledger.expire(150) == 0
    assert ledger.expire(201) == 1
    assert ledger.totals(4) == (2, 1)
    assert ledger.subjects() == [4]

def test_ledger_maintenance_confirms_pending():
    ledger = AuditLedger()
    for seq in range(3):
        ledger.hand_off((0, seq), 0, 4, 3, expires_at=100)
    ledger.hand_off((0, 9), 0, 4, 7, expires_at=100)
    assert ledger.confirm_destination(4, 3) == 3
    assert ledger.get(0, 4, 3).confirmed == 3
    assert ledger.get(0, 4, 7).pending == 1

def test_destination_handoff_is_confirmed():
    ledger = AuditLedger()
    record = ledger.hand_off_confirmed(1, 3, 3)
    assert (record.handed_off, record.confirmed, record.pending) == (1, 1, 0)

def test_blacklist_is_append_only():
    bl = Blacklist()
    assert bl.add(4, 10, detector=5)
    assert not bl.add(4, 20, detector=6)
    assert bl.entry(4).detected_at == 10
    assert bl.entry(4).detector == 5
    assert 4 in bl and list(bl) == [4] and len(bl) == 1
    assert bl.ids == frozenset({4})

def test_monitor_detects_black_hole(guarded_chain):
    stream = io.StringIO()
    net, result = guarded_chain(Mode.IDS, trace=TraceWriter(stream))
    assert result.monitors == [5]
    assert net.node(5).role == Role.IDS_MONITOR
    assert isinstance(net.node(5).monitor, IdsMonitor)
    # five unconfirmed handoffs are resolved by the audit at 3 s
    assert result.detections[0] == (to_ticks(3.0), 5, 4)
    assert result.blacklisted == [4]

    verdicts = [v for v in net.node(5).monitor.verdicts if v.subject == 4]
    assert verdicts[0].verdict == Verdict.MISMATCH
    assert verdicts[0].confirmed == 0
    assert verdicts[0].handed_off >= 5

    trace = TraceDataset.from_file(io.StringIO(stream.getvalue()))
    assert [(n, s) for _, n, s in trace.detections()] == [(5, 4)]
    blk = trace.of_kind('blk')
    assert set(blk['peer']) == {'4'}
    assert {'0', '1', '2', '3', '5'} <= set(blk['node'])

def test_alert_reroutes_around_the_black_hole(guarded_chain):
    net, result = guarded_chain(Mode.IDS)
    entry = net.node(0).table.get(3)
    assert entry.valid
    assert 4 not in entry.next_hops
    assert entry.vouched_by == 3
    # the black hole never learns it was caught
    assert len(net.node(4).blacklist) == 0

def test_ids_mode_restores_delivery(guarded_chain):
    _, attack = guarded_chain(Mode.ATTACK)
    _, ids = guarded_chain(Mode.IDS)
    assert attack.ledger.received_unique == 0
    assert ids.ledger.sent == attack.ledger.sent
    assert ids.ledger.received_unique > ids.ledger.sent // 2
    assert ids.ledger.dropped_attacker < 10

def test_honest_relay_is_never_flagged(guarded_chain):
    net, result = guarded_chain(Mode.IDS)
    verdicts = [v for v in net.node(5).monitor.verdicts if v.subject != 4]
    assert all(v.verdict == Verdict.CONSISTENT for v in verdicts)
    assert set(result.blacklisted) <= set(result.attackers)

# node 2 hears 0, 1 and 3 but node 1 is out of node 0's range
HANDOFF_LAYOUT = [(200.0, 0.0), (480.0, 0.0), (300.0, 0.0), (100.0, 0.0),
                  (1000.0, 1000.0)]

def test_failed_handoff_is_not_audited(static_network):
    net = static_network(HANDOFF_LAYOUT, mode=Mode.IDS, monitors=[2])
    ledger = net.node(2).monitor.ledger
    pkt = DataPacket(0, 0, 3, 4, created_at=0, ttl=32)
    assert net.send_data(3, 0, pkt)
    record = ledger.get(3, 0, 4)
    assert (record.handed_off, record.pending) == (1, 1)

    # node 0 is heard trying, but the channel refuses the link to node 1
    assert not net.send_data(0, 1, pkt)
    assert (record.confirmed, record.pending) == (1, 0)
    assert ledger.get(0, 1, 4) is None
    assert ledger.totals(1) == (0, 0)
    assert net.link_breaks == [(0, 0, 1)]

def test_audit_judges_cumulative_evidence(static_network):
    net = static_network(HANDOFF_LAYOUT, mode=Mode.IDS, monitors=[2],
                         audit_min_packets=5)
    monitor = net.node(2).monitor
    monitor.ledger.hand_off((0, 0), 3, 0, 4, expires_at=10)
    monitor.ledger.confirm((0, 0), 0)
    for seq in range(1, 8):
        monitor.ledger.hand_off((0, seq), 3, 0, 4, expires_at=10)
        monitor.ledger.hand_off((1, seq), 3, 1, 4, expires_at=10)
    monitor.ledger.expire(11)
    # one early confirmation outweighs any number of later losses
    verdict = monitor.audit_next_hop(0)
    assert verdict.verdict == Verdict.CONSISTENT
    assert verdict.evidence == (8, 1)
    assert monitor.audit_next_hop(1).verdict == Verdict.MISMATCH
    monitor.ledger.hand_off((2, 0), 3, 5, 4, expires_at=10)
    monitor.ledger.expire(11)
    assert monitor.audit_next_hop(5) is None
