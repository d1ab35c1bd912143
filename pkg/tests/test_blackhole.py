import io

import pytest

from manetids.adversary import AttackerProfile, BlackholeAgent
from manetids.datasets import TraceDataset
from manetids.network import Role
from manetids.scenario import Mode
from manetids.trace import TraceWriter


def test_profile_validation():
    with pytest.raises(ValueError):
        AttackerProfile(fake_hop_count=0)
    with pytest.raises(ValueError):
        AttackerProfile(seq_inflation=0)
    assert AttackerProfile().drop_data

def test_forged_reply_wins_the_route(guarded_chain):
    net, result = guarded_chain(Mode.ATTACK)
    assert result.attackers == [4]
    assert result.monitors == []
    assert net.node(4).role == Role.BLACKHOLE
    assert isinstance(net.agent(4), BlackholeAgent)

    entry = net.node(0).table.get(3)
    assert entry.head.next_hop == 4
    assert entry.head.hop_count == 2
    # the real destination only ever advertised sequence number 1
    assert entry.dest_seq == 100
    assert entry.vouched_by == 4
    assert net.agent(4).fake_replies == 1

def test_black_hole_swallows_all_data(guarded_chain):
    stream = io.StringIO()
    _, result = guarded_chain(Mode.ATTACK, trace=TraceWriter(stream))
    ledger = result.ledger
    assert ledger.sent == 27
    assert ledger.received_unique == 0
    assert ledger.dropped_attacker == ledger.sent
    trace = TraceDataset.from_file(io.StringIO(stream.getvalue()))
    drops = trace.attacker_drops()
    assert len(drops) == ledger.dropped_attacker
    assert set(drops['node']) == {'4'}

def test_black_hole_emits_no_maintenance(guarded_chain):
    stream = io.StringIO()
    guarded_chain(Mode.ATTACK, trace=TraceWriter(stream))
    trace = TraceDataset.from_file(io.StringIO(stream.getvalue()))
    ctl = trace.of_kind('ctl')
    from_attacker = ctl[ctl['node'] == '4']
    assert set(from_attacker['detail']) == {'RREP'}

def test_normal_mode_ignores_attackers(guarded_chain):
    net, result = guarded_chain(Mode.NORMAL)
    assert result.attackers == []
    assert net.node(4).role == Role.NORMAL
    assert result.ledger.received_unique == result.ledger.sent
    assert net.node(0).table.get(3).head.next_hop == 1
