import pytest

from manetids.engine import (EventKind, SchedulingError, Simulator,
    format_time, to_seconds, to_ticks)


def test_tick_conversion():
    assert to_ticks(1.0) == 1000000
    assert to_ticks(0.002) == 2000
    assert to_ticks(1 / 3) == 333333
    assert to_seconds(2500) == 0.0025
    assert format_time(12000333) == '12.000333'
    assert format_time(5) == '0.000005'

def test_events_fire_in_time_then_insertion_order():
    sim = Simulator()
    fired = []
    sim.schedule(20, EventKind.TIMER, fired.append, 'late')
    sim.schedule(10, EventKind.TIMER, fired.append, 'first')
    sim.schedule(10, EventKind.DELIVERY, fired.append, 'second')
    sim.schedule(10, EventKind.AUDIT, fired.append, 'third')
    sim.run_until(100)
    assert fired == ['first', 'second', 'third', 'late']
    assert sim.processed == 4
    assert sim.clock == 100

def test_run_until_stops_at_end_time():
    sim = Simulator()
    fired = []
    sim.schedule(50, EventKind.TIMER, fired.append, 'in')
    sim.schedule(51, EventKind.TIMER, fired.append, 'out')
    assert sim.run_until(50) == 50
    assert fired == ['in']
    assert sim.pending() == 1
    sim.run_until(60)
    assert fired == ['in', 'out']

def test_callbacks_may_schedule_same_tick():
    sim = Simulator()
    fired = []

    def chain():
        fired.append(sim.now)
        if len(fired) < 3:
            sim.schedule_after(0, EventKind.TIMER, chain)

    sim.schedule(7, EventKind.TIMER, chain)
    sim.run_until(7)
    assert fired == [7, 7, 7]

def test_cancelled_events_are_skipped():
    sim = Simulator()
    fired = []
    event = sim.schedule(10, EventKind.TIMER, fired.append, 'x')
    event.cancel()
    assert sim.pending() == 0
    sim.run_until(20)
    assert fired == []
    assert sim.processed == 0

def test_scheduling_in_the_past():
    sim = Simulator()
    sim.run_until(100)
    with pytest.raises(SchedulingError):
        sim.schedule(99, EventKind.TIMER, print)
    sim.schedule(100, EventKind.TIMER, print)

def test_on_event_hook_sees_every_event():
    seen = []
    sim = Simulator(on_event=lambda e: seen.append((e.fire_time, e.kind)))
    sim.schedule(3, EventKind.MOBILITY, lambda: None)
    sim.schedule(1, EventKind.TRAFFIC, lambda: None)
    sim.run_until(5)
    assert seen == [(1, EventKind.TRAFFIC), (3, EventKind.MOBILITY)]
