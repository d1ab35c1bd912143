import math

import numpy as np
import pytest

from manetids.engine import RngStream
from manetids.mobility import (NodeKinematics, compute_adjacency,
    random_kinematics, step_waypoint)

bounds = (800.0, 800.0)
speeds = (3.0, 30.0)


def test_straight_line_progress():
    k = NodeKinematics(0.0, 0.0, 100.0, 0.0, 10.0)
    moved = step_waypoint(k, 1.0, bounds, speeds, None)
    assert moved.position == (10.0, 0.0)
    assert moved.waypoint == (100.0, 0.0)
    assert moved.speed == 10.0

def test_arrival_draws_new_leg():
    rng = RngStream(3, 'mobility', 0)
    k = NodeKinematics(0.0, 0.0, 5.0, 0.0, 10.0)
    moved = step_waypoint(k, 1.0, bounds, speeds, rng)
    assert moved.waypoint != (5.0, 0.0)
    assert speeds[0] <= moved.speed <= speeds[1]
    # half a second spent on the new leg
    assert moved.position != (5.0, 0.0)

def test_pause_holds_position():
    rng = RngStream(3, 'mobility', 0)
    k = NodeKinematics(0.0, 0.0, 5.0, 0.0, 10.0)
    moved = step_waypoint(k, 0.5, bounds, speeds, rng, now=0.0, pause=2.0)
    assert moved.position == (5.0, 0.0)
    assert moved.pause_until == pytest.approx(2.5)
    still = step_waypoint(moved, 1.0, bounds, speeds, rng, now=0.5, pause=2.0)
    assert still.position == (5.0, 0.0)

def test_nodes_stay_inside_area():
    rng = RngStream(5, 'mobility', 2)
    k = random_kinematics(bounds, speeds, rng)
    for step in range(2000):
        k = step_waypoint(k, 0.1, bounds, speeds, rng, now=step * 0.1)
        assert 0.0 <= k.x <= bounds[0]
        assert 0.0 <= k.y <= bounds[1]

def test_step_requires_positive_dt():
    k = NodeKinematics(0.0, 0.0, 1.0, 1.0, 3.0)
    with pytest.raises(ValueError):
        step_waypoint(k, 0.0, bounds, speeds, None)

def test_trajectories_are_reproducible():
    def trajectory(seed):
        rng = RngStream(seed, 'mobility', 4)
        k = random_kinematics(bounds, speeds, rng)
        out = []
        for step in range(100):
            k = step_waypoint(k, 0.1, bounds, speeds, rng, now=step * 0.1)
            out.append(k.position)
        return out
    assert trajectory(9) == trajectory(9)
    assert trajectory(9) != trajectory(10)

def test_adjacency_is_symmetric_disk_graph():
    positions = [(0.0, 0.0), (150.0, 200.0), (300.0, 400.0), (10.0, 0.0)]
    adj = compute_adjacency(positions, 250.0)
    # distance exactly equal to the range connects
    assert adj.are_neighbors(0, 1)
    assert adj.are_neighbors(1, 2)
    assert not adj.are_neighbors(0, 2)
    assert adj.neighbors(0) == (1, 3)
    assert np.array_equal(adj.matrix, adj.matrix.T)
    assert not adj.matrix.diagonal().any()
    assert adj.degree(3) == 2

def test_inactive_nodes_have_no_neighbors():
    positions = [(0.0, 0.0), (10.0, 0.0), (20.0, 0.0)]
    adj = compute_adjacency(positions, 250.0, active=[True, False, True])
    assert adj.neighbors(1) == ()
    assert adj.neighbors(0) == (2,)

def test_adjacency_of_a_single_node():
    adj = compute_adjacency([(1.0, 1.0)], 250.0)
    assert len(adj) == 1
    assert adj.neighbors(0) == ()

def test_just_beyond_range_is_not_a_neighbor():
    assert not compute_adjacency([(0.0, 0.0), (250.1, 0.0)], 250.0)\
        .are_neighbors(0, 1)
    assert compute_adjacency([(0.0, 0.0), (250.0, 0.0)], 250.0)\
        .are_neighbors(0, 1)

def test_adjacency_matches_pairwise_distances():
    rng = RngStream(2, 'topology')
    positions = [(rng.uniform(0.0, 800.0), rng.uniform(0.0, 800.0))
                 for _ in range(20)]
    adj = compute_adjacency(positions, 250.0)
    for i, (xi, yi) in enumerate(positions):
        for j, (xj, yj) in enumerate(positions):
            expected = i != j and math.hypot(xi - xj, yi - yj) <= 250.0
            assert adj.are_neighbors(i, j) == expected
    assert adj.matrix.any()

def test_ten_thousand_steps_stay_in_bounds_and_speed_range():
    rng = RngStream(8, 'mobility', 1)
    k = random_kinematics(bounds, speeds, rng)
    drawn = {k.speed}
    for step in range(10000):
        k = step_waypoint(k, 0.1, bounds, speeds, rng, now=step * 0.1)
        drawn.add(k.speed)
        assert 0.0 <= k.x <= bounds[0] and 0.0 <= k.y <= bounds[1]
        assert 0.0 <= k.wx <= bounds[0] and 0.0 <= k.wy <= bounds[1]
    # a thousand seconds cover many legs
    assert len(drawn) > 3
    assert all(speeds[0] <= v <= speeds[1] for v in drawn)
