"""Random waypoint movement."""
from dataclasses import dataclass, replace
import math

# arrival with zero pause can chain several legs inside one step
MAX_LEGS_PER_STEP = 1000


@dataclass(frozen=True)
class NodeKinematics:
    """Position, current waypoint and speed of one node.

    Attributes:
        x, y (float): Position in meters.
        wx, wy (float): Waypoint in meters.
        speed (float): Speed toward the waypoint in m/s.
        pause_until (float): Virtual seconds until which the node stays put.
    """
    x: float
    y: float
    wx: float
    wy: float
    speed: float
    pause_until: float = 0.0

    @property
    def position(self):
        return (self.x, self.y)

    @property
    def waypoint(self):
        return (self.wx, self.wy)


def _draw_point(bounds, rng):
    width, height = bounds
    return rng.uniform(0.0, width), rng.uniform(0.0, height)

def _clip(value, upper):
    return min(max(value, 0.0), upper)


def random_kinematics(bounds, speed_range, rng):
    """Initial placement: uniform position, uniform waypoint and uniform speed.

    Args:
        bounds (tuple): ``(width, height)`` of the area in meters.
        speed_range (tuple): ``(v_min, v_max)`` in m/s.
        rng (RngStream): Mobility stream of the node.
    """
    x, y = _draw_point(bounds, rng)
    wx, wy = _draw_point(bounds, rng)
    return NodeKinematics(x, y, wx, wy, rng.uniform(*speed_range))


def step_waypoint(k, dt, bounds, speed_range, rng, now=0.0, pause=0.0):
    """Advance a node by `dt` seconds.

    The node moves in a straight line toward its waypoint. On arrival it
    pauses for `pause` seconds, then draws a fresh uniform waypoint and a fresh
    uniform speed in `speed_range`; any time left in the step is spent on the
    new leg.

    Args:
        k (NodeKinematics): Current state.
        dt (float): Step length in seconds, must be positive.
        bounds (tuple): ``(width, height)`` in meters.
        speed_range (tuple): ``(v_min, v_max)`` in m/s.
        rng (RngStream): Mobility stream of this node.
        now (float): Virtual time at the start of the step.
        pause (float): Pause time at each waypoint.

    Returns:
        NodeKinematics: State at ``now + dt``.

    Examples:
        >>> k = NodeKinematics(0.0, 0.0, 100.0, 0.0, 10.0)
        >>> step_waypoint(k, 1.0, (800, 800), (3, 30), None).position
        (10.0, 0.0)
    """
    if dt <= 0:
        raise ValueError("dt must be positive, got {}".format(dt))
    width, height = bounds
    x, y, wx, wy = k.x, k.y, k.wx, k.wy
    speed, pause_until = k.speed, k.pause_until
    t, remaining = now, dt

    for _ in range(MAX_LEGS_PER_STEP):
        if pause_until > t:
            wait = min(remaining, pause_until - t)
            t += wait
            remaining -= wait
            if remaining <= 0:
                break
        dist = math.hypot(wx - x, wy - y)
        reach = speed * remaining
        if reach < dist:
            frac = reach / dist
            x += (wx - x) * frac
            y += (wy - y) * frac
            break
        # arrived
        x, y = wx, wy
        used = dist / speed
        t += used
        remaining -= used
        pause_until = t + pause
        wx, wy = _draw_point(bounds, rng)
        speed = rng.uniform(*speed_range)
        if remaining <= 0:
            break

    return replace(k, x=_clip(x, width), y=_clip(y, height), wx=wx, wy=wy,
                   speed=speed, pause_until=pause_until)
