"""Experiment configuration.

A :class:`Scenario` holds every experiment and protocol constant. Defaults
describe the standard density experiment: 800 x 800 m, 250 m range,
3 to 30 m/s, 100 s, CBR at 3 packets/s, 4 attackers and 2 IDS nodes.

Config files are flat ``key = value`` text::

    # density sweep cell
    node_count = 60
    mode = ids
    seed = 7
"""
from dataclasses import asdict, dataclass, fields, replace
from enum import Enum


class Mode(str, Enum):
    NORMAL = 'normal'
    ATTACK = 'attack'
    IDS = 'ids'


class ScenarioError(ValueError):
    """Invalid configuration.

    Attributes:
        field (str): Name of the offending field or config key.
    """

    def __init__(self, field, message):
        self.field = field
        super(ScenarioError, self).__init__("{}: {}".format(field, message))


_TRUE = ('true', 'yes', 'on', '1')
_FALSE = ('false', 'no', 'off', '0')


def _parse_value(name, kind, text):
    text = text.strip()
    try:
        if kind is bool:
            if text.lower() in _TRUE:
                return True
            if text.lower() in _FALSE:
                return False
            raise ValueError(text)
        if kind is Mode:
            return Mode(text.lower())
        if kind is int:
            return int(text)
        return kind(text)
    except ValueError:
        raise ScenarioError(name, "cannot parse {!r} as {}".format(
            text, kind.__name__)) from None

def _format_value(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass
class Scenario:
    """Full configuration of one simulation run.

    Attributes:
        node_count (int): Nodes in the density population (IDS nodes come on
            top of it).
        width, height (float): Area in meters.
        transmission_range (float): Radio range in meters.
        v_min, v_max (float): Speed bounds in m/s.
        pause (float): Pause at each waypoint in seconds.
        duration (float): Simulated seconds.
        mode (Mode): normal, attack or ids.
        attacker_count (int): Black holes among the population (ignored in
            normal mode).
        ids_count (int): IDS nodes (ids mode only).
        flow_count (int): CBR flows.
        cbr_rate (float): Packets per second per flow.
        payload_size (int): Bytes per data packet.
        traffic_start (float): Earliest flow start in seconds.
        seed (int): Seed of every random stream.
        mobility_tick (float): Seconds between position updates.
        staggered_join (bool): Nodes join at random times in
            ``[0, join_window)``.
        join_window (float): See `staggered_join`.
        per_hop_latency (float): Seconds per link traversal.
        jitter (float): Uniform jitter bound in seconds, below the latency.
        active_route_lifetime (float): Unused routes expire after this.
        rreq_cache_lifetime (float): Seconds a flood is remembered.
        discovery_timeout (float): First discovery timeout in seconds.
        retry_limit (int): Total discovery attempts.
        backoff_factor (float): Timeout multiplier per attempt.
        data_ttl (int): Initial hop budget of data packets, also the hop
            limit of route requests and replies.
        buffer_capacity (int): Packets buffered per destination.
        max_paths (int): Alternatives per route entry.
        fake_hop_count (int): Hop count claimed by black holes.
        seq_inflation (int): Sequence number inflation of black holes.
        audit_interval (float): Seconds between IDS audits.
        audit_min_packets (int): Handoffs needed before a verdict.
        confirm_window (float): Seconds a handoff may remain unconfirmed.
        ids_global_view (bool): IDS nodes overhear the whole network.
        alert_piggyback (bool): Control messages carry the sender's
            blacklist.
        report_interval (float): Width of metric time series buckets.
    """
    node_count: int = 50
    width: float = 800.0
    height: float = 800.0
    transmission_range: float = 250.0
    v_min: float = 3.0
    v_max: float = 30.0
    pause: float = 0.0
    duration: float = 100.0
    mode: Mode = Mode.NORMAL
    attacker_count: int = 4
    ids_count: int = 2
    flow_count: int = 10
    cbr_rate: float = 3.0
    payload_size: int = 512
    traffic_start: float = 1.0
    seed: int = 1
    mobility_tick: float = 0.1
    staggered_join: bool = False
    join_window: float = 10.0
    per_hop_latency: float = 0.002
    jitter: float = 0.0005
    active_route_lifetime: float = 10.0
    rreq_cache_lifetime: float = 3.0
    discovery_timeout: float = 1.0
    retry_limit: int = 3
    backoff_factor: float = 2.0
    data_ttl: int = 32
    buffer_capacity: int = 64
    max_paths: int = 4
    fake_hop_count: int = 1
    seq_inflation: int = 100
    audit_interval: float = 1.0
    audit_min_packets: int = 5
    confirm_window: float = 0.5
    ids_global_view: bool = False
    alert_piggyback: bool = True
    report_interval: float = 1.0

    def __post_init__(self):
        self.mode = Mode(self.mode)

    @classmethod
    def field_types(cls):
        return {f.name: f.type for f in fields(cls)}

    @property
    def effective_attacker_count(self):
        return 0 if self.mode == Mode.NORMAL else self.attacker_count

    @property
    def effective_ids_count(self):
        return self.ids_count if self.mode == Mode.IDS else 0

    @property
    def discovery_span(self):
        """Seconds from the first RREQ until a discovery gives up."""
        return sum(self.discovery_timeout * self.backoff_factor ** i
                   for i in range(self.retry_limit))

    def routing_params(self):
        return dict(active_route_lifetime=self.active_route_lifetime,
                    discovery_timeout=self.discovery_timeout,
                    retry_limit=self.retry_limit,
                    backoff_factor=self.backoff_factor,
                    buffer_capacity=self.buffer_capacity,
                    max_paths=self.max_paths,
                    alert_piggyback=self.alert_piggyback,
                    max_control_hops=self.data_ttl)

    def replace(self, **changes):
        return replace(self, **changes)

    def validate(self):
        """Check every field.

        Raises:
            ScenarioError: Names the first offending field.
        """
        def require(condition, field, message):
            if not condition:
                raise ScenarioError(field, message)

        require(self.node_count >= 2, 'node_count', "must be at least 2")
        require(self.width > 0, 'width', "must be positive")
        require(self.height > 0, 'height', "must be positive")
        require(self.transmission_range > 0, 'transmission_range',
                "must be positive")
        require(self.v_min > 0, 'v_min', "must be positive")
        require(self.v_max >= self.v_min, 'v_max', "must be at least v_min")
        require(self.pause >= 0, 'pause', "must be non-negative")
        require(self.duration > 0, 'duration', "must be positive")
        require(self.attacker_count >= 0, 'attacker_count',
                "must be non-negative")
        if self.mode in (Mode.ATTACK, Mode.IDS):
            require(self.attacker_count >= 1, 'attacker_count',
                    "{} mode needs at least one attacker".format(
                        self.mode.value))
        require(self.attacker_count <= self.node_count - 2, 'attacker_count',
                "must leave at least two honest nodes")
        require(self.ids_count >= 0, 'ids_count', "must be non-negative")
        if self.mode == Mode.IDS:
            require(self.ids_count >= 1, 'ids_count',
                    "ids mode needs at least one IDS node")
        require(self.flow_count >= 0, 'flow_count', "must be non-negative")
        require(self.cbr_rate > 0, 'cbr_rate', "must be positive")
        require(self.payload_size > 0, 'payload_size', "must be positive")
        require(self.traffic_start >= 0, 'traffic_start',
                "must be non-negative")
        require(self.seed >= 0, 'seed', "must be non-negative")
        require(self.mobility_tick > 0, 'mobility_tick', "must be positive")
        require(self.join_window >= 0, 'join_window', "must be non-negative")
        require(self.per_hop_latency > 0, 'per_hop_latency',
                "must be positive")
        require(0 <= self.jitter < self.per_hop_latency, 'jitter',
                "must lie in [0, per_hop_latency)")
        require(self.active_route_lifetime > 0, 'active_route_lifetime',
                "must be positive")
        require(self.rreq_cache_lifetime > 0, 'rreq_cache_lifetime',
                "must be positive")
        require(self.discovery_timeout > 0, 'discovery_timeout',
                "must be positive")
        require(self.retry_limit >= 1, 'retry_limit', "must be at least 1")
        require(self.backoff_factor >= 1, 'backoff_factor',
                "must be at least 1")
        require(self.data_ttl >= 1, 'data_ttl', "must be at least 1")
        require(self.buffer_capacity >= 1, 'buffer_capacity',
                "must be at least 1")
        require(self.max_paths >= 1, 'max_paths', "must be at least 1")
        require(self.fake_hop_count >= 1, 'fake_hop_count',
                "must be at least 1")
        require(self.seq_inflation >= 1, 'seq_inflation',
                "must be at least 1")
        require(self.audit_interval > 0, 'audit_interval', "must be positive")
        require(self.audit_min_packets >= 1, 'audit_min_packets',
                "must be at least 1")
        require(self.confirm_window > self.per_hop_latency + self.jitter,
                'confirm_window', "must exceed the worst per-hop delay")
        require(self.report_interval > 0, 'report_interval',
                "must be positive")
        return self

    # config files

    def to_dict(self):
        d = asdict(self)
        d['mode'] = self.mode.value
        return d

    def to_config(self):
        """Render as ``key = value`` lines in field order."""
        return ''.join('{} = {}\n'.format(f.name,
                                          _format_value(getattr(self, f.name)))
                       for f in fields(self))

    @classmethod
    def from_dict(cls, values, base=None):
        """Build from string or typed values, starting from `base` (defaults
        if omitted).

        Raises:
            ScenarioError: Unknown key or unparsable value.
        """
        types = cls.field_types()
        changes = {}
        for key, value in values.items():
            if key not in types:
                raise ScenarioError(key, "unknown configuration key")
            if isinstance(value, str):
                value = _parse_value(key, types[key], value)
            changes[key] = value
        return replace(base if base is not None else cls(), **changes)

    @classmethod
    def from_config(cls, text, base=None):
        values = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise ScenarioError('line {}'.format(lineno),
                                    "expected 'key = value', got {!r}".format(
                                        line))
            key, value = (part.strip() for part in line.split('=', 1))
            values[key] = value
        return cls.from_dict(values, base=base)

    @classmethod
    def load(cls, path, base=None):
        with open(path) as f:
            return cls.from_config(f.read(), base=base)

    def dump(self, path):
        with open(path, 'w') as f:
            f.write(self.to_config())
