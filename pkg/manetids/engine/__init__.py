from manetids.engine.simulator import (EventKind, SchedulingError, SimEvent,
    Simulator, TICKS_PER_SECOND, format_time, to_seconds, to_ticks)
from manetids.engine.random_streams import RngStream, STREAM_IDS
