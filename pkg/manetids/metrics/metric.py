from abc import abstractmethod
from collections.abc import Hashable
from functools import wraps

from manetids.decorating_metaclass import ApplyDecorator
from manetids.metrics.ledger import MetricsLedger


def _make_key(args, kwargs, unhashable, kwd_mark=(object(),)):
    key = args
    if kwargs:
        key += kwd_mark
        for item in sorted(kwargs.items()):
            if not isinstance(item[1], Hashable):
                return unhashable
            key += item
    return key

def memoize(func):
    """Cache results per argument tuple. Unhashable keyword arguments bypass
    the cache."""
    sentinel = object()
    unhashable = object()
    cache = {}

    @wraps(func)
    def wrapper(*args, **kwargs):
        key = _make_key(args, kwargs, unhashable)
        if key is unhashable:
            return func(*args, **kwargs)
        result = cache.get(key, sentinel)
        if result is not sentinel:
            return result
        result = func(*args, **kwargs)
        cache[key] = result
        return result

    return wrapper


BaseClass = ApplyDecorator(memoize)

class Metric(BaseClass):
    """Base class for metrics.

    Public methods are memoized, so a metric object must only be built once
    the ledger it reads is final.
    """
    @abstractmethod
    def __init__(self, ledger):
        """
        Args:
            ledger (MetricsLedger): Counters of a finished run.
        """
        if isinstance(ledger, MetricsLedger):
            self.ledger = ledger
        else:
            raise TypeError("ledger must be of MetricsLedger class")
