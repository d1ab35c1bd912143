from abc import ABC

from manetids.metrics import Metric


class Explainer(ABC):
    """Base class for explainers of a run's metrics."""

    def __init__(self, metric):
        """
        Args:
            metric (Metric): The metric to be explained.

        Raises:
            TypeError: `metric` is not a :class:`Metric`.
        """
        if not isinstance(metric, Metric):
            raise TypeError("metric must be a Metric.")
        self.metric = metric
