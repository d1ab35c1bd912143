from manetids.metrics.ledger import BUCKET_FIELDS, DROP_CAUSES, MetricsLedger
from manetids.metrics.metric import Metric
from manetids.metrics.network_metric import NetworkMetric
