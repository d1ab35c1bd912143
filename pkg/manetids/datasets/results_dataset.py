from collections import OrderedDict
import os

import numpy as np
import pandas as pd

from manetids.datasets import Dataset
from manetids.engine.simulator import format_time
from manetids.scenario import Mode, Scenario

KEY_COLUMNS = ['node_count', 'mode', 'seed']
MODE_ORDER = [m.value for m in Mode]

# series file name -> metric column
SERIES_FILES = OrderedDict((
    ('drop_pct', 'drop_pct'),
    ('pdr', 'pdr'),
    ('routing_load', 'routing_packets'),
    ('throughput', 'throughput'),
    ('packets_received', 'packets_received'),
))


class ResultsDataset(Dataset):
    """Metrics of many runs, one row per ``(node_count, mode, seed)``.

    Attributes:
        runs (pandas.DataFrame): Key columns :data:`KEY_COLUMNS` followed by
            one column per metric. Undefined metric values are NaN.
    """

    def __init__(self, runs, metadata=None):
        """
        Args:
            runs (pandas.DataFrame): One row per run.
            metadata (dict, optional): Provenance.

        Raises:
            ValueError: Key columns missing or a key repeated.
        """
        runs = runs.copy()
        if 'mode' in runs.columns:
            runs['mode'] = runs['mode'].map(lambda m: Mode(m).value)
        self.runs = self._sorted(runs)
        super(ResultsDataset, self).__init__(metadata=metadata)

    @staticmethod
    def _sorted(runs):
        if not set(KEY_COLUMNS) <= set(runs.columns) or runs.empty:
            return runs.reset_index(drop=True)
        order = runs['mode'].map(MODE_ORDER.index)
        return (runs.assign(_order=order)
                .sort_values(['node_count', '_order', 'seed'])
                .drop(columns='_order').reset_index(drop=True))

    @classmethod
    def from_records(cls, records, metadata=None):
        """Build from dictionaries holding the key columns and metrics."""
        frame = pd.DataFrame.from_records(list(records))
        if frame.empty:
            frame = pd.DataFrame(columns=KEY_COLUMNS)
        return cls(frame.fillna(value=np.nan), metadata=metadata)

    @classmethod
    def from_file(cls, path):
        return cls(pd.read_csv(path, sep='\t', float_precision='round_trip'),
                   metadata={'path': str(path)})

    def validate_dataset(self):
        missing = set(KEY_COLUMNS) - set(self.runs.columns)
        if missing:
            raise ValueError("results are missing columns: {}".format(
                sorted(missing)))
        if self.runs.duplicated(KEY_COLUMNS).any():
            raise ValueError("each (node_count, mode, seed) may appear once")

    def __len__(self):
        return len(self.runs)

    @property
    def metric_names(self):
        return [c for c in self.runs.columns if c not in KEY_COLUMNS]

    def table(self, metrics=None):
        """Mean, min and max over seeds per ``(node_count, mode)``.

        Returns:
            pandas.DataFrame: Rows indexed by ``(node_count, mode)`` in
            density then mode order, columns ``(metric, statistic)``.
        """
        metrics = list(metrics) if metrics is not None else self.metric_names
        numeric = self.runs[KEY_COLUMNS + metrics].copy()
        numeric[metrics] = numeric[metrics].apply(pd.to_numeric,
                                                  errors='coerce')
        grouped = numeric.groupby(['node_count', 'mode'], sort=False)
        return grouped[metrics].agg(['mean', 'min', 'max'])

    def series(self, metric):
        """Mean of `metric` against node count, one column per mode."""
        means = self.table([metric])[(metric, 'mean')].unstack('mode')
        modes = [m for m in MODE_ORDER if m in means.columns]
        return means[modes].sort_index()

    def emit_plot_data(self, directory):
        """Write one tab separated series file per figure.

        Returns:
            list(str): Paths written, in :data:`SERIES_FILES` order.
        """
        os.makedirs(directory, exist_ok=True)
        paths = []
        for name, metric in SERIES_FILES.items():
            path = os.path.join(directory, name + '.tsv')
            self.series(metric).to_csv(path, sep='\t', na_rep='NA')
            paths.append(path)
        return paths

    def export_dataset(self, path):
        self.runs.to_csv(path, sep='\t', index=False, na_rep='NA')


def _format_value(value):
    if value is None:
        return 'NA'
    if isinstance(value, (bool, int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_results_record(path, result, summary):
    """Write the results record of one run.

    Header comment lines give the configuration, the attacker and monitor
    ids and every detection; the body is a long table
    ``node_count mode seed metric value``.

    Args:
        path (str): Output file.
        result (RunResult): The run.
        summary (dict): Metric name to value (None for undefined).
    """
    s = result.scenario
    with open(path, 'w') as f:
        f.write('# manetids results record\n')
        for line in s.to_config().splitlines():
            f.write('# config {}\n'.format(line))
        f.write('# attackers {}\n'.format(' '.join(map(str, result.attackers))))
        f.write('# monitors {}\n'.format(' '.join(map(str, result.monitors))))
        for t, monitor, subject in result.detections:
            f.write('# detection {} {} {}\n'.format(format_time(t), monitor,
                                                    subject))
        f.write('node_count\tmode\tseed\tmetric\tvalue\n')
        for metric, value in summary.items():
            f.write('{}\t{}\t{}\t{}\t{}\n'.format(s.node_count, s.mode.value,
                s.seed, metric, _format_value(value)))


def read_results_record(path):
    """Read a record written by :func:`write_results_record`.

    Returns:
        tuple: ``(header, values)`` where `header` holds ``scenario``
        (:class:`~manetids.scenario.Scenario`), ``attackers``, ``monitors``
        and ``detections`` (``(time string, monitor, subject)``), and
        `values` maps metric name to value (None when undefined).
    """
    config, attackers, monitors, detections = [], [], [], []
    with open(path) as f:
        for line in f:
            if not line.startswith('#'):
                continue
            words = line[1:].strip().split(' ', 1)
            rest = words[1] if len(words) > 1 else ''
            if words[0] == 'config':
                config.append(rest)
            elif words[0] == 'attackers':
                attackers = [int(w) for w in rest.split()]
            elif words[0] == 'monitors':
                monitors = [int(w) for w in rest.split()]
            elif words[0] == 'detection':
                t, monitor, subject = rest.split()
                detections.append((t, int(monitor), int(subject)))
    body = pd.read_csv(path, sep='\t', comment='#', dtype={'metric': str},
                       float_precision='round_trip')
    values = OrderedDict()
    for metric, value in zip(body['metric'], body['value']):
        values[metric] = None if pd.isna(value) else float(value)
    header = {'scenario': Scenario.from_config('\n'.join(config)),
              'attackers': attackers, 'monitors': monitors,
              'detections': detections}
    return header, values
