import numpy as np
import pandas as pd

from manetids.datasets import Dataset
from manetids.engine.simulator import TICKS_PER_SECOND
from manetids.trace import MISSING, TRACE_COLUMNS, TRACE_KINDS


class TraceDataset(Dataset):
    """A parsed event trace.

    Attributes:
        events (pandas.DataFrame): One row per trace line with the string
            columns of :data:`~manetids.trace.TRACE_COLUMNS` plus an integer
            ``ticks`` column parsed from ``time``.
    """

    def __init__(self, events, metadata=None):
        """
        Args:
            events (pandas.DataFrame): Trace rows, columns as written by
                :class:`~manetids.trace.TraceWriter`.
            metadata (dict, optional): Where the trace came from.

        Raises:
            ValueError: Missing columns or unknown event kinds.
        """
        self.events = events.reset_index(drop=True)
        if 'ticks' not in self.events.columns:
            self.events['ticks'] = self.parse_time(self.events['time'])
        super(TraceDataset, self).__init__(metadata=metadata)

    @staticmethod
    def parse_time(times):
        """Exact tick values of ``seconds.micros`` strings."""
        if len(times) == 0:
            return pd.Series([], dtype=np.int64)
        parts = times.str.split('.', n=1, expand=True)
        return (parts[0].astype(np.int64) * TICKS_PER_SECOND
                + parts[1].astype(np.int64))

    @classmethod
    def from_file(cls, path):
        try:
            events = pd.read_csv(path, sep=' ', names=list(TRACE_COLUMNS),
                                 dtype=str, keep_default_na=False, header=None)
        except pd.errors.EmptyDataError:
            events = pd.DataFrame(columns=list(TRACE_COLUMNS), dtype=str)
        return cls(events, metadata={'path': str(path)})

    def validate_dataset(self):
        missing = set(TRACE_COLUMNS) - set(self.events.columns)
        if missing:
            raise ValueError("trace is missing columns: {}".format(
                sorted(missing)))
        unknown = set(self.events['kind']) - set(TRACE_KINDS)
        if unknown:
            raise ValueError("unknown trace kinds: {}".format(sorted(unknown)))
        if not self.events['ticks'].is_monotonic_increasing:
            raise ValueError("trace times must be non-decreasing")

    def __len__(self):
        return len(self.events)

    def of_kind(self, *kinds):
        return self.events[self.events['kind'].isin(kinds)]

    def packet_paths(self):
        """Nodes that transmitted each data packet, in order.

        Returns:
            dict: Packet label to the list of sending node ids.
        """
        tx = self.of_kind('tx')
        return {label: [int(n) for n in group['node']]
                for label, group in tx.groupby('packet', sort=False)}

    def detections(self):
        """``(ticks, ids_node, subject)`` rows of ``detect`` events."""
        rows = self.of_kind('detect')
        return [(int(t), int(n), int(p)) for t, n, p in
                zip(rows['ticks'], rows['node'], rows['peer'])]

    def attacker_drops(self):
        rows = self.of_kind('drop')
        return rows[rows['detail'] == 'attacker']

    def attacker_handoffs(self):
        """Every attacker drop joined with the handoff that caused it.

        Trace rows are compared by position, so a handoff and a blacklisting
        in the same tick are still ordered.

        Returns:
            pandas.DataFrame: One row per attacker drop with integer columns
            ``ticks`` (of the drop), ``attacker``, ``sender``,
            ``handed_ticks``, ``handed_row``, ``blacklisted_row`` (row at
            which `sender` blacklisted `attacker`, -1 if it never did) and
            ``detected_ticks`` (first detection of `attacker`, -1 if never),
            plus the string column ``packet``.
        """
        columns = ['ticks', 'attacker', 'sender', 'packet', 'handed_ticks',
                   'handed_row', 'blacklisted_row', 'detected_ticks']
        drops = self.attacker_drops()
        if drops.empty:
            return pd.DataFrame(columns=columns, dtype=np.int64)
        drops = drops[['ticks', 'node', 'peer', 'packet']].rename_axis(
            'drop_row').reset_index().rename(
                columns={'node': 'attacker', 'peer': 'sender'})
        tx = self.of_kind('tx')[['ticks', 'node', 'peer', 'packet']]\
            .rename_axis('handed_row').reset_index().rename(
                columns={'ticks': 'handed_ticks', 'node': 'sender',
                         'peer': 'attacker'})
        merged = drops.merge(tx, on=['sender', 'attacker', 'packet'])
        merged = merged[merged['handed_row'] < merged['drop_row']]
        latest = merged.sort_values('handed_row').drop_duplicates(
            'drop_row', keep='last')

        blk = self.of_kind('blk')[['node', 'peer']].rename_axis(
            'blacklisted_row').reset_index().rename(
                columns={'node': 'sender', 'peer': 'attacker'})
        blk = blk.drop_duplicates(['sender', 'attacker'])
        out = latest.merge(blk, on=['sender', 'attacker'], how='left')
        out['blacklisted_row'] = out['blacklisted_row'].fillna(-1)

        first_detection = {}
        for ticks, _, subject in self.detections():
            first_detection.setdefault(str(subject), ticks)
        out['detected_ticks'] = out['attacker'].map(first_detection)\
            .fillna(-1)
        out = out.sort_values('drop_row')
        for column in ('attacker', 'sender', 'blacklisted_row',
                       'detected_ticks'):
            out[column] = out[column].astype(np.int64)
        return out[columns].reset_index(drop=True)

    def unprevented_attacker_drops(self):
        """Attacker drops of packets handed off by a node that had already
        blacklisted the attacker. Empty whenever prevention works."""
        handoffs = self.attacker_handoffs()
        late = ((handoffs['blacklisted_row'] >= 0)
                & (handoffs['handed_row'] > handoffs['blacklisted_row']))
        return handoffs[late]

    def export_dataset(self, path):
        self.events[list(TRACE_COLUMNS)].replace('', MISSING).to_csv(
            path, sep=' ', header=False, index=False)
