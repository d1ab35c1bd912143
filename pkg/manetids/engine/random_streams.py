"""Named, seeded pseudo-random streams.

Every stream is a :class:`numpy.random.Generator` on a ``PCG64`` bit generator
seeded from ``SeedSequence(seed, spawn_key=(stream_index, *substream))``. The
stream index comes from the fixed order of :data:`STREAM_IDS`, never from
``hash()``, so sequences are identical across runs and platforms.
"""
import numpy as np

STREAM_IDS = ('mobility', 'traffic', 'topology', 'jitter')


class RngStream(object):
    """One independent random stream.

    Args:
        seed (int): Scenario seed.
        stream_id (str): One of :data:`STREAM_IDS`.
        *substream (int): Optional further split, e.g. a node id for
            per-node mobility.
    """

    def __init__(self, seed, stream_id, *substream):
        if stream_id not in STREAM_IDS:
            raise ValueError("unknown stream_id {!r}; expected one of "
                             "{}".format(stream_id, STREAM_IDS))
        if seed < 0:
            raise ValueError("seed must be non-negative, got {}".format(seed))
        self.seed = int(seed)
        self.stream_id = stream_id
        self.substream = tuple(int(s) for s in substream)
        spawn_key = (STREAM_IDS.index(stream_id),) + self.substream
        self.generator = np.random.Generator(np.random.PCG64(
            np.random.SeedSequence(entropy=self.seed, spawn_key=spawn_key)))

    def uniform(self, low, high):
        return float(self.generator.uniform(low, high))

    def integers(self, low, high):
        """Uniform integer in ``[low, high]`` (inclusive)."""
        return int(self.generator.integers(low, high, endpoint=True))

    def permutation(self, items):
        items = list(items)
        return [items[i] for i in self.generator.permutation(len(items))]

    def __repr__(self):
        return 'RngStream(seed={}, stream_id={!r}, substream={})'.format(
            self.seed, self.stream_id, self.substream)
