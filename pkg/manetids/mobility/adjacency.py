import numpy as np
from scipy.spatial.distance import pdist, squareform


class Adjacency(object):
    """Disk-graph neighbor sets at one instant.

    Node ids are row indices of the position array the adjacency was built
    from. The relation is symmetric and irreflexive.

    Attributes:
        matrix (numpy.ndarray): Boolean ``(n, n)`` connectivity matrix.
    """

    def __init__(self, matrix):
        self.matrix = np.asarray(matrix, dtype=bool)
        self._neighbors = [tuple(int(j) for j in np.flatnonzero(row))
                           for row in self.matrix]

    def __len__(self):
        return self.matrix.shape[0]

    def neighbors(self, node):
        """Neighbors of `node` in ascending id order."""
        return self._neighbors[node]

    def are_neighbors(self, i, j):
        return bool(self.matrix[i, j])

    def degree(self, node):
        return len(self._neighbors[node])

    def __eq__(self, other):
        return (isinstance(other, Adjacency)
                and np.array_equal(self.matrix, other.matrix))


def compute_adjacency(positions, transmission_range, active=None):
    """Build the symmetric disk graph.

    Two distinct nodes are neighbors iff their distance is at most
    `transmission_range` (a distance exactly equal to the range connects).

    Args:
        positions (array-like): ``(n, 2)`` positions in meters.
        transmission_range (float): Radio range in meters.
        active (array-like(bool), optional): Nodes that have joined the
            network. Inactive nodes have no neighbors.

    Returns:
        Adjacency: Neighbor sets.
    """
    positions = np.asarray(positions, dtype=np.float64).reshape(-1, 2)
    n = positions.shape[0]
    if n < 2:
        return Adjacency(np.zeros((n, n), dtype=bool))

    within = squareform(pdist(positions)) <= transmission_range
    np.fill_diagonal(within, False)
    if active is not None:
        active = np.asarray(active, dtype=bool)
        within &= np.outer(active, active)
    return Adjacency(within)
