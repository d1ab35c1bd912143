"""Multipath routing table.

A :class:`RouteEntry` keeps every known alternative toward one destination,
sorted so that the head is the minimum hop count path. All alternatives share
the entry's destination sequence number and no two of them share a next hop.

Loop freedom follows the advertised hop count rule: once a node has told its
neighbors it is `a` hops from the destination at some sequence number, it only
accepts routes through neighbors that advertised fewer than `a` hops at that
sequence number, and it drops alternatives longer than `a`. Advertised counts
strictly decrease along every chain of next hops, so no chain revisits a node.
"""
from dataclasses import dataclass, field


class NoPathError(LookupError):
    """Error raised when no usable path alternative remains."""


@dataclass
class PathAlternative:
    """One way to reach a destination.

    Attributes:
        next_hop (int): Neighbor to hand packets to.
        hop_count (int): Advertised number of links to the destination.
        learned_at (int): Tick at which this alternative was installed.
    """
    next_hop: int
    hop_count: int
    learned_at: int

    def sort_key(self):
        # equal hop counts: earliest learned first, then lowest node id
        return (self.hop_count, self.learned_at, self.next_hop)


@dataclass
class RouteEntry:
    """Routing state for one destination.

    Attributes:
        destination (int): Destination node id.
        dest_seq (int): Freshest destination sequence number known.
        paths (list(PathAlternative)): Alternatives sorted by
            :meth:`PathAlternative.sort_key`.
        valid (bool): Whether the entry may be used for forwarding.
        expires_at (int): Tick after which an unused entry is invalid.
        vouched_by (int): Node whose reply set the current `dest_seq`.
        advertised (int): Smallest hop count this node has advertised for
            `dest_seq`, None while it has advertised nothing.
    """
    destination: int
    dest_seq: int = 0
    paths: list = field(default_factory=list)
    valid: bool = False
    expires_at: int = 0
    vouched_by: int = None
    advertised: int = None

    @property
    def head(self):
        return self.paths[0] if self.paths else None

    @property
    def next_hops(self):
        return [p.next_hop for p in self.paths]

    def offer(self, next_hop, hop_count, dest_seq, now, lifetime, max_paths=4,
              vouched_by=None):
        """Merge a newly advertised path.

        A newer `dest_seq` replaces every alternative. An equal `dest_seq`
        adds the path as an alternative (or shortens the existing alternative
        through the same next hop). An older `dest_seq` is ignored.

        Returns:
            bool: Whether the entry changed.
        """
        if hop_count < 1:
            raise ValueError("hop_count must be at least 1, got {}".format(
                hop_count))
        if dest_seq < self.dest_seq:
            return False

        alternative = PathAlternative(next_hop, hop_count, now)
        if dest_seq > self.dest_seq:
            self.advertised = None
        if dest_seq > self.dest_seq or not self.paths:
            self.dest_seq = dest_seq
            self.paths = [alternative]
            self.vouched_by = vouched_by
        else:
            existing = self._path_via(next_hop)
            if existing is not None:
                if hop_count >= existing.hop_count:
                    self._refresh(now, lifetime)
                    return False
                existing.hop_count = hop_count
            elif len(self.paths) < max_paths:
                self.paths.append(alternative)
            elif hop_count < self.paths[-1].hop_count:
                self.paths[-1] = alternative
            else:
                return False
            self.paths.sort(key=PathAlternative.sort_key)

        self.valid = True
        self._refresh(now, lifetime)
        return True

    def admits(self, advertised_hops, dest_seq):
        """Whether a neighbor advertising `advertised_hops` links at
        `dest_seq` may become a next hop without risking a loop."""
        if dest_seq != self.dest_seq:
            return dest_seq > self.dest_seq
        return self.advertised is None or advertised_hops < self.advertised

    def advertise(self, hop_count, dest_seq):
        """Note that this node told its neighbors it is `hop_count` links away
        at `dest_seq`. Alternatives longer than the smallest advertised count
        are dropped.

        Returns:
            list(PathAlternative): The dropped alternatives.
        """
        if dest_seq != self.dest_seq:
            return []
        if self.advertised is None or hop_count < self.advertised:
            self.advertised = hop_count
        dropped = [p for p in self.paths if p.hop_count > self.advertised]
        if dropped:
            self.paths = [p for p in self.paths
                          if p.hop_count <= self.advertised]
            self.valid = self.valid and bool(self.paths)
        return dropped

    def remove_next_hop(self, next_hop):
        """Drop the alternative through `next_hop`.

        Returns:
            bool: Whether an alternative was removed.
        """
        before = len(self.paths)
        self.paths = [p for p in self.paths if p.next_hop != next_hop]
        if not self.paths:
            self.valid = False
        return len(self.paths) != before

    def invalidate(self):
        self.paths = []
        self.valid = False

    def forget(self):
        """Invalidate and drop the sequence number.

        Used when the node that vouched for `dest_seq` turns out to be an
        attacker: its inflated number would otherwise outrank every honest
        reply. This is the only way `dest_seq` ever decreases.
        """
        self.invalidate()
        self.dest_seq = 0
        self.vouched_by = None
        self.advertised = None

    def touch(self, now, lifetime):
        self._refresh(now, lifetime)

    def _refresh(self, now, lifetime):
        self.expires_at = max(self.expires_at, now + lifetime)

    def _path_via(self, next_hop):
        for p in self.paths:
            if p.next_hop == next_hop:
                return p
        return None


class RoutingTable(object):
    """Route entries of one node keyed by destination."""

    def __init__(self):
        self._entries = {}

    def __contains__(self, destination):
        return destination in self._entries

    def __iter__(self):
        return iter(list(self._entries.values()))

    def __len__(self):
        return len(self._entries)

    def get(self, destination):
        return self._entries.get(destination)

    def entry(self, destination):
        """Entry for `destination`, created empty if missing."""
        entry = self._entries.get(destination)
        if entry is None:
            entry = self._entries[destination] = RouteEntry(destination)
        return entry

    def replace(self, entry):
        self._entries[entry.destination] = entry

    def valid_entry(self, destination, now):
        """The entry for `destination` if it is usable at `now`, else None.

        Entries past their expiry are invalidated here.
        """
        entry = self._entries.get(destination)
        if entry is None or not entry.valid:
            return None
        if now > entry.expires_at:
            entry.invalidate()
            return None
        return entry

    def entries_via(self, next_hop):
        return [e for e in self._entries.values() if next_hop in e.next_hops]


def select_path(entry, blacklist=()):
    """Pick the minimum hop count alternative whose next hop is usable.

    Args:
        entry (RouteEntry): A valid entry.
        blacklist (container): Node ids that must not be used as next hop.

    Returns:
        PathAlternative: The first non-blacklisted alternative in sort order
        (hop count, then earliest learned, then lowest node id).

    Raises:
        NoPathError: Entry is invalid or every alternative is blacklisted.
    """
    if entry is None or not entry.valid:
        raise NoPathError("no valid route entry")
    for path in entry.paths:
        if path.next_hop not in blacklist:
            return path
    raise NoPathError("every path to {} is blacklisted".format(
        entry.destination))


@dataclass
class FloodRecord:
    best_hop_count: int
    expires_at: int
    replied_via: set = field(default_factory=set)
    reply_seq: int = None


class RreqSeenCache(object):
    """Flood duplicate suppression keyed by ``(origin, broadcast_id)``."""

    def __init__(self, lifetime):
        self.lifetime = lifetime
        self._records = {}

    def __len__(self):
        return len(self._records)

    def lookup(self, key, now):
        record = self._records.get(key)
        if record is not None and now > record.expires_at:
            del self._records[key]
            return None
        return record

    def record(self, key, hop_count, now):
        record = FloodRecord(hop_count, now + self.lifetime)
        self._records[key] = record
        if len(self._records) > 4096:
            self._compact(now)
        return record

    def _compact(self, now):
        self._records = {k: r for k, r in self._records.items()
                         if r.expires_at >= now}
