"""Forwarding audit state kept by IDS monitors and the blacklist kept by every
node."""
from dataclasses import dataclass, replace
from enum import Enum


class Verdict(str, Enum):
    CONSISTENT = 'consistent'
    MISMATCH = 'mismatch'


@dataclass(frozen=True)
class AuditVerdict:
    """Outcome of auditing one next hop.

    Attributes:
        subject (int): Audited node.
        verdict (Verdict): Mismatch iff `handed_off` reached the threshold and
            nothing was confirmed.
        handed_off (int): Resolved handoffs to `subject`.
        confirmed (int): Handoffs `subject` was seen to forward.
    """
    subject: int
    verdict: Verdict
    handed_off: int
    confirmed: int

    @property
    def evidence(self):
        return (self.handed_off, self.confirmed)


@dataclass
class AuditRecord:
    """Counts for one ``(sender, next_hop, destination)`` key."""
    handed_off: int = 0
    confirmed: int = 0
    pending: int = 0

    @property
    def resolved(self):
        return self.handed_off - self.pending


@dataclass
class PendingHandoff:
    key: tuple
    expires_at: int


class AuditLedger(object):
    """Data handoffs overheard by one monitor.

    A record exists only for hops over which data was actually handed off.
    Each handoff stays pending until the next hop is overheard sending the
    same packet (confirmed) or the confirmation window passes (unconfirmed).
    """

    def __init__(self):
        self.records = {}
        # (packet uid, next hop) -> PendingHandoff
        self._pending = {}

    def __len__(self):
        return len(self.records)

    def __getitem__(self, key):
        return self.records[key]

    def get(self, sender, next_hop, destination):
        return self.records.get((sender, next_hop, destination))

    def hand_off(self, uid, sender, next_hop, destination, expires_at):
        key = (sender, next_hop, destination)
        record = self.records.setdefault(key, AuditRecord())
        record.handed_off += 1
        if (uid, next_hop) in self._pending:
            self._resolve((uid, next_hop), confirmed=False)
        record.pending += 1
        self._pending[(uid, next_hop)] = PendingHandoff(key, expires_at)
        return record

    def hand_off_confirmed(self, sender, next_hop, destination):
        """Record a handoff that needs no confirmation (delivery to the
        packet's destination)."""
        record = self.records.setdefault((sender, next_hop, destination),
                                         AuditRecord())
        record.handed_off += 1
        record.confirmed += 1
        return record

    def confirm(self, uid, next_hop):
        """The node `next_hop` was overheard sending packet `uid`."""
        return self._resolve((uid, next_hop), confirmed=True)

    def confirm_destination(self, next_hop, destination):
        """Confirm every pending handoff to `next_hop` bound for
        `destination`. Returns the number confirmed."""
        keys = [k for k, p in self._pending.items()
                if k[1] == next_hop and p.key[2] == destination]
        for k in keys:
            self._resolve(k, confirmed=True)
        return len(keys)

    def expire(self, now):
        """Resolve handoffs whose confirmation window ended before `now` as
        unconfirmed."""
        keys = [k for k, p in self._pending.items() if p.expires_at < now]
        for k in keys:
            self._resolve(k, confirmed=False)
        return len(keys)

    def _resolve(self, pending_key, confirmed):
        pending = self._pending.pop(pending_key, None)
        if pending is None:
            return False
        record = self.records[pending.key]
        record.pending -= 1
        if confirmed:
            record.confirmed += 1
        return True

    def subjects(self):
        return sorted({k[1] for k in self.records})

    def totals(self, subject):
        """Resolved handoffs and confirmations of `subject` over every
        sender and destination."""
        handed = confirmed = 0
        for (_, next_hop, _), record in self.records.items():
            if next_hop == subject:
                handed += record.resolved
                confirmed += record.confirmed
        return handed, confirmed


@dataclass(frozen=True)
class BlacklistEntry:
    node: int
    detected_at: int
    detector: int = None


class Blacklist(object):
    """Append-only set of detected attackers.

    Examples:
        >>> bl = Blacklist()
        >>> bl.add(13, 2000000, detector=50)
        True
        >>> bl.add(13, 3000000)
        False
        >>> 13 in bl
        True
    """

    def __init__(self):
        self._entries = {}
        self._ids = frozenset()

    def add(self, node, detected_at, detector=None):
        """Returns:
            bool: False if `node` was already present (nothing changes).
        """
        if node in self._entries:
            return False
        self._entries[node] = BlacklistEntry(node, detected_at, detector)
        self._ids = self._ids | {node}
        return True

    @property
    def ids(self):
        return self._ids

    def entry(self, node):
        return self._entries[node]

    def __contains__(self, node):
        return node in self._entries

    def __iter__(self):
        return iter(sorted(self._entries))

    def __len__(self):
        return len(self._entries)

    def __bool__(self):
        return bool(self._entries)


def filter_paths(entry, blacklist):
    """Remove alternatives whose next hop is blacklisted.

    The surviving head is the new minimum, never shorter than the old one
    since alternatives stay sorted.

    Args:
        entry (RouteEntry): Entry to filter, left untouched.
        blacklist (container): Blacklisted node ids.

    Returns:
        RouteEntry: `entry` itself when nothing is blacklisted, otherwise a
        filtered copy (invalid if no alternative survives).
    """
    kept = [p for p in entry.paths if p.next_hop not in blacklist]
    if len(kept) == len(entry.paths):
        return entry
    return replace(entry, paths=[replace(p) for p in kept],
                   valid=entry.valid and bool(kept))
