from manetids.detectors.audit import (AuditLedger, AuditRecord, AuditVerdict,
    Blacklist, BlacklistEntry, Verdict, filter_paths)
from manetids.detectors.ids_monitor import IdsMonitor
