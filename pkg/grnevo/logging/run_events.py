"""
Structured run event log.

Notable things that happen during a run (a selection fallback, a new target,
a failed trial) are appended as JSON lines so they can be audited after the
fact without parsing the text log.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional


class RunEventType(Enum):
    """Types of run events."""
    TARGET_INTRODUCED = "target_introduced"
    PROPORTIONAL_FALLBACK = "proportional_fallback"
    TRIAL_FAILED = "trial_failed"
    TRIAL_COMPLETED = "trial_completed"
    CONFIG_REJECTED = "config_rejected"


@dataclass
class RunEvent:
    """A single run event."""
    event_type: RunEventType
    message: str
    generation: Optional[int] = None
    trial_id: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "event_type": self.event_type.value,
            "message": self.message,
            "generation": self.generation,
            "trial_id": self.trial_id,
            "details": self.details,
        }


class RunEventLog:
    """Collects run events in memory and optionally mirrors them to ``events.jsonl``.

    No wall-clock timestamps are stored so event files of re-runs compare equal.
    """

    def __init__(self, log_dir: Optional[Path] = None, trial_id: Optional[str] = None):
        self.trial_id = trial_id
        self.events: List[RunEvent] = []
        self.counts: Dict[str, int] = {event_type.value: 0 for event_type in RunEventType}
        self.logger = logging.getLogger("grnevo.events")
        self.event_file: Optional[Path] = None
        if log_dir is not None:
            log_dir = Path(log_dir)
            log_dir.mkdir(parents=True, exist_ok=True)
            self.event_file = log_dir / "events.jsonl"
            self.event_file.write_text("", encoding="utf-8")

    def log(
        self,
        event_type: RunEventType,
        message: str,
        generation: Optional[int] = None,
        **details: Any,
    ) -> RunEvent:
        event = RunEvent(
            event_type=event_type,
            message=message,
            generation=generation,
            trial_id=self.trial_id,
            details=details,
        )
        self.events.append(event)
        self.counts[event_type.value] += 1

        level = logging.WARNING if event_type in (
            RunEventType.PROPORTIONAL_FALLBACK,
            RunEventType.TRIAL_FAILED,
            RunEventType.CONFIG_REJECTED,
        ) else logging.INFO
        self.logger.log(level, "%s: %s", event_type.value, message)

        if self.event_file is not None:
            with self.event_file.open("a", encoding="utf-8") as f:
                f.write(json.dumps(event.to_dict(), sort_keys=True) + "\n")
        return event

    def count(self, event_type: RunEventType) -> int:
        return self.counts[event_type.value]
