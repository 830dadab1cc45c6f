from grnevo.logging.run_events import RunEvent, RunEventLog, RunEventType
from grnevo.logging.setup import configure_logging

__all__ = ["RunEvent", "RunEventLog", "RunEventType", "configure_logging"]
