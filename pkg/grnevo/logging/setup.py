"""Handlers for the ``grnevo`` logger tree."""

import logging
from pathlib import Path
from typing import List, Optional

LOG_FILE = "grnevo.log"
FILE_FORMAT = "%(asctime)s [%(levelname)s] %(processName)s %(name)s: %(message)s"
CONSOLE_FORMAT = "[%(levelname)s] %(name)s: %(message)s"


def _handlers(log_dir: Optional[Path], level: int) -> List[logging.Handler]:
    console = logging.StreamHandler()
    console.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    handlers: List[logging.Handler] = [console]
    if log_dir is not None:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        # trial workers share the file, so the process name goes in each line
        file_handler = logging.FileHandler(log_dir / LOG_FILE, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
        handlers.append(file_handler)
    for handler in handlers:
        handler.setLevel(level)
    return handlers


def configure_logging(log_dir: Optional[Path] = None, level: int = logging.INFO) -> logging.Logger:
    """Attach console (stderr) and optional file handlers to ``grnevo``.

    Python warnings, e.g. numpy overflow notices, are routed to the same
    handlers. Calling this again replaces the previous handlers.
    """
    handlers = _handlers(log_dir, level)
    logging.captureWarnings(True)
    for name in ("grnevo", "py.warnings"):
        target = logging.getLogger(name)
        for old in target.handlers:
            old.close()
        target.handlers.clear()
        target.setLevel(level)
        target.propagate = False
        for handler in handlers:
            target.addHandler(handler)
    return logging.getLogger("grnevo")
