import logging
import sys
from typing import Any, Dict, Optional
import json
from datetime import datetime

_HANDLER_NAME = "etakit-json"


class JSONFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        log_data: Dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "level": record.levelname,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno
        }

        if hasattr(record, "command"):
            log_data["command"] = record.command

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_data)


def setup_logging(level: Optional[str] = None) -> None:
    """Install the JSON handler on the root logger (once per process).

    Logs go to stderr so that command output on stdout stays machine readable.
    """
    from etakit.core.config import get_settings

    root_logger = logging.getLogger()
    root_logger.setLevel((level or get_settings().ETAKIT_LOG_LEVEL).upper())

    if any(h.get_name() == _HANDLER_NAME for h in root_logger.handlers):
        return

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.set_name(_HANDLER_NAME)
    console_handler.setFormatter(JSONFormatter())
    root_logger.addHandler(console_handler)

    # Set levels for third-party loggers
    logging.getLogger("sympy").setLevel(logging.WARNING)
