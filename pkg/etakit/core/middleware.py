from contextlib import contextmanager
from typing import Dict, Iterator
import time
import logging

logger = logging.getLogger(__name__)


@contextmanager
def timed_command(command: str) -> Iterator[Dict[str, float]]:
    """Log duration and outcome of one CLI command.

    Yields a dict whose ``wall_time_ms`` is filled in when the block exits.
    """
    timing: Dict[str, float] = {"wall_time_ms": 0.0}
    start_time = time.time()
    status = "ok"
    try:
        yield timing
    except Exception:
        status = "error"
        raise
    finally:
        process_time = (time.time() - start_time) * 1000
        timing["wall_time_ms"] = round(process_time, 2)
        formatted_process_time = '{0:.2f}'.format(process_time)

        logger.info(
            f"command={command} "
            f"status={status} "
            f"duration={formatted_process_time}ms",
            extra={"command": command}
        )
