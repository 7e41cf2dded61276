"""
Logging filters that keep numerical payloads out of log output.

Unitaries reach 4096x4096 and final-state sweeps carry thousands of
occupation lists; a stray ``logger.debug("%s", matrix)`` must not flood
the console. Applied via the LOGGING configuration in settings.py.
"""
import logging

import numpy as np


class LargeArrayFilter(logging.Filter):
    """Collapse numpy arrays and long sequences in log records to summaries."""

    MAX_ITEMS = 16

    def filter(self, record: logging.LogRecord) -> bool:
        if record.args:
            if isinstance(record.args, dict):
                record.args = {k: self._collapse(v) for k, v in record.args.items()}
            elif isinstance(record.args, tuple):
                record.args = tuple(self._collapse(a) for a in record.args)
        return True

    def _collapse(self, value):
        if isinstance(value, np.ndarray):
            if value.size <= self.MAX_ITEMS:
                return value
            shape = "x".join(str(s) for s in value.shape)
            return f"<{value.dtype} array {shape}>"
        if isinstance(value, (list, tuple)) and len(value) > self.MAX_ITEMS:
            head = ",".join(str(v) for v in value[: self.MAX_ITEMS])
            return f"({head},... {len(value)} items)"
        return value
