"""
Logging for smpleak.

Diagnostics go through the standard logging package, one logger per module.
Run records (one per transform stage or verified identity) go through Logger, a
batched append-only writer whose file can be read back to replay a run.
"""
from collections import deque
import json
import logging

FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def configure(level='WARNING'):
    """
    Install a single stream handler on the package logger.

    :param level: logging level name or number
    :return: the package logger
    """
    root = logging.getLogger('smpleak')
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.WARNING)
    root.setLevel(level)
    if not root.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(FORMAT))
        root.addHandler(handler)
    return root


class Logger:
    """
    Implements a batched run-record logger
    """

    def __init__(self, filename='smpleak.log', mode='a', batch_size=1):
        """
        Initializes Logger object:

        :param filename: name of the file in which records are written, one JSON object per line.
        :param batch_size: Number of records to accumulate before they are written.
        """
        self.filename = filename
        self.mode = mode
        self.batch_size = batch_size
        self.logs = deque()
        self.file = open(file=filename, mode=mode, encoding='utf-8')

    def log(self, record):
        """
        Queue a record for writing.

        :param record: JSON-serializable mapping, for instance
            {"stage": "truncate", "claimed": 20.0, "measured": 17.0, "passed": true}
        :returns: None
        """
        self.logs.append(json.dumps(record, sort_keys=True))
        if len(self.logs) >= self.batch_size:
            self.flush()

    def flush(self):
        """
        Writes every queued record to the disk.
        """
        n = len(self.logs)
        for i in range(n):
            self.file.write(self.logs.popleft() + '\n')
        self.file.flush()

    def close(self):
        """
        Close the logger. Queued records are written first.
        """
        self.flush()
        self.file.close()

    def read_logs(self):
        """
        Reads every record written so far.
        """
        self.flush()
        records = []
        with open(self.filename, mode='r', encoding='utf-8') as file:
            for line in file:
                line = line.strip()
                if line:
                    records.append(json.loads(line))
        return records

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
