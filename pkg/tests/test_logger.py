"""
Tests smpleak/logger.py

Testing objective:
    Is there any data corruption?
    Are all the records logged properly, in order, across batches and reopenings?

Testing ideas:
    Write records of different shapes to a temporary file and read them back.
    Do lots of iterations with a batch size that does not divide the count.
"""
import logging
import os
import tempfile
import unittest

from smpleak import logger


class LoggerTest(unittest.TestCase):
    def setUp(self):
        handle, self.filename = tempfile.mkstemp(suffix='.log')
        os.close(handle)

    def tearDown(self):
        os.remove(self.filename)

    def test_records_round_trip(self):
        records = [{'stage': 'truncate', 'claimed': 20.0, 'measured': 17.5, 'passed': True},
                   {'stage': 'newman', 'detail': {'t': 89, 'restarts_used': 2}},
                   {'labels': ['00', [0, 'e']], 'value': None}]
        with logger.Logger(self.filename, mode='w') as log:
            for record in records:
                log.log(record)
            self.assertEqual(log.read_logs(), records)

    def test_batches_are_flushed_on_close(self):
        log = logger.Logger(self.filename, mode='w', batch_size=7)
        for i in range(100):
            log.log({'i': i})
        log.close()
        reader = logger.Logger(self.filename, mode='a')
        self.assertEqual([r['i'] for r in reader.read_logs()], list(range(100)))
        reader.close()

    def test_append_mode_keeps_earlier_records(self):
        with logger.Logger(self.filename, mode='w') as log:
            log.log({'run': 1})
        with logger.Logger(self.filename, mode='a') as log:
            log.log({'run': 2})
            self.assertEqual(log.read_logs(), [{'run': 1}, {'run': 2}])

    def test_configure_installs_one_handler(self):
        root = logger.configure('info')
        logger.configure('debug')
        self.assertEqual(len(root.handlers), 1)
        self.assertEqual(root.level, logging.DEBUG)
        logger.configure('WARNING')


if __name__ == '__main__':
    unittest.main()
