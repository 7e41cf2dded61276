import logging

import numpy as np
from django.test import SimpleTestCase

from config.log_filters import LargeArrayFilter
from hyperwalk.fock import ModeOccupation
from hyperwalk.interference import Statistics, full_distribution
from hyperwalk.unitary import build_hc_tensor


class LargeArrayFilterTests(SimpleTestCase):

    def _record(self, args):
        return logging.LogRecord("hyperwalk", logging.INFO, __file__, 1, "value %s", args, None)

    def test_large_array_collapsed(self):
        record = self._record((np.zeros((64, 64), dtype=complex),))
        self.assertTrue(LargeArrayFilter().filter(record))
        self.assertEqual(record.getMessage(), "value <complex128 array 64x64>")

    def test_small_array_untouched(self):
        small = np.arange(4)
        record = self._record((small,))
        LargeArrayFilter().filter(record)
        self.assertIs(record.args[0], small)

    def test_long_tuple_truncated(self):
        record = self._record((tuple(range(40)),))
        LargeArrayFilter().filter(record)
        self.assertIn("40 items", record.getMessage())

    def test_dict_args(self):
        record = logging.LogRecord("hyperwalk", logging.INFO, __file__, 1, "%(u)s", ({"u": np.ones(100)},), None)
        LargeArrayFilter().filter(record)
        self.assertEqual(record.getMessage(), "<float64 array 100>")

    def test_engine_log_arguments_reach_filter(self):
        initial = ModeOccupation((1,) + (0,) * 31)
        with self.assertLogs("hyperwalk.interference", level="INFO") as logs:
            list(full_distribution(build_hc_tensor(5), initial, Statistics.BOSON, workers=1))
        record = logs.records[0]
        LargeArrayFilter().filter(record)
        self.assertIn("32 items", record.getMessage())
