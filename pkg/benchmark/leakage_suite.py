"""
Time exact leakage evaluation on random protocols of growing alphabet size.

Running this benchmark:
    python -m benchmark.leakage_suite
"""
import numpy as np

from benchmark.utils import timeit
from smpleak import logger
from smpleak.fixtures import random_prior, random_protocol
from smpleak.leakage import il_worst, leakage_report
from smpleak.smp import Model


class LeakageBench:
    def __init__(self, seed=0, count=20):
        self.rng = np.random.default_rng(seed)
        self.count = count

    @timeit
    def distributional(self, max_size):
        worst = 0.0
        for _ in range(self.count):
            p = random_protocol(self.rng, Model.SHARED, max_size)
            worst = max(worst, leakage_report(p, random_prior(self.rng, p)).identity_residual)
        return worst

    @timeit
    def worst_case(self, max_size):
        for _ in range(self.count):
            il_worst(random_protocol(self.rng, Model.SHARED, max_size))


if __name__ == '__main__':
    log = logger.configure('INFO')
    bench = LeakageBench()
    times = {}
    for size in (2, 4, 6):
        residual = bench.distributional(size, log_time=times, log_name='DIST_{}'.format(size))
        bench.worst_case(size, log_time=times, log_name='WORST_{}'.format(size))
        log.info("max_size %d: largest IC - IL - cross term residual %.3g", size, residual)
    log.info("times (ms): %s", times)
