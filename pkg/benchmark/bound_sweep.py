"""
Time the optimized leakage bound over the default sweep of n.

The (delta1, delta2) grid dominates: every n evaluates GRID_SIZE^2 points before the
coordinate refinement. Compare a coarse and the default grid, and check the optimum
barely moves.

Running this benchmark:
    python -m benchmark.bound_sweep
"""
from benchmark.utils import timeit
from smpleak import config as conf
from smpleak import logger
from smpleak.bounds import QuantumModel, bound_curve
from smpleak.utils import log_spaced


class BoundSweepBench:
    def __init__(self):
        settings = conf.config()
        self.ns = log_spaced(settings.N_MIN, settings.N_MAX, settings.STEPS)
        self.epsilon = settings.EPSILON
        self.model = QuantumModel.from_config(settings)

    @timeit
    def sweep(self, grid_size):
        return bound_curve(self.ns, self.epsilon, self.model, grid_size=grid_size)


if __name__ == '__main__':
    log = logger.configure('INFO')
    bench = BoundSweepBench()
    times = {}
    coarse = bench.sweep(20, log_time=times, log_name='GRID_20')
    fine = bench.sweep(200, log_time=times, log_name='GRID_200')
    drift = max(abs(a - b) for a, b in zip(coarse.column('il_lower'), fine.column('il_lower')))
    log.info("sweep times (ms): %s, largest change of the optimum: %.3g bits", times, drift)
