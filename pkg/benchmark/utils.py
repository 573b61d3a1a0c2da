import functools
import logging
import time

log = logging.getLogger('smpleak.benchmark')


def timeit(method):
    """
    Time a function or method in milliseconds.

    The wrapped callable takes three extra keywords:

    :param log_time: dict to store the time in instead of logging it
    :param log_name: key under which the time is stored (method name in capitals by default)
    :param repeat: run the call this many times and keep the fastest (1 by default)
    :return: whatever the method returns on its last run
    """

    @functools.wraps(method)
    def timed(*args, **kwargs):
        log_time = kwargs.pop('log_time', None)
        name = kwargs.pop('log_name', method.__name__.upper())
        repeat = max(1, int(kwargs.pop('repeat', 1)))
        best = float('inf')
        for _ in range(repeat):
            start = time.perf_counter()
            result = method(*args, **kwargs)
            best = min(best, (time.perf_counter() - start) * 1000.0)

        if log_time is not None:
            log_time[name] = round(best, 3)
        else:
            log.info('%s: %.2f ms (best of %d)', name, best, repeat)
        return result

    return timed
