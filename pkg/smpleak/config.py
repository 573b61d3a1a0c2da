import os

from smpleak.errors import ValidationError

ENV_PREFIX = 'SMP_'

# process-wide overrides, applied after the environment (set by the command line)
_overrides = {}


def override(**values):
    """
    Override attributes for every config created from now on; None values are ignored.
    """
    _overrides.update({name: value for name, value in values.items() if value is not None})


def reset():
    _overrides.clear()


class config:
    def __init__(self, environ=None):
        """
        Defaults for every run. Any attribute can be overridden with an
        environment variable named SMP_<ATTRIBUTE>, e.g. SMP_EPSILON=0.05.

        :param environ: mapping to read overrides from (os.environ by default)
        """
        # Bound sweeps
        self.EPSILON = 0.01
        self.N_MIN = 1e4
        self.N_MAX = 1e12
        self.STEPS = 33
        self.GRID_SIZE = 200  # per axis of the (delta1, delta2) triangle
        self.REFINE_STEP = 1e-6

        # Quantum fingerprinting curve. Only MU and QIL_SCALE enter the default formula,
        # the experimental parameters are carried for external leakage tables.
        self.MU = 10.0
        self.QIL_SCALE = 1.0
        self.VISIBILITY = 0.98
        self.DARK_RATE = 0.11
        self.TRANSMISSIVITY = 0.3

        # Exact evaluation
        self.CELL_CAP = 10 ** 8
        self.TOLERANCE = 1e-9
        self.CAPACITY_TOL = 1e-9
        self.CAPACITY_MAX_ITER = 100000
        self.MAX_EQUALITY_BITS = 12

        # Channel simulator: stream length before falling back to a direct code
        self.STREAM_CAP = 2 ** 16
        self.STREAM_FLOOR = 1e-12

        # Derandomization searches
        self.SEED = 0
        self.RESTARTS = 1000

        # Output
        self.FORMAT = 'csv'
        self.SCHEMA_VERSION = 1
        self.LOG_LEVEL = 'WARNING'

        self._apply_overrides(os.environ if environ is None else environ)
        for name, value in _overrides.items():
            setattr(self, name, value)

    def _apply_overrides(self, environ):
        for name, default in list(vars(self).items()):
            if name.startswith('_'):
                continue
            raw = environ.get(ENV_PREFIX + name)
            if raw is None:
                continue
            try:
                if isinstance(default, bool):
                    value = raw.strip().lower() in ('1', 'true', 'yes')
                elif isinstance(default, int):
                    value = int(float(raw))
                elif isinstance(default, float):
                    value = float(raw)
                else:
                    value = raw
            except ValueError:
                raise ValidationError("{}{}: cannot parse {!r}".format(ENV_PREFIX, name, raw))
            setattr(self, name, value)

    def get_cell_cap(self):
        return self.CELL_CAP

    def get_tolerance(self):
        return self.TOLERANCE

    def as_dict(self):
        return {name: value for name, value in vars(self).items() if not name.startswith('_')}
