"""
Closed-form finite-size bounds for equality and the quantum comparison curve.

All logarithms are base 2. Lower bounds that come out negative carry no content;
public evaluators clamp them at 0 unless raw=True is asked for.
"""
from dataclasses import dataclass
import logging
import math

import numpy as np

from smpleak import config as conf
from smpleak.errors import ValidationError

log = logging.getLogger(__name__)

LOG2E = 1.0 / math.log(2.0)
TRIANGLE_EPS = 1e-12


def g1(x):
    """
    Additive overhead of one-shot channel simulation: 2 log(x + 1) + 10.
    """
    if np.any(np.asarray(x) <= -1):
        raise ValidationError("g1 needs x > -1")
    return 2.0 * np.log2(np.asarray(x, dtype=float) + 1.0) + 10.0


def g2(x, y, z):
    """
    Overhead of replacing shared by private randomness: 2 log(2(x + y) / (z^2 log e) + 1) + 2.
    """
    if np.any(np.asarray(z) <= 0):
        raise ValidationError("g2 needs z > 0")
    x, y, z = (np.asarray(v, dtype=float) for v in (x, y, z))
    return 2.0 * np.log2(2.0 * (x + y) / (z ** 2 * LOG2E) + 1.0) + 2.0


def g3(x):
    """
    Squared advantage term 2 (1/2 - x)^2 log e, for an error x in [0, 1/2].
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(x > 0.5):
        raise ValidationError("g3 needs 0 <= x <= 1/2")
    return 2.0 * (0.5 - x) ** 2 * LOG2E


def _scalar(value):
    return float(value) if np.ndim(value) == 0 else value


def _check_epsilon(epsilon):
    if not 0.0 <= epsilon < 0.5:
        raise ValidationError("epsilon must lie in [0, 1/2), got {!r}".format(epsilon), field='epsilon')


def cc_priv_lower_eq(n, epsilon, raw=False):
    """
    Private coin communication lower bound for equality:
    2 sqrt(g3(eps) n) - g3(eps) - 6.

    :param n: input length in bits (scalar or array)
    :param raw: keep negative values instead of clamping them at 0
    """
    _check_epsilon(epsilon)
    g = g3(epsilon)
    value = 2.0 * np.sqrt(g * np.asarray(n, dtype=float)) - g - 6.0
    return _scalar(value if raw else np.maximum(value, 0.0))


def bk_message_lengths(n, epsilon):
    """
    The split (c_A, c_B) optimizing the deterministic-Alice argument. c_A + c_B is the
    equality lower bound before clamping.
    """
    g = float(g3(epsilon))
    root = math.sqrt(g * n)
    return root - 2.0, root - g - 4.0


def babai_kimmel_reference(n):
    """
    Older reference bound 0.1 sqrt(n) for equality at error 0.01, for comparison only.
    """
    return _scalar(0.1 * np.sqrt(np.asarray(n, dtype=float)))


class EqualityBounds:
    """
    Communication bounds for EQ_n: the lower bound above and the trivial upper bound 2n.
    """

    def __init__(self, n):
        self.n = n
        self.n_a = n
        self.n_b = n

    def lower(self, epsilon, raw=True):
        return cc_priv_lower_eq(self.n, epsilon, raw=raw)

    def upper(self, epsilon):
        return 2.0 * self.n


def _check_deltas(epsilon, delta1, delta2):
    _check_epsilon(epsilon)
    if delta1 <= 0 or delta2 <= 0 or epsilon + delta1 + delta2 >= 0.5:
        raise ValidationError("need delta1, delta2 > 0 and epsilon + delta1 + delta2 < 1/2")


def ccpriv_newman_overhead(n_a, n_b, delta):
    return float(g2(n_a, n_b, delta))


def cc_sh_from_ccav(cc_av, delta):
    """
    Bounded length cost after truncating at 1/delta times the mean.
    """
    if delta <= 0:
        raise ValidationError("delta must be positive")
    return cc_av / delta + 4.0


def cc_av_from_ic(ic):
    """
    Average length cost after compressing both channels.
    """
    return ic + 2.0 * float(g1(ic))


def il_lower_from_ccpriv(bounds, n_a, n_b, epsilon, delta1, delta2, raw=False):
    """
    Leakage lower bound from any communication lower bound:
    delta1 (CC_lb(eps + delta1 + delta2) - g2(n_A, n_B, delta2) - 4) - 2 g1(CC_ub(eps)).

    :param bounds: object with lower(error, raw=True) and upper(error), e.g. EqualityBounds
    """
    _check_deltas(epsilon, delta1, delta2)
    cc_lower = bounds.lower(epsilon + delta1 + delta2, raw=True)
    cc_upper = bounds.upper(epsilon)
    value = delta1 * (cc_lower - g2(n_a, n_b, delta2) - 4.0) - 2.0 * g1(cc_upper)
    return float(value if raw else max(value, 0.0))


def _il_bound(n, epsilon, delta1, delta2):
    g = g3(epsilon + delta1 + delta2)
    return (delta1 * (2.0 * np.sqrt(g * n) - g - g2(n, n, delta2) - 10.0)
            - 2.0 * g1(2.0 * n))


def il_lower_eq(n, epsilon, delta1, delta2, raw=False):
    """
    Leakage lower bound for equality at fixed (delta1, delta2).
    """
    _check_deltas(epsilon, delta1, delta2)
    value = float(_il_bound(float(n), epsilon, delta1, delta2))
    return value if raw else max(value, 0.0)


def il_lower_eq_opt(n, epsilon, grid_size=None, refine_step=None, raw=False):
    """
    Best leakage lower bound for equality over the triangle delta1, delta2 > 0,
    epsilon + delta1 + delta2 < 1/2: grid search, then coordinate refinement.

    :return: (value, delta1, delta2); (0, 0, 0) when the triangle is empty
    """
    settings = conf.config()
    grid_size = settings.GRID_SIZE if grid_size is None else grid_size
    refine_step = settings.REFINE_STEP if refine_step is None else refine_step
    _check_epsilon(epsilon)
    side = 0.5 - epsilon
    if side <= TRIANGLE_EPS:
        return 0.0, 0.0, 0.0
    n = float(n)

    ticks = side * np.arange(1, grid_size + 1) / (grid_size + 1)
    d1, d2 = np.meshgrid(ticks, ticks, indexing='ij')
    inside = d1 + d2 < side - TRIANGLE_EPS
    values = np.full(d1.shape, -np.inf)
    values[inside] = _il_bound(n, epsilon, d1[inside], d2[inside])
    i, j = np.unravel_index(np.argmax(values), values.shape)
    best, point = float(values[i, j]), [float(d1[i, j]), float(d2[i, j])]

    def feasible(a, b):
        return a > 0 and b > 0 and a + b < side - TRIANGLE_EPS

    step = side / (grid_size + 1)
    while step >= refine_step:
        moved = False
        for axis in (0, 1):
            for sign in (1.0, -1.0):
                trial = list(point)
                trial[axis] += sign * step
                if not feasible(*trial):
                    continue
                value = float(_il_bound(n, epsilon, trial[0], trial[1]))
                if value > best:
                    best, point, moved = value, trial, True
        if not moved:
            step /= 2.0
    log.debug("optimum at n=%g: %.12g (delta1=%.6g, delta2=%.6g)", n, best, point[0], point[1])
    return (best if raw else max(best, 0.0)), point[0], point[1]


@dataclass(frozen=True, eq=False)
class QuantumModel:
    """
    Leakage upper bound scale * mu(n) * log n of coherent-state fingerprinting.
    The optical parameters are carried for external tables; the default formula
    uses only mu and scale.
    """
    mu: float = 10.0
    visibility: float = 0.98
    dark_rate: float = 0.11
    transmissivity: float = 0.3
    scale: float = 1.0
    mu_fn: object = None

    def __post_init__(self):
        if self.mu < 0 or self.scale < 0:
            raise ValidationError("mu and scale must be nonnegative")
        if not 0 < self.visibility <= 1 or not 0 < self.transmissivity <= 1:
            raise ValidationError("visibility and transmissivity must lie in (0, 1]")
        if self.dark_rate < 0:
            raise ValidationError("dark count rate must be nonnegative")

    @classmethod
    def from_config(cls, settings=None, **overrides):
        settings = conf.config() if settings is None else settings
        values = dict(mu=settings.MU, visibility=settings.VISIBILITY, dark_rate=settings.DARK_RATE,
                      transmissivity=settings.TRANSMISSIVITY, scale=settings.QIL_SCALE)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def mu_at(self, n):
        return self.mu if self.mu_fn is None else self.mu_fn(n)


def qil_upper(model, n):
    return float(model.scale * model.mu_at(n) * math.log2(n))


@dataclass(frozen=True)
class BoundRow:
    n: float
    cc_lower: float
    il_lower: float
    delta1_opt: float
    delta2_opt: float
    qil_upper: float
    cc_raw: float
    il_raw: float

    def as_dict(self):
        return dict(vars(self))


@dataclass(frozen=True)
class BoundCurve:
    epsilon: float
    rows: tuple

    def column(self, name):
        return np.array([getattr(row, name) for row in self.rows])


def bound_row(n, epsilon, model, grid_size=None, refine_step=None):
    il_raw, delta1, delta2 = il_lower_eq_opt(n, epsilon, grid_size, refine_step, raw=True)
    cc_raw = cc_priv_lower_eq(n, epsilon, raw=True)
    return BoundRow(n=float(n), cc_lower=max(cc_raw, 0.0), il_lower=max(il_raw, 0.0),
                    delta1_opt=delta1, delta2_opt=delta2, qil_upper=qil_upper(model, n),
                    cc_raw=cc_raw, il_raw=il_raw)


def bound_curve(ns, epsilon, model, grid_size=None, refine_step=None):
    """
    One row per n, in the given order.
    """
    return BoundCurve(epsilon=epsilon,
                      rows=tuple(bound_row(n, epsilon, model, grid_size, refine_step) for n in ns))


@dataclass(frozen=True)
class CrossoverResult:
    crossover_n: float = None
    qil_at: float = None
    il_at: float = None

    def as_dict(self):
        if self.crossover_n is None:
            return {'crossover_n': None}
        return {'crossover_n': self.crossover_n, 'qil_at': self.qil_at, 'il_at': self.il_at}


def crossover(model, epsilon, ns, grid_size=None, refine_step=None):
    """
    Smallest n in ns (scanned in increasing order) where the quantum curve drops below
    the optimized classical leakage bound.
    """
    for n in sorted(ns):
        il, _, _ = il_lower_eq_opt(n, epsilon, grid_size, refine_step)
        qil = qil_upper(model, n)
        if qil < il:
            return CrossoverResult(crossover_n=float(n), qil_at=qil, il_at=il)
    return CrossoverResult()
