"""
Exact finite information theory.

Distributions are dense numpy tables over named, finite alphabets. All logarithms
are base 2 and 0 log 0 is taken as 0. Values are immutable once built, so they can
be shared freely between threads.
"""
from dataclasses import dataclass
import logging
import math

import numpy as np
from scipy.special import entr, rel_entr

from smpleak import config as conf
from smpleak.errors import CapacityNotConverged, ValidationError

log = logging.getLogger(__name__)

LN2 = math.log(2.0)
NORMALIZATION_TOL = 1e-9


def _frozen(array, dtype=float):
    array = np.array(array, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Alphabet:
    """
    Ordered finite set of opaque labels. The position of a label is its index in every table.
    """
    symbols: tuple

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, 'symbols', symbols)
        if not symbols:
            raise ValidationError("an alphabet needs at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise ValidationError("alphabet labels must be distinct")

    @classmethod
    def range(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def bits(cls, n):
        """
        All n-bit strings in lexicographic order, e.g. ('00', '01', '10', '11').
        """
        return cls(tuple(format(i, '0{}b'.format(n)) if n else '' for i in range(2 ** n)))

    @classmethod
    def product(cls, *alphabets):
        """
        Product alphabet, last factor varying fastest (numpy C order).
        """
        symbols = [()]
        for alphabet in alphabets:
            symbols = [s + (t,) for s in symbols for t in alphabet.symbols]
        return cls(tuple(symbols))

    @property
    def size(self):
        return len(self.symbols)

    def index(self, symbol):
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise ValidationError("unknown symbol {!r}".format(symbol))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)


def _check_probs(probs, what):
    if probs.size and (not np.all(np.isfinite(probs)) or probs.min() < 0):
        raise ValidationError("{} has negative or non-finite entries".format(what))
    total = float(probs.sum())
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise ValidationError("{} sums to {!r}, not 1".format(what, total))


@dataclass(frozen=True, eq=False)
class Dist:
    """
    Probability distribution over one alphabet.
    """
    alphabet: Alphabet
    probs: np.ndarray

    def __post_init__(self):
        probs = _frozen(self.probs)
        object.__setattr__(self, 'probs', probs)
        if probs.shape != (self.alphabet.size,):
            raise ValidationError("distribution has {} entries for an alphabet of size {}".format(
                probs.size, self.alphabet.size))
        _check_probs(probs, "distribution")

    @classmethod
    def uniform(cls, alphabet):
        return cls(alphabet, np.full(alphabet.size, 1.0 / alphabet.size))

    @classmethod
    def point(cls, alphabet, symbol):
        probs = np.zeros(alphabet.size)
        probs[alphabet.index(symbol)] = 1.0
        return cls(alphabet, probs)

    @classmethod
    def singleton(cls, label=0):
        return cls(Alphabet((label,)), [1.0])

    @property
    def size(self):
        return self.alphabet.size

    def prob(self, symbol):
        return float(self.probs[self.alphabet.index(symbol)])

    def is_point(self):
        return bool(np.count_nonzero(self.probs) == 1)


@dataclass(frozen=True, eq=False)
class JointDist:
    """
    Joint distribution over named registers, stored as one dense table with one axis per register.
    """
    registers: tuple  # ((name, Alphabet), ...)
    probs: np.ndarray

    def __post_init__(self):
        registers = tuple((str(name), alphabet) for name, alphabet in self.registers)
        object.__setattr__(self, 'registers', registers)
        names = [name for name, _ in registers]
        if len(set(names)) != len(names):
            raise ValidationError("register names must be distinct")
        probs = _frozen(self.probs)
        shape = tuple(alphabet.size for _, alphabet in registers)
        if probs.shape != shape:
            raise ValidationError("table shape {} does not match registers {}".format(probs.shape, shape))
        object.__setattr__(self, 'probs', probs)
        _check_probs(probs, "joint distribution")

    @classmethod
    def product(cls, named_dists):
        """
        :param named_dists: sequence of (name, Dist) pairs, taken to be independent
        """
        probs = np.ones(())
        for _, dist in named_dists:
            probs = np.multiply.outer(probs, dist.probs)
        return cls(tuple((name, dist.alphabet) for name, dist in named_dists), probs)

    @property
    def names(self):
        return tuple(name for name, _ in self.registers)

    def alphabet(self, name):
        for register, alphabet in self.registers:
            if register == name:
                return alphabet
        raise ValidationError("unknown register {!r}".format(name))

    def axes(self, names):
        own = self.names
        axes = []
        for name in names:
            if name not in own:
                raise ValidationError("unknown register {!r}".format(name))
            axes.append(own.index(name))
        return axes

    def marginal(self, names):
        """
        Marginal on the given registers, kept in this table's register order.
        """
        keep = set(self.axes(names))
        drop = tuple(axis for axis in range(len(self.registers)) if axis not in keep)
        probs = self.probs.sum(axis=drop) if drop else self.probs
        registers = tuple(r for axis, r in enumerate(self.registers) if axis in keep)
        return JointDist(registers, probs)


def _entropy_of(probs):
    return float(entr(np.asarray(probs, dtype=float)).sum() / LN2)


def entropy(d):
    """
    Shannon entropy in bits.

    :param d: Dist (or JointDist, for the entropy of all its registers together)
    """
    if isinstance(d, JointDist):
        return _entropy_of(d.probs)
    if not isinstance(d, Dist):
        raise ValidationError("entropy needs a Dist")
    return _entropy_of(d.probs)


def joint_entropy(j, names):
    names = tuple(names)
    if not names:
        return 0.0
    j.axes(names)
    return _entropy_of(j.marginal(names).probs)


def _groups(j, *groups):
    groups = [tuple(group) for group in groups]
    seen = set()
    for group in groups:
        j.axes(group)
        overlap = seen.intersection(group)
        if overlap:
            raise ValidationError("register groups overlap on {}".format(sorted(overlap)))
        seen.update(group)
    return groups


def mutual_info(j, group_a, group_b):
    """
    I(A;B) = H(A) + H(B) - H(AB) in bits.
    """
    a, b = _groups(j, group_a, group_b)
    return joint_entropy(j, a) + joint_entropy(j, b) - joint_entropy(j, a + b)


def cond_mutual_info(j, group_a, group_b, cond):
    """
    I(A;B|C) = H(AC) + H(BC) - H(ABC) - H(C) in bits.
    """
    a, b, c = _groups(j, group_a, group_b, cond)
    if not c:
        return mutual_info(j, a, b)
    return (joint_entropy(j, a + c) + joint_entropy(j, b + c)
            - joint_entropy(j, a + b + c) - joint_entropy(j, c))


def kl_divergence(p, q):
    """
    D(p||q) in bits; infinite when p is not absolutely continuous with respect to q.
    """
    return float(rel_entr(np.asarray(p.probs), np.asarray(q.probs)).sum() / LN2)


def total_variation(p, q):
    p = p.probs if isinstance(p, Dist) else np.asarray(p, dtype=float)
    q = q.probs if isinstance(q, Dist) else np.asarray(q, dtype=float)
    return float(0.5 * np.abs(p - q).sum())


@dataclass(frozen=True, eq=False)
class Channel:
    """
    A noisy channel: one output distribution per input symbol, all over a common output alphabet.
    """
    input: Alphabet
    output: Alphabet
    matrix: np.ndarray  # [input, output]

    def __post_init__(self):
        matrix = _frozen(self.matrix)
        object.__setattr__(self, 'matrix', matrix)
        if matrix.shape != (self.input.size, self.output.size):
            raise ValidationError("channel matrix shape {} does not match alphabets".format(matrix.shape))
        for row in matrix:
            _check_probs(row, "channel row")

    @property
    def rows(self):
        return [Dist(self.output, row) for row in self.matrix]

    def output_dist(self, prior):
        return Dist(self.output, prior.probs @ self.matrix)

    def joint(self, prior, names=('X', 'M')):
        return JointDist(((names[0], self.input), (names[1], self.output)),
                         prior.probs[:, None] * self.matrix)

    def mutual_info(self, prior):
        return mutual_info(self.joint(prior), ['X'], ['M'])


@dataclass(frozen=True, eq=False)
class CapacityResult:
    """
    capacity is the information of optimal_prior; the true capacity lies within lower_gap above it.
    """
    capacity: float
    optimal_prior: Dist
    lower_gap: float
    iterations: int
    optimal_output: Dist = None

    @property
    def upper(self):
        return self.capacity + self.lower_gap


def _divergences(matrix, q):
    # D(W(.|x) || q) for every input x, in bits
    return rel_entr(matrix, q[None, :]).sum(axis=1) / LN2


def capacity(ch, tol=None, max_iter=None):
    """
    Channel capacity by Blahut-Arimoto iteration.

    Every iterate p gives the bracket I(p) <= C <= max_x D(W(.|x) || pW), so the
    loop stops as soon as the bracket is narrower than tol.

    :param ch: Channel
    :param tol: bracket width to stop at (bits)
    :param max_iter: iteration budget
    :return: CapacityResult
    """
    settings = conf.config()
    tol = settings.CAPACITY_TOL if tol is None else tol
    max_iter = settings.CAPACITY_MAX_ITER if max_iter is None else max_iter
    if tol <= 0:
        raise ValidationError("capacity tolerance must be positive")

    matrix = np.asarray(ch.matrix, dtype=float)
    p = np.full(ch.input.size, 1.0 / ch.input.size)
    lower = upper = 0.0
    for iteration in range(1, int(max_iter) + 1):
        q = p @ matrix
        divergences = _divergences(matrix, q)
        lower = float(p @ divergences)
        upper = float(divergences.max())
        if upper - lower <= tol:
            log.debug("capacity bracket closed after %d iterations: [%.12g, %.12g]", iteration, lower, upper)
            return CapacityResult(capacity=max(lower, 0.0),
                                  optimal_prior=Dist(ch.input, p),
                                  lower_gap=max(upper - lower, 0.0),
                                  iterations=iteration,
                                  optimal_output=Dist(ch.output, q / q.sum()))
        # shift by the max before exponentiating, the normalization absorbs it
        p = p * np.exp2(divergences - upper)
        p = p / p.sum()
    raise CapacityNotConverged(lower, upper, int(max_iter))
