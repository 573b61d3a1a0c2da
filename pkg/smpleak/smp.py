"""
Simultaneous message passing protocols and their exact evaluation.

A protocol has two senders and a referee. Alice maps her input x, her private
randomness R_A and the randomness R_AC she shares with the referee to a message
M_A; Bob does the same with y, R_B and R_BC; the referee sees both messages, both
shared registers and his own R_C and outputs z.

Every sender exposes, for each input, the exact joint law of its message and of
its "view": whatever the referee reconstructs from that sender's message and
shared randomness. For a protocol in map form the view of Alice is simply the pair
(r_AC, m_A). The referee is a deterministic table over (view_A, view_B, r_C).
Keeping views explicit lets the transformations re-encode messages (prefix an
index, compress, abort) while the referee keeps working on the original views.

Exact evaluation marginalizes all randomness registers, so tables are dense and
only desk scale alphabets are supported; every evaluation checks a cell cap first.
"""
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
import logging

import numpy as np

from smpleak import config as conf
from smpleak.codes import elias_delta_length, fixed_length, kraft_sum
from smpleak.errors import EnumerationLimitExceeded, UnsupportedOperation, ValidationError
from smpleak.infotheory import Alphabet, Dist, JointDist, _frozen

log = logging.getLogger(__name__)

ABORT = '<abort>'
ROW_TOL = 1e-9


class Model(Enum):
    PRIVATE = 'private'
    SHARED = 'shared'
    AVERAGE = 'average'


@dataclass(frozen=True, eq=False)
class LengthFunction:
    """
    Bit length of every message, aligned with the message alphabet. Lengths must be
    realizable by a prefix-free code (Kraft), which gives E[l(M)] >= H(M) for free.
    """
    lengths: np.ndarray

    def __post_init__(self):
        lengths = np.asarray(self.lengths)
        if lengths.ndim != 1 or (lengths.size and (np.any(lengths < 0) or np.any(lengths != np.round(lengths)))):
            raise ValidationError("message lengths must be nonnegative integers")
        object.__setattr__(self, 'lengths', _frozen(lengths, dtype=np.int64))
        total = kraft_sum(self.lengths)
        if total > 1.0 + 1e-12:
            raise ValidationError("message lengths violate the Kraft inequality (sum {:.6g})".format(total))

    @classmethod
    def uniform(cls, size):
        return cls(np.full(size, fixed_length(size)))

    @property
    def size(self):
        return int(self.lengths.size)

    def is_uniform(self):
        return bool(np.all(self.lengths == fixed_length(self.size)))

    def expected(self, probs):
        """
        :param probs: message probabilities, last axis aligned with the alphabet
        """
        probs = np.asarray(probs, dtype=float)
        if self.size and np.all(self.lengths == self.lengths[0]):
            return np.full(probs.shape[:-1], float(self.lengths[0]))
        return probs @ self.lengths.astype(float)

    def max(self):
        return int(self.lengths.max())


def _cap(cell_cap):
    return conf.config().get_cell_cap() if cell_cap is None else cell_cap


class Sender:
    """
    One side of a protocol: input -> (message, view). Subclasses decide how the
    randomness is represented.
    """
    kind = None

    def __init__(self, inputs, messages, views, lengths=None):
        self.inputs = inputs
        self.messages = messages
        self.views = views
        self.lengths = LengthFunction.uniform(messages.size) if lengths is None else lengths
        if self.lengths.size != messages.size:
            raise ValidationError("{} lengths for {} messages".format(self.lengths.size, messages.size))

    @property
    def shared(self):
        """
        Distribution of the randomness shared with the referee, or None when it is
        an unbounded sample stream.
        """
        return None

    @property
    def enumerable(self):
        return self.shared is not None

    def joint(self):
        """
        :return: array [x, m, w] = Pr[M = m, view = w | X = x], all randomness marginalized
        """
        raise NotImplementedError

    @cached_property
    def view_law(self):
        return self.joint().sum(axis=1)

    @cached_property
    def message_law(self):
        return self.joint().sum(axis=2)

    def expected_lengths(self):
        """
        E[l(M) | X = x] for every input x.
        """
        return self.lengths.expected(self.message_law)

    def shared_kernel(self):
        """
        :return: array [x, r, m] = Pr[M = m | X = x, R_shared = r]
        """
        raise UnsupportedOperation("{} sender has no finite shared register".format(self.kind))

    def realize(self, rng):
        """
        Draw the shared randomness once and return the sender with it fixed.
        """
        raise NotImplementedError

    def cells(self):
        """
        Size of the register product |inputs| x |private| x |shared| this sender
        contributes to an exact evaluation. Senders with marginalized private coins
        count their messages in place of the private register.
        """
        raise NotImplementedError

    def is_deterministic(self):
        """
        True when the message is a function of the input alone.
        """
        if not self.enumerable or self.shared.size != 1:
            return False
        return bool(np.all(np.abs(self.shared_kernel().max(axis=2) - 1.0) <= ROW_TOL))


class KernelSender(Sender):
    """
    Sender given by Pr[m | x, r_shared] (private randomness already marginalized)
    and a decode table (r_shared, m) -> view.
    """
    kind = 'kernel'

    def __init__(self, inputs, messages, views, shared, kernel, decode, lengths=None):
        super().__init__(inputs, messages, views, lengths)
        self._shared = shared
        kernel = _frozen(kernel)
        decode = _frozen(decode, dtype=np.int64)
        if kernel.shape != (inputs.size, shared.size, messages.size):
            raise ValidationError("kernel shape {} does not match (inputs, shared, messages)".format(kernel.shape))
        if decode.shape != (shared.size, messages.size):
            raise ValidationError("decode shape {} does not match (shared, messages)".format(decode.shape))
        if decode.size and (decode.min() < 0 or decode.max() >= views.size):
            raise ValidationError("decode refers to an unknown view")
        if kernel.size and kernel.min() < 0:
            raise ValidationError("kernel has negative entries")
        if np.any(np.abs(kernel.sum(axis=2) - 1.0) > ROW_TOL):
            raise ValidationError("kernel rows must sum to 1")
        self.kernel = kernel
        self.decode = decode

    @property
    def shared(self):
        return self._shared

    def shared_kernel(self):
        return self.kernel

    def _weighted(self):
        return self.kernel * self.shared.probs[None, :, None]

    def joint(self):
        weighted = self._weighted()
        joint = np.zeros((self.inputs.size, self.messages.size, self.views.size))
        columns = np.arange(self.messages.size)
        for r in range(self.shared.size):
            joint[:, columns, self.decode[r]] += weighted[:, r, :]
        return joint

    @cached_property
    def view_law(self):
        weighted = self._weighted()
        law = np.zeros((self.views.size, self.inputs.size))
        for r in range(self.shared.size):
            np.add.at(law, self.decode[r], weighted[:, r, :].T)
        return law.T

    @cached_property
    def message_law(self):
        return np.einsum('xrm,r->xm', self.kernel, self.shared.probs)

    def fix(self, r):
        """
        :param r: index of the shared value to fix
        """
        return KernelSender(self.inputs, self.messages, self.views,
                            Dist.singleton(self.shared.alphabet.symbols[r]),
                            self.kernel[:, r:r + 1, :], self.decode[r:r + 1], self.lengths)

    def realize(self, rng):
        return self.fix(int(rng.choice(self.shared.size, p=self.shared.probs)))

    def cells(self):
        return self.inputs.size * self.shared.size * self.messages.size


class MapSender(KernelSender):
    """
    Sender in the deterministic map form: m = table[x, r_private, r_shared].
    Unless given, the views are the pairs (r_shared, m).
    """
    kind = 'map'

    def __init__(self, inputs, private, shared, messages, table, lengths=None, views=None, decode=None):
        table = _frozen(table, dtype=np.int64)
        if table.shape != (inputs.size, private.size, shared.size):
            raise ValidationError("map shape {} does not match (inputs, private, shared)".format(table.shape))
        if table.size and (table.min() < 0 or table.max() >= messages.size):
            raise ValidationError("map refers to an unknown message")
        if views is None:
            views = Alphabet.product(shared.alphabet, messages)
            decode = np.arange(shared.size * messages.size).reshape(shared.size, messages.size)
        elif decode is None:
            raise ValidationError("custom views need a decode table")
        kernel = np.zeros((inputs.size, shared.size, messages.size))
        xi, pi, si = np.indices(table.shape)
        np.add.at(kernel, (xi.ravel(), si.ravel(), table.ravel()), private.probs[pi.ravel()])
        super().__init__(inputs, messages, views, shared, kernel, decode, lengths)
        self.private = private
        self.table = table

    def fix(self, r):
        return MapSender(self.inputs, self.private, Dist.singleton(self.shared.alphabet.symbols[r]),
                         self.messages, self.table[:, :, r:r + 1], self.lengths, self.views,
                         self.decode[r:r + 1])

    def cells(self):
        return self.inputs.size * self.private.size * self.shared.size


def _schedule(matrix, proposal, cap, floor):
    # Greedy rejection sampling masses: step i accepts min(residual, remaining * q)
    residual = np.array(matrix, dtype=float)
    steps, before = [], []
    for _ in range(cap):
        remaining = residual.sum(axis=1)
        if remaining.max() <= floor:
            break
        accepted = np.minimum(residual, remaining[:, None] * proposal[None, :])
        if not np.any(accepted.sum(axis=1) > 0):
            break  # what is left sits where the proposal has no mass
        steps.append(accepted)
        before.append(remaining)
        residual = residual - accepted
    if not steps:
        steps.append(np.zeros_like(residual))
        before.append(residual.sum(axis=1))
    return np.stack(steps, axis=1), np.stack(before, axis=1), residual


class StreamSender(Sender):
    """
    Exact one-shot simulator of a channel x -> view.

    The shared randomness is an i.i.d. stream s_1, s_2, ... drawn from the proposal
    q. At step i the sender, still undecided, accepts s_i with probability
    min(P_x(s) - p_{i-1}(s), (1 - p*_{i-1}) q(s)) / ((1 - p*_{i-1}) q(s)), where
    p_{i-1} is the mass accepted so far, and sends '0' + Elias delta(i). After cap
    steps (or once the unaccepted mass drops below floor) she sends '1' + a fixed
    length code of a sample from the unaccepted mass instead. The referee's view is
    s_i or the escaped symbol and is distributed exactly as P_x.
    """
    kind = 'stream'

    def __init__(self, channel, proposal, cap=None, floor=None):
        settings = conf.config()
        self.channel = channel
        self.proposal = proposal
        self.cap = settings.STREAM_CAP if cap is None else int(cap)
        self.floor = settings.STREAM_FLOOR if floor is None else float(floor)
        if proposal.alphabet != channel.output:
            raise ValidationError("stream proposal must live on the channel output alphabet")
        self.accepted, self.before, self.residual = _schedule(channel.matrix, proposal.probs, self.cap, self.floor)
        steps = self.accepted.shape[1]
        views = channel.output
        messages = Alphabet(tuple(('s', i) for i in range(1, steps + 1)) + tuple(('e', v) for v in views))
        escape = 1 + fixed_length(views.size)
        lengths = [1 + elias_delta_length(i) for i in range(1, steps + 1)] + [escape] * views.size
        super().__init__(channel.input, messages, views, LengthFunction(np.array(lengths)))
        log.debug("stream simulator: %d steps, max unaccepted mass %.3g", steps, self.residual.sum(axis=1).max())

    @property
    def steps(self):
        return self.accepted.shape[1]

    def joint(self):
        n_views = self.views.size
        joint = np.zeros((self.inputs.size, self.messages.size, n_views))
        joint[:, :self.steps, :] = self.accepted
        joint[:, self.steps + np.arange(n_views), np.arange(n_views)] = self.residual
        return joint

    @cached_property
    def view_law(self):
        return self.accepted.sum(axis=1) + self.residual

    @cached_property
    def message_law(self):
        return np.concatenate([self.accepted.sum(axis=2), self.residual], axis=1)

    def realize(self, rng):
        q = self.proposal.probs
        stream = rng.choice(self.views.size, size=self.steps, p=q)
        picked = self.accepted[:, np.arange(self.steps), stream]
        denominator = self.before * q[stream][None, :]
        with np.errstate(divide='ignore', invalid='ignore'):
            beta = np.where(denominator > 0, picked / denominator, 0.0)
        beta = np.clip(beta, 0.0, 1.0)
        survive = np.cumprod(1.0 - beta, axis=1)
        undecided = np.concatenate([np.ones((self.inputs.size, 1)), survive[:, :-1]], axis=1)
        accept = beta * undecided
        fallback = survive[:, -1]
        mass = self.residual.sum(axis=1, keepdims=True)
        escaped = np.where(mass > 0, self.residual / np.where(mass > 0, mass, 1.0), self.channel.matrix)
        kernel = np.concatenate([accept, fallback[:, None] * escaped], axis=1)
        decode = np.concatenate([stream, np.arange(self.views.size)])
        return KernelSender(self.inputs, self.messages, self.views, Dist.singleton('stream'),
                            kernel[:, None, :], decode[None, :], self.lengths)

    def cells(self):
        return self.inputs.size * self.messages.size


def abort_label(symbols):
    """
    ABORT, or (ABORT, k) with the smallest k not among symbols when a sender is
    truncated again.
    """
    label, depth = ABORT, 1
    while label in symbols:
        label, depth = (ABORT, depth), depth + 1
    return label


class TruncatedSender(Sender):
    """
    Sender that aborts whenever the inner sender's message is longer than the limit
    for its input. Used for stream senders, whose shared randomness cannot be enumerated;
    finite senders are truncated eagerly by truncate_sender.
    """
    kind = 'truncated'

    def __init__(self, inner, limits):
        self.inner = inner
        self.limits = np.asarray(limits, dtype=float)
        if self.limits.shape != (inner.inputs.size,):
            raise ValidationError("one length limit per input is needed")
        self.kept = np.flatnonzero(inner.lengths.lengths <= self.limits.max() + ROW_TOL)
        kept_messages = tuple(inner.messages.symbols[i] for i in self.kept)
        messages = Alphabet(kept_messages + (abort_label(kept_messages),))
        views = Alphabet(inner.views.symbols + (abort_label(inner.views.symbols),))
        super().__init__(inner.inputs, messages, views)

    def allowed(self):
        return self.inner.lengths.lengths[None, :] <= self.limits[:, None] + ROW_TOL

    def joint(self):
        inner = self.inner.joint()
        allowed = self.allowed()
        joint = np.zeros((self.inputs.size, self.messages.size, self.views.size))
        joint[:, :-1, :-1] = inner[:, self.kept, :] * allowed[:, self.kept, None]
        joint[:, -1, -1] = (inner.sum(axis=2) * ~allowed).sum(axis=1)
        return joint

    def realize(self, rng):
        return truncate_sender(self.inner.realize(rng), self.limits)

    def cells(self):
        return self.inner.cells()


def truncate_sender(sender, limits):
    """
    Replace every message longer than limits[x] by an abort flag. The referee sees the
    ABORT view in that case. Messages no input may send are dropped from the alphabet.

    :param sender: any Sender
    :param limits: one length limit (bits) per input
    :return: a sender in the bounded model, with uniform lengths
    """
    limits = np.asarray(limits, dtype=float)
    if not sender.enumerable:
        return TruncatedSender(sender, limits)
    lengths = sender.lengths.lengths
    kept = np.flatnonzero(lengths <= limits.max() + ROW_TOL)
    allowed = (lengths[None, :] <= limits[:, None] + ROW_TOL)[:, kept]
    kernel = sender.shared_kernel()[:, :, kept] * allowed[:, None, :]
    kernel = np.concatenate([kernel, 1.0 - kernel.sum(axis=2, keepdims=True)], axis=2)
    kernel = np.clip(kernel, 0.0, 1.0)
    abort_view = sender.views.size
    decode = np.concatenate([sender.decode[:, kept],
                             np.full((sender.shared.size, 1), abort_view)], axis=1)
    kept_messages = tuple(sender.messages.symbols[i] for i in kept)
    messages = Alphabet(kept_messages + (abort_label(kept_messages),))
    views = Alphabet(sender.views.symbols + (abort_label(sender.views.symbols),))
    return KernelSender(sender.inputs, messages, views, sender.shared, kernel, decode)


class Referee:
    """
    Deterministic referee: z = table[view_A, view_B, r_C].
    """

    def __init__(self, views_a, views_b, randomness, outputs, table):
        table = _frozen(table, dtype=np.int64)
        if table.shape != (views_a.size, views_b.size, randomness.size):
            raise ValidationError("referee table shape {} does not match (views_a, views_b, r_c)".format(
                table.shape))
        if table.size and (table.min() < 0 or table.max() >= outputs.size):
            raise ValidationError("referee table refers to an unknown output")
        self.views_a = views_a
        self.views_b = views_b
        self.randomness = randomness
        self.outputs = outputs
        self.table = table

    @classmethod
    def from_map(cls, alice, bob, randomness, outputs, table):
        """
        Build from Pi_C: M_A x M_B x R_C x R_AC x R_BC -> Z for two senders in map form.

        :param table: int array [m_a, m_b, r_c, r_ac, r_bc]
        """
        table = np.asarray(table, dtype=np.int64)
        expected = (alice.messages.size, bob.messages.size, randomness.size, alice.shared.size, bob.shared.size)
        if table.shape != expected:
            raise ValidationError("referee map shape {} should be {}".format(table.shape, expected))
        # views are (r_shared, m) with r_shared major
        by_view = table.transpose(3, 0, 4, 1, 2).reshape(
            alice.shared.size * alice.messages.size, bob.shared.size * bob.messages.size, randomness.size)
        return cls(alice.views, bob.views, randomness, outputs, by_view)

    @cached_property
    def kernel(self):
        """
        Array [w_a, w_b, z] = Pr[Z = z | views].
        """
        kernel = np.zeros((self.views_a.size, self.views_b.size, self.outputs.size))
        a, b, c = np.indices(self.table.shape)
        np.add.at(kernel, (a.ravel(), b.ravel(), self.table.ravel()), self.randomness.probs[c.ravel()])
        return kernel

    def cells(self):
        return self.views_a.size * self.views_b.size * max(self.randomness.size, self.outputs.size)


class SmpProtocol:
    """
    A protocol (Pi_A, Pi_B, Pi_C) in one of the three models.
    """

    def __init__(self, model, alice, bob, referee, metadata=None):
        self.model = Model(model)
        self.alice = alice
        self.bob = bob
        self.referee = referee
        self.metadata = dict(metadata or {})
        self.validate()

    def validate(self):
        if self.alice.views != self.referee.views_a or self.bob.views != self.referee.views_b:
            raise ValidationError("referee views do not match the senders")
        for name, sender in (('alice', self.alice), ('bob', self.bob)):
            if self.model is Model.PRIVATE and not (sender.enumerable and sender.shared.size == 1):
                raise ValidationError("private coin protocols cannot share randomness with the referee",
                                      field=name + '.shared')
            if self.model is not Model.AVERAGE and not sender.lengths.is_uniform():
                raise ValidationError("{} model needs uniform message lengths".format(self.model.value),
                                      field=name + '.lengths')

    @property
    def inputs_x(self):
        return self.alice.inputs

    @property
    def inputs_y(self):
        return self.bob.inputs

    @property
    def outputs(self):
        return self.referee.outputs

    @property
    def enumerable(self):
        return self.alice.enumerable and self.bob.enumerable

    def cells(self):
        """
        Full register product |X| |R_A| |R_AC| |Y| |R_B| |R_BC| |R_C|.
        """
        return self.alice.cells() * self.bob.cells() * self.referee.randomness.size

    def check_cells(self, cell_cap=None):
        cap = _cap(cell_cap)
        cells = max(self.cells(), self.referee.cells())
        if cells > cap:
            raise EnumerationLimitExceeded(cells, cap)
        return cells


@dataclass(frozen=True, eq=False)
class FunctionTable:
    """
    A function f: X x Y -> Z given as a table of output indices.
    """
    inputs_x: Alphabet
    inputs_y: Alphabet
    outputs: Alphabet
    table: np.ndarray

    def __post_init__(self):
        table = _frozen(self.table, dtype=np.int64)
        if table.shape != (self.inputs_x.size, self.inputs_y.size):
            raise ValidationError("function table shape {} does not match the inputs".format(table.shape))
        if table.size and (table.min() < 0 or table.max() >= self.outputs.size):
            raise ValidationError("function table refers to an unknown output")
        object.__setattr__(self, 'table', table)

    @classmethod
    def from_callable(cls, inputs_x, inputs_y, outputs, fn):
        table = [[outputs.index(fn(x, y)) for y in inputs_y] for x in inputs_x]
        return cls(inputs_x, inputs_y, outputs, np.array(table))

    def value(self, x, y):
        return self.outputs.symbols[self.table[self.inputs_x.index(x), self.inputs_y.index(y)]]


BOOLEAN = Alphabet((0, 1))


def make_equality(n):
    """
    EQ_n on n-bit strings: 1 iff x = y.
    """
    limit = conf.config().MAX_EQUALITY_BITS
    if n < 1 or n > limit:
        raise ValidationError("equality tables are enumerated for 1 <= n <= {}, got {}".format(limit, n))
    inputs = Alphabet.bits(n)
    return FunctionTable(inputs, inputs, BOOLEAN, np.eye(inputs.size, dtype=np.int64))


def _check_function(p, f):
    if f.inputs_x != p.inputs_x or f.inputs_y != p.inputs_y:
        raise ValidationError("function inputs do not match the protocol inputs")
    if f.outputs != p.outputs:
        raise ValidationError("function outputs do not match the referee outputs")


def output_matrix(p, cell_cap=None):
    """
    :return: array [x, y, z] = Pr[Pi(x, y) = z]
    """
    p.check_cells(cell_cap)
    return np.einsum('xa,yb,abz->xyz', p.alice.view_law, p.bob.view_law, p.referee.kernel, optimize=True)


def output_dist(p, x, y, cell_cap=None):
    """
    Exact distribution of the referee's output on input (x, y).
    """
    p.check_cells(cell_cap)
    xi, yi = p.inputs_x.index(x), p.inputs_y.index(y)
    probs = np.einsum('a,b,abz->z', p.alice.view_law[xi], p.bob.view_law[yi], p.referee.kernel, optimize=True)
    return Dist(p.outputs, probs)


def joint_transcript(p, x, y, cell_cap=None):
    """
    Joint law of (M_A, V_A, M_B, V_B, Z) on input (x, y).
    """
    p.check_cells(cell_cap)
    a = p.alice.joint()[p.inputs_x.index(x)]
    b = p.bob.joint()[p.inputs_y.index(y)]
    cells = a.size * b.size * p.outputs.size
    if cells > _cap(cell_cap):
        raise EnumerationLimitExceeded(cells, _cap(cell_cap), 'transcript')
    probs = np.einsum('mw,nv,wvz->mwnvz', a, b, p.referee.kernel, optimize=True)
    registers = (('M_A', p.alice.messages), ('V_A', p.alice.views),
                 ('M_B', p.bob.messages), ('V_B', p.bob.views), ('Z', p.outputs))
    return JointDist(registers, probs)


def error_matrix(p, f, cell_cap=None):
    """
    :return: array [x, y] = Pr[Pi(x, y) != f(x, y)]
    """
    _check_function(p, f)
    outputs = output_matrix(p, cell_cap)
    correct = np.take_along_axis(outputs, f.table[:, :, None], axis=2)[:, :, 0]
    return np.clip(1.0 - correct, 0.0, 1.0)


def error(p, f, x, y, cell_cap=None):
    _check_function(p, f)
    return 1.0 - output_dist(p, x, y, cell_cap).prob(f.value(x, y))


def worst_error(p, f, cell_cap=None):
    return float(error_matrix(p, f, cell_cap).max())


@dataclass(frozen=True)
class CostReport:
    cc_priv: int
    cc_sh: int
    cc_av_per_input: dict
    cc_av: float
    worst_error: float = None
    per_input_error: dict = None

    def as_dict(self):
        def rows(mapping, key):
            return [{'x': x, 'y': y, key: value} for (x, y), value in mapping.items()]

        report = {'cc_priv': self.cc_priv, 'cc_sh': self.cc_sh, 'cc_av': self.cc_av,
                  'cc_av_per_input': rows(self.cc_av_per_input, 'cc_av')}
        if self.per_input_error is not None:
            report['worst_error'] = self.worst_error
            report['per_input_error'] = rows(self.per_input_error, 'error')
        return report


def costs(p, f=None, cell_cap=None):
    """
    The three communication costs, and the error when a function is given.

    cc_priv and cc_sh both evaluate ceil(log|M_A|) + ceil(log|M_B|) on this protocol;
    cc_av is the worst input's expected length under the protocol's length functions.
    """
    p.check_cells(cell_cap)
    bounded = fixed_length(p.alice.messages.size) + fixed_length(p.bob.messages.size)
    expected_a = p.alice.expected_lengths()
    expected_b = p.bob.expected_lengths()
    per_input = {}
    for i, x in enumerate(p.inputs_x):
        for j, y in enumerate(p.inputs_y):
            per_input[(x, y)] = float(expected_a[i] + expected_b[j])
    cc_av = float(expected_a.max() + expected_b.max())
    worst, per_error = None, None
    if f is not None:
        errors = error_matrix(p, f, cell_cap)
        per_error = {(x, y): float(errors[i, j])
                     for i, x in enumerate(p.inputs_x) for j, y in enumerate(p.inputs_y)}
        worst = float(errors.max())
    return CostReport(cc_priv=bounded, cc_sh=bounded, cc_av_per_input=per_input, cc_av=cc_av,
                      worst_error=worst, per_input_error=per_error)
