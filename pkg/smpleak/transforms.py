"""
Protocol rewrites with verified contracts.

    hjmr_compress / ic_to_ccav   shared model  -> average model, exact simulation
    markov_truncate              average model -> shared model, error + delta
    newman_derandomize           shared model  -> private model, error + delta
    bk_derandomize_alice         private model -> private model with deterministic Alice

Every rewrite keeps the senders' views, so the referee of the result is the
original referee, possibly extended by an abort rule or an index into a sample list.
Randomized searches take a numpy Generator and check every candidate exactly.
"""
from dataclasses import dataclass, field
import logging
import math

import numpy as np

from smpleak import config as conf
from smpleak.bounds import cc_av_from_ic, cc_sh_from_ccav, g1
from smpleak.codes import fixed_length
from smpleak.errors import SearchFailure, ValidationError
from smpleak.infotheory import Alphabet, Channel, Dist, capacity, total_variation
from smpleak.leakage import ic_worst
from smpleak.smp import (KernelSender, MapSender, Model, Referee, SmpProtocol, StreamSender, costs,
                         output_matrix, truncate_sender, worst_error)

log = logging.getLogger(__name__)

LOG2E = 1.0 / math.log(2.0)
SILENT = Alphabet(('',))


@dataclass(frozen=True)
class SimulatorReport:
    expected_length_per_input: dict
    tv_distance_per_input: dict
    bound: float
    capacity: float = None

    def passed(self, tol=None):
        tol = conf.config().get_tolerance() if tol is None else tol
        return (all(tv <= tol for tv in self.tv_distance_per_input.values())
                and all(length <= self.bound for length in self.expected_length_per_input.values()))


@dataclass(frozen=True)
class DerandomizationReport:
    t: int
    achieved_error: float
    target_error: float
    restarts_used: int
    message_length: int = None

    def as_dict(self):
        return dict(vars(self))


@dataclass(frozen=True)
class StageReport:
    name: str
    claimed: dict
    measured: dict
    passed: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self):
        return {'stage': self.name, 'claimed': self.claimed, 'measured': self.measured,
                'passed': self.passed, 'detail': self.detail}


def view_channel(sender):
    """
    The channel x -> view a sender implements.
    """
    return Channel(sender.inputs, sender.views, sender.view_law)


def compress_sender(sender, tol=None, max_iter=None):
    """
    Replace a finite sender by a stream simulator of its view channel.

    :return: (StreamSender, CapacityResult of the view channel)
    """
    if not sender.enumerable:
        raise ValidationError("only senders with finite shared randomness can be compressed")
    channel = view_channel(sender)
    result = capacity(channel, tol, max_iter)
    return StreamSender(channel, result.optimal_output), result


def silent_sender():
    return MapSender(SILENT, Dist.singleton(), Dist.singleton(), SILENT, np.zeros((1, 1, 1)))


def hjmr_compress(ch, tol=None, max_iter=None):
    """
    One-message protocol whose referee outputs a sample of ch on Alice's input.

    :param ch: Channel
    :return: (SmpProtocol in the average model, SimulatorReport)
    """
    result = capacity(ch, tol, max_iter)
    alice = StreamSender(ch, result.optimal_output)
    bob = silent_sender()
    table = np.arange(ch.output.size).reshape(ch.output.size, 1, 1)
    referee = Referee(alice.views, bob.views, Dist.singleton(), ch.output, table)
    p = SmpProtocol(Model.AVERAGE, alice, bob, referee, {'transform': 'hjmr', 'capacity': result.capacity})
    outputs = output_matrix(p)[:, 0, :]
    expected = alice.expected_lengths()
    report = SimulatorReport(
        expected_length_per_input={x: float(expected[i]) for i, x in enumerate(ch.input)},
        tv_distance_per_input={x: total_variation(outputs[i], ch.matrix[i]) for i, x in enumerate(ch.input)},
        bound=result.capacity + float(g1(result.capacity)),
        capacity=result.capacity)
    log.info("compressed a channel of capacity %.6g: worst expected length %.6g (bound %.6g)",
             result.capacity, max(report.expected_length_per_input.values()), report.bound)
    return p, report


def _require(p, *models):
    if p.model not in models:
        raise ValidationError("stage needs a {} protocol, got {}".format(
            ' or '.join(m.value for m in models), p.model.value))


def ic_to_ccav(p, tol=None, max_iter=None):
    """
    Compress both senders; the result simulates p exactly in the average length model.
    """
    _require(p, Model.SHARED, Model.PRIVATE)
    alice, cap_a = compress_sender(p.alice, tol, max_iter)
    bob, cap_b = compress_sender(p.bob, tol, max_iter)
    metadata = dict(p.metadata, capacity_a=cap_a.capacity, capacity_b=cap_b.capacity)
    return SmpProtocol(Model.AVERAGE, alice, bob, p.referee, metadata)


def _coin_referee(referee, alice, bob):
    # the newly appended abort view of either sender -> the extra fair coin
    if referee.outputs.size != 2:
        raise ValidationError("truncation needs a Boolean output")
    coin = Alphabet.range(2)
    randomness = Dist(Alphabet.product(referee.randomness.alphabet, coin),
                      np.outer(referee.randomness.probs, [0.5, 0.5]).ravel())
    n_a, n_b = referee.views_a.size, referee.views_b.size
    table = np.empty((n_a + 1, n_b + 1, referee.randomness.size, 2), dtype=np.int64)
    table[:] = np.arange(2)
    table[:n_a, :n_b] = referee.table[:, :, :, None]
    return Referee(alice.views, bob.views, randomness, referee.outputs,
                   table.reshape(n_a + 1, n_b + 1, -1))


def markov_truncate(p, delta):
    """
    Abort every message longer than 1/delta times its sender's expected length on that
    input. The referee outputs a fair coin on any abort.

    :param delta: in (0, 1/2]
    :return: SmpProtocol in the shared randomness model
    """
    _require(p, Model.AVERAGE)
    if not 0.0 < delta <= 0.5:
        raise ValidationError("delta must lie in (0, 1/2], got {!r}".format(delta), field='delta')
    alice = truncate_sender(p.alice, p.alice.expected_lengths() / delta)
    bob = truncate_sender(p.bob, p.bob.expected_lengths() / delta)
    referee = _coin_referee(p.referee, alice, bob)
    return SmpProtocol(Model.SHARED, alice, bob, referee, dict(p.metadata, truncated_at=delta))


def newman_sample_count(n_a, n_b, delta):
    """
    t = ceil((n_A + n_B) / (2 (delta/2)^2 log e)).
    """
    if delta <= 0:
        raise ValidationError("delta must be positive")
    return int(math.ceil((n_a + n_b) / (2.0 * (delta / 2.0) ** 2 * LOG2E)))


def hoeffding_sample_count(c_b, delta):
    """
    t = ceil((c_B + 2) / (2 delta^2 log e)) samples of Alice's message.
    """
    if delta <= 0:
        raise ValidationError("delta must be positive")
    return int(math.ceil((c_b + 2.0) / (2.0 * delta ** 2 * LOG2E)))


def mixture_sender(realizations):
    """
    Private coin sender that picks one of the fixed senders uniformly and prefixes its index.
    """
    first = realizations[0]
    t, size = len(realizations), first.messages.size
    messages = Alphabet.product(Alphabet.range(t), first.messages)
    kernel = np.concatenate([r.shared_kernel()[:, 0, :] for r in realizations], axis=1) / t
    decode = np.concatenate([r.decode[0] for r in realizations])
    if any(r.messages != first.messages or r.views != first.views for r in realizations):
        raise ValidationError("realizations must share messages and views")
    log.debug("mixture of %d senders, %d messages", t, t * size)
    return KernelSender(first.inputs, messages, first.views, Dist.singleton(), kernel[:, None, :], decode[None, :])


def _fixed(sender):
    return sender.enumerable and sender.shared.size == 1


def _search_side(name, sender, evaluate, target, t, restarts, rng):
    """
    Look for a private coin replacement of one sender.

    :param evaluate: candidate sender -> worst error of the protocol using it
    :return: (sender, samples used, candidates tried, worst error)
    """
    tol = conf.config().get_tolerance()
    if _fixed(sender):
        return sender, 1, 0, evaluate(sender)
    # one fixed sample may already do
    single = sender.realize(rng)
    error_value = evaluate(single)
    if error_value <= target + tol:
        return single, 1, 1, error_value
    best = error_value
    for attempt in range(1, restarts + 1):
        candidate = mixture_sender([sender.realize(rng) for _ in range(t)])
        error_value = evaluate(candidate)
        best = min(best, error_value)
        if error_value <= target + tol:
            return candidate, t, attempt + 1, error_value
        log.debug("newman %s: candidate %d has error %.6g > %.6g", name, attempt, error_value, target)
    raise SearchFailure("newman ({})".format(name), restarts, best)


def newman_derandomize(p, f, delta, restarts=None, rng=None):
    """
    Replace each sender's shared randomness by t fixed samples, one of which the sender
    picks with private coins and names in its message. Alice is fixed first within
    delta/2 of the original error, then Bob within delta; every candidate is checked
    on all inputs.

    :param f: FunctionTable the error is measured against
    :param rng: numpy Generator (seeded from config when omitted)
    :return: (SmpProtocol in the private coin model, DerandomizationReport)
    """
    _require(p, Model.SHARED, Model.PRIVATE)
    settings = conf.config()
    restarts = settings.RESTARTS if restarts is None else int(restarts)
    rng = np.random.default_rng(settings.SEED) if rng is None else rng
    if delta <= 0:
        raise ValidationError("delta must be positive", field='delta')
    epsilon = worst_error(p, f)
    if epsilon + delta >= 0.5:
        log.warning("newman: error %.6g plus delta %.6g is not below 1/2", epsilon, delta)
    t = newman_sample_count(fixed_length(p.inputs_x.size), fixed_length(p.inputs_y.size), delta)

    def with_alice(candidate):
        return worst_error(SmpProtocol(Model.SHARED, candidate, p.bob, p.referee), f)

    alice, t_a, tried_a, _ = _search_side('alice', p.alice, with_alice, epsilon + delta / 2.0, t, restarts, rng)

    def with_bob(candidate):
        return worst_error(SmpProtocol(Model.SHARED, alice, candidate, p.referee), f)

    bob, t_b, tried_b, achieved = _search_side('bob', p.bob, with_bob, epsilon + delta, t, restarts, rng)
    result = SmpProtocol(Model.PRIVATE, alice, bob, p.referee, dict(p.metadata, newman_t=[t_a, t_b]))
    report = DerandomizationReport(t=max(t_a, t_b), achieved_error=achieved, target_error=epsilon + delta,
                                   restarts_used=tried_a + tried_b)
    log.info("newman: t=(%d, %d), error %.6g <= %.6g after %d candidates",
             t_a, t_b, achieved, epsilon + delta, tried_a + tried_b)
    return result, report


def _accept_index(outputs):
    if outputs.size != 2:
        raise ValidationError("Alice derandomization needs a Boolean output")
    return outputs.index(1) if 1 in outputs.symbols else 1


def bk_derandomize_alice(p, f, delta, t=None, restarts=None, rng=None):
    """
    Make Alice deterministic. For every x she fixes a tuple of t messages sampled from
    her own message law, chosen so that the referee's acceptance frequency Q-bar over
    the tuple is within delta of the true acceptance probability against every view of
    Bob. The referee picks one entry of the tuple uniformly, so he outputs 1 with
    probability Q-bar.

    :param t: tuple length; by default ceil((c_B + 2) / (2 delta^2 log e))
    :return: (SmpProtocol in the private coin model, DerandomizationReport)
    """
    _require(p, Model.PRIVATE)
    accept = _accept_index(p.outputs)
    epsilon = worst_error(p, f)
    alice, referee = p.alice, p.referee
    c_a = fixed_length(alice.messages.size)
    if alice.is_deterministic():
        return p, DerandomizationReport(t=1, achieved_error=epsilon, target_error=epsilon,
                                        restarts_used=0, message_length=c_a)
    if delta <= 0:
        raise ValidationError("delta must be positive", field='delta')
    if epsilon + delta >= 0.5:
        log.warning("bk: error %.6g plus delta %.6g is not below 1/2", epsilon, delta)
    settings = conf.config()
    restarts = settings.RESTARTS if restarts is None else int(restarts)
    rng = np.random.default_rng(settings.SEED) if rng is None else rng
    t = hoeffding_sample_count(fixed_length(p.bob.messages.size), delta) if t is None else int(t)

    kernel = alice.shared_kernel()[:, 0, :]
    message_views = alice.decode[0]
    acceptance = referee.kernel[message_views, :, accept]  # Q(m_A, w_B)
    expected = kernel @ acceptance                          # P(x, w_B)
    chosen, tried = [], 0
    for i, x in enumerate(alice.inputs):
        for attempt in range(1, restarts + 1):
            sample = rng.choice(alice.messages.size, size=t, p=kernel[i])
            deviation = np.abs(acceptance[sample].mean(axis=0) - expected[i]).max()
            if deviation < delta:
                break
        else:
            raise SearchFailure("bk (input {!r})".format(x), restarts)
        tried += attempt
        chosen.append(tuple(int(m) for m in sample))

    distinct = list(dict.fromkeys(chosen))
    messages = Alphabet(tuple(tuple(alice.messages.symbols[m] for m in entry) for entry in distinct))
    table = np.array([distinct.index(entry) for entry in chosen]).reshape(-1, 1, 1)
    new_alice = MapSender(alice.inputs, Dist.singleton(), Dist.singleton(), messages, table)
    coins = referee.randomness
    randomness = Dist(Alphabet.product(Alphabet.range(t), coins.alphabet),
                      np.outer(np.full(t, 1.0 / t), coins.probs).ravel())
    views = message_views[np.array(distinct)]               # [tuple, i] -> original view of Alice
    by_entry = referee.table[views]                         # [tuple, i, w_B, r_C]
    new_table = by_entry.transpose(0, 2, 1, 3).reshape(len(distinct), referee.views_b.size, -1)
    new_referee = Referee(new_alice.views, p.bob.views, randomness, p.outputs, new_table)
    result = SmpProtocol(Model.PRIVATE, new_alice, p.bob, new_referee, dict(p.metadata, bk_t=t))
    achieved = worst_error(result, f)
    log.info("bk: t=%d, %d distinct tuples, error %.6g (target %.6g)", t, len(distinct), achieved, epsilon + delta)
    return result, DerandomizationReport(t=t, achieved_error=achieved, target_error=epsilon + delta,
                                         restarts_used=tried, message_length=t * c_a)


@dataclass(frozen=True)
class Stage:
    name: str
    delta: float = None
    t: int = None

    def __str__(self):
        if self.delta is None:
            return self.name
        if self.t is None:
            return '{}:{}'.format(self.name, self.delta)
        return '{}:{},{}'.format(self.name, self.delta, self.t)


STAGES = ('compress', 'truncate', 'newman', 'bk')


def parse_stage(text):
    """
    Parse 'compress', 'truncate:0.25', 'newman:0.25', 'bk:0.3' or 'bk:0.3,16'.
    """
    name, _, argument = text.strip().partition(':')
    if name not in STAGES:
        raise ValidationError("unknown stage {!r}, expected one of {}".format(name, ', '.join(STAGES)))
    if name == 'compress':
        if argument:
            raise ValidationError("compress takes no argument", field=text)
        return Stage(name)
    parts = argument.split(',') if argument else []
    if not parts or len(parts) > (2 if name == 'bk' else 1):
        raise ValidationError("malformed stage {!r}".format(text), field=text)
    try:
        delta = float(parts[0])
        t = int(parts[1]) if len(parts) == 2 else None
    except ValueError:
        raise ValidationError("malformed stage {!r}".format(text), field=text)
    if delta <= 0 or (t is not None and t < 1):
        raise ValidationError("stage parameters must be positive", field=text)
    return Stage(name, delta, t)


def _max_tv(before, after):
    return float(0.5 * np.abs(before - after).sum(axis=2).max())


def _check(claimed, measured, tol):
    return all(measured[key] <= claimed[key] + tol for key in claimed)


def run_stage(p, f, stage, rng):
    """
    Apply one stage and measure its contract on the result.

    :return: (new protocol, StageReport)
    """
    tol = conf.config().get_tolerance()
    if stage.name == 'compress':
        _require(p, Model.SHARED, Model.PRIVATE)
        ic = ic_worst(p).ic
        result = ic_to_ccav(p)
        claimed = {'tv': 0.0, 'cc_av': cc_av_from_ic(ic)}
        measured = {'tv': _max_tv(output_matrix(p), output_matrix(result)), 'cc_av': costs(result).cc_av}
        detail = {'ic': ic}
    elif stage.name == 'truncate':
        _require(p, Model.AVERAGE)
        before = costs(p, f)
        result = markov_truncate(p, stage.delta)
        after = costs(result, f)
        claimed = {'error': before.worst_error + stage.delta, 'cc_sh': cc_sh_from_ccav(before.cc_av, stage.delta)}
        measured = {'error': after.worst_error, 'cc_sh': after.cc_sh}
        detail = {'cc_av': before.cc_av}
    elif stage.name == 'newman':
        _require(p, Model.SHARED, Model.PRIVATE)
        cc_sh = costs(p).cc_sh
        result, report = newman_derandomize(p, f, stage.delta, rng=rng)
        claimed = {'error': report.target_error, 'cc_priv': cc_sh + 2 * fixed_length(report.t)}
        measured = {'error': report.achieved_error, 'cc_priv': costs(result).cc_priv}
        detail = report.as_dict()
    else:
        _require(p, Model.PRIVATE)
        result, report = bk_derandomize_alice(p, f, stage.delta, t=stage.t, rng=rng)
        claimed = {'error': report.target_error,
                   'cc_priv': report.message_length + fixed_length(p.bob.messages.size)}
        measured = {'error': report.achieved_error, 'cc_priv': costs(result).cc_priv}
        detail = report.as_dict()
    passed = _check(claimed, measured, tol)
    if not passed:
        log.warning("stage %s failed its contract: claimed %s, measured %s", stage, claimed, measured)
    return result, StageReport(str(stage), claimed, measured, passed, detail)


def compose_pipeline(p, f, stages, rng=None):
    """
    Run stages in order, e.g. compress -> truncate:0.25 -> newman:0.25.

    :param stages: Stage objects or their text form
    :return: (final protocol, list of StageReport)
    """
    rng = np.random.default_rng(conf.config().SEED) if rng is None else rng
    reports = []
    for stage in stages:
        stage = parse_stage(stage) if isinstance(stage, str) else stage
        p, report = run_stage(p, f, stage, rng)
        reports.append(report)
    return p, reports
