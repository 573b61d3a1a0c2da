"""
Information leakage and information complexity of SMP protocols.

IL(P, mu) is what the referee learns about (X, Y) from everything he holds:
I(XY; M_A M_B R_C R_AC R_BC). Since R_C is independent of everything else this
reduces to I(XY; M_A M_B | R_AC R_BC). IC(P, mu) charges each channel separately,
I(X; M_A | R_AC) + I(Y; M_B | R_BC), and exceeds IL by exactly the cross term
I(M_A; M_B | R_AC R_BC).

Worst-case values are maximized over product priors only, where both quantities
agree, and each factor is a channel capacity.
"""
from dataclasses import dataclass
import logging

import numpy as np

from smpleak import config as conf
from smpleak.errors import EnumerationLimitExceeded, UnsupportedOperation, ValidationError
from smpleak.infotheory import Alphabet, Channel, JointDist, capacity, cond_mutual_info

log = logging.getLogger(__name__)

INPUTS = ('X', 'Y')
MESSAGES = ('M_A', 'M_B')
SHARED = ('R_AC', 'R_BC')


@dataclass(frozen=True, eq=False)
class LeakageReport:
    il: float
    ic: float
    cross_term: float
    witness_prior: JointDist = None
    lower_gap: float = 0.0
    witness_il: float = None

    @property
    def identity_residual(self):
        """
        |IC - IL - cross term|, zero up to rounding.
        """
        return abs(self.ic - self.il - self.cross_term)

    def as_dict(self):
        report = {'il': self.il, 'ic': self.ic, 'cross_term': self.cross_term,
                  'identity_residual': self.identity_residual}
        if self.witness_prior is not None:
            report['witness_prior'] = self.witness_prior.probs.tolist()
            report['lower_gap'] = self.lower_gap
            report['witness_il'] = self.witness_il
        return report


def _check_prior(p, mu):
    if not isinstance(mu, JointDist) or mu.names != INPUTS:
        raise ValidationError("input distribution must be a JointDist over registers ('X', 'Y')")
    if mu.alphabet('X') != p.inputs_x or mu.alphabet('Y') != p.inputs_y:
        raise ValidationError("input distribution does not live on the protocol inputs")


def uniform_prior(p):
    size = p.inputs_x.size * p.inputs_y.size
    return JointDist(((INPUTS[0], p.inputs_x), (INPUTS[1], p.inputs_y)),
                     np.full((p.inputs_x.size, p.inputs_y.size), 1.0 / size))


def product_prior(prior_x, prior_y):
    return JointDist.product([('X', prior_x), ('Y', prior_y)])


def _kernel(sender):
    if not sender.enumerable:
        raise UnsupportedOperation("leakage needs finite shared randomness; "
                                   "{} senders share an unbounded sample stream".format(sender.kind))
    return sender.shared_kernel()


def full_joint(p, mu, with_coins=False, cell_cap=None):
    """
    Exact joint law of X, Y, R_AC, R_BC, M_A, M_B (and R_C) under prior mu.
    """
    _check_prior(p, mu)
    kernel_a, kernel_b = _kernel(p.alice), _kernel(p.bob)
    coins = p.referee.randomness if with_coins else None
    cells = mu.probs.size * kernel_a.shape[1] * kernel_b.shape[1] * kernel_a.shape[2] * kernel_b.shape[2]
    cells *= coins.size if coins is not None else 1
    cap = conf.config().get_cell_cap() if cell_cap is None else cell_cap
    if cells > cap:
        raise EnumerationLimitExceeded(cells, cap, 'leakage joint')
    side_a = kernel_a * p.alice.shared.probs[None, :, None]
    side_b = kernel_b * p.bob.shared.probs[None, :, None]
    probs = np.einsum('xy,xrm,ysn->xyrsmn', mu.probs, side_a, side_b, optimize=True)
    registers = [('X', p.inputs_x), ('Y', p.inputs_y),
                 ('R_AC', p.alice.shared.alphabet), ('R_BC', p.bob.shared.alphabet),
                 ('M_A', p.alice.messages), ('M_B', p.bob.messages)]
    if coins is not None:
        probs = np.multiply.outer(probs, coins.probs)
        registers.append(('R_C', coins.alphabet))
    return JointDist(tuple(registers), probs)


def il_dist(p, mu, cell_cap=None):
    """
    IL(P, mu) = I(XY; M_A M_B | R_AC R_BC).
    """
    return cond_mutual_info(full_joint(p, mu, cell_cap=cell_cap), INPUTS, MESSAGES, SHARED)


def il_three_forms(p, mu, cell_cap=None):
    """
    The three equal expressions of the leakage: with everything the referee holds,
    with the shared keys moved to the condition, and with R_C dropped.
    """
    joint = full_joint(p, mu, with_coins=True, cell_cap=cell_cap)
    full = cond_mutual_info(joint, INPUTS, MESSAGES + ('R_C',) + SHARED, ())
    conditioned = cond_mutual_info(joint, INPUTS, MESSAGES + ('R_C',), SHARED)
    reduced = cond_mutual_info(joint, INPUTS, MESSAGES, SHARED)
    return full, conditioned, reduced


def _ic_terms(joint):
    return (cond_mutual_info(joint, ['X'], ['M_A'], ['R_AC'])
            + cond_mutual_info(joint, ['Y'], ['M_B'], ['R_BC']))


def ic_dist(p, mu, cell_cap=None):
    """
    IC(P, mu) = I(X; M_A | R_AC) + I(Y; M_B | R_BC).
    """
    return _ic_terms(full_joint(p, mu, cell_cap=cell_cap))


def leakage_report(p, mu, cell_cap=None):
    joint = full_joint(p, mu, cell_cap=cell_cap)
    il = cond_mutual_info(joint, INPUTS, MESSAGES, SHARED)
    ic = _ic_terms(joint)
    cross = cond_mutual_info(joint, ['M_A'], ['M_B'], SHARED)
    return LeakageReport(il=il, ic=ic, cross_term=cross)


def channel_of(sender):
    """
    The channel x -> (R_AC, M_A) a sender implements.
    """
    kernel = _kernel(sender)
    rows = (kernel * sender.shared.probs[None, :, None]).reshape(sender.inputs.size, -1)
    return Channel(sender.inputs, Alphabet.product(sender.shared.alphabet, sender.messages), rows)


def ic_worst(p, tol=None, max_iter=None):
    """
    IC(P): the capacities of the two sender channels, added.

    The optimal priors form the witness; at a product prior the messages are
    conditionally independent, so IL equals IC there.
    """
    side_a = capacity(channel_of(p.alice), tol, max_iter)
    side_b = capacity(channel_of(p.bob), tol, max_iter)
    witness = product_prior(side_a.optimal_prior, side_b.optimal_prior)
    report = leakage_report(p, witness)
    ic = side_a.capacity + side_b.capacity
    log.debug("IC = %.12g + %.12g, IL at the witness %.12g", side_a.capacity, side_b.capacity, report.il)
    return LeakageReport(il=report.il, ic=ic, cross_term=report.cross_term, witness_prior=witness,
                         lower_gap=side_a.lower_gap + side_b.lower_gap, witness_il=report.il)


def il_worst(p, tol=None, max_iter=None):
    """
    IL(P), which equals IC(P). The leakage at the witness prior is checked against it.
    """
    report = ic_worst(p, tol, max_iter)
    slack = report.lower_gap + conf.config().get_tolerance()
    if report.witness_il > report.ic + slack:
        log.error("leakage %.12g at the witness prior exceeds IC %.12g", report.witness_il, report.ic)
        raise ValidationError("leakage at the witness prior exceeds the information complexity")
    return LeakageReport(il=report.ic, ic=report.ic, cross_term=0.0, witness_prior=report.witness_prior,
                         lower_gap=report.lower_gap, witness_il=report.witness_il)
