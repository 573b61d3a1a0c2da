"""
Command line front end.

    smpleak bounds     [--epsilon E] [--n-min N] [--n-max N] [--steps K] [--format csv|json|svg] [--svg FILE]
    smpleak crossover  [--epsilon E] [--mu MU] [--qil-scale S] ...
    smpleak simulate   --protocol FILE [--function eq|eq:N|FILE] [--mu-file FILE]
    smpleak transform  --protocol FILE [--pipeline STAGE ...] [--report FILE]
    smpleak verify     [--count N] [--protocol FILE]

Exit codes: 0 success, 1 invalid input, 2 failed bound check, 3 failed search.
"""
import argparse
from dataclasses import dataclass, field
import logging
import sys

import numpy as np

from smpleak import config as conf
from smpleak import logger as smplog
from smpleak.bounds import QuantumModel, bound_curve, crossover
from smpleak.errors import (CapacityNotConverged, EnumerationLimitExceeded, SearchFailure, UnsupportedOperation,
                            ValidationError)
from smpleak.fixtures import random_prior, random_protocol
from smpleak.infotheory import Dist, entropy
from smpleak.leakage import il_three_forms, il_worst, leakage_report
from smpleak.plot import curve_svg
from smpleak.smp import Model, costs, joint_transcript, worst_error
from smpleak.transforms import compose_pipeline, parse_stage
from smpleak.utils import (dump_protocol, dumps, format_number, log_spaced, read_function, read_prior,
                           read_protocol, write_text)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BOUND_CHECK = 2
EXIT_SEARCH = 3

CSV_HEADER = 'n,cc_lower,il_lower,delta1_opt,delta2_opt,qil_upper'
CSV_COLUMNS = ('n', 'cc_lower', 'il_lower', 'delta1_opt', 'delta2_opt', 'qil_upper')


@dataclass
class RunConfig:
    command: str
    epsilon: float
    n_min: float
    n_max: float
    steps: int
    mu: float
    qil_scale: float
    seed: int
    format: str
    out: str = None
    cell_cap: int = None
    protocol: str = None
    function: str = 'eq'
    mu_file: str = None
    pipeline: list = field(default_factory=list)
    report: str = None
    svg: str = None
    count: int = 1
    log: str = None

    @classmethod
    def from_args(cls, args):
        values = {name: getattr(args, name) for name in cls.__dataclass_fields__ if hasattr(args, name)}
        return cls(**values)

    def validate(self):
        if not 0.0 <= self.epsilon < 0.5:
            raise ValidationError("epsilon must lie in [0, 1/2)", field='--epsilon')
        if self.steps < 1 or self.n_min < 1 or self.n_max < self.n_min:
            raise ValidationError("need 1 <= n-min <= n-max and steps >= 1", field='--steps')
        if self.format not in ('csv', 'json', 'svg'):
            raise ValidationError("format must be csv, json or svg", field='--format')
        if self.count < 1:
            raise ValidationError("count must be at least 1", field='--count')
        if self.cell_cap is not None and self.cell_cap < 1:
            raise ValidationError("cell cap must be positive", field='--cell-cap')
        if self.command in ('simulate', 'transform') and not self.protocol:
            raise ValidationError("--protocol is required", field='--protocol')

    def quantum_model(self):
        return QuantumModel.from_config(mu=self.mu, scale=self.qil_scale)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def build_parser():
    settings = conf.config()
    common = _Parser(add_help=False)
    common.add_argument('--epsilon', type=float, default=settings.EPSILON)
    common.add_argument('--n-min', type=float, default=settings.N_MIN)
    common.add_argument('--n-max', type=float, default=settings.N_MAX)
    common.add_argument('--steps', type=int, default=settings.STEPS)
    common.add_argument('--mu', type=float, default=settings.MU, help='mean photon number of the quantum curve')
    common.add_argument('--qil-scale', type=float, default=settings.QIL_SCALE)
    common.add_argument('--seed', type=int, default=settings.SEED)
    common.add_argument('--format', default=settings.FORMAT, choices=('csv', 'json', 'svg'))
    common.add_argument('--out', help='output file (stdout by default)')
    common.add_argument('--cell-cap', type=int, default=None, help='table cell cap of exact enumeration')
    common.add_argument('--log', help='append one JSON record per stage or check to this file')
    common.add_argument('--log-level', default=settings.LOG_LEVEL)

    parser = _Parser(prog='smpleak', description=__doc__.split('\n\n')[0].strip())
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    bounds = commands.add_parser('bounds', parents=[common], help='sweep the lower bounds and the quantum curve')
    bounds.add_argument('--svg', help='also write an SVG plot to this file')
    commands.add_parser('crossover', parents=[common], help='first n where the quantum curve is below the bound')

    simulate = commands.add_parser('simulate', parents=[common], help='evaluate a protocol file')
    simulate.add_argument('--protocol')
    simulate.add_argument('--function', default='eq', help="'eq', 'eq:<n>' or a function file")
    simulate.add_argument('--mu-file', help='input prior file for distributional leakage')

    transform = commands.add_parser('transform', parents=[common], help='run a transformation pipeline')
    transform.add_argument('--protocol')
    transform.add_argument('--function', default='eq')
    transform.add_argument('--pipeline', nargs='*', default=[],
                           help='stages: compress, truncate:D, newman:D, bk:D[,T]')
    transform.add_argument('--report', help='stage report file')

    verify = commands.add_parser('verify', parents=[common], help='check the identities on random protocols')
    verify.add_argument('--count', type=int, default=1)
    verify.add_argument('--protocol', help='also check this protocol file')
    return parser


def _emit(cfg, text):
    if cfg.out:
        write_text(cfg.out, text)
    else:
        sys.stdout.write(text)


def _record(logger, record):
    if logger is not None:
        logger.log(record)


def render_csv(curve):
    lines = [CSV_HEADER]
    for row in curve.rows:
        lines.append(','.join(format_number(getattr(row, name)) for name in CSV_COLUMNS))
    return '\n'.join(lines) + '\n'


def cmd_bounds(cfg, logger=None):
    ns = log_spaced(cfg.n_min, cfg.n_max, cfg.steps)
    curve = bound_curve(ns, cfg.epsilon, cfg.quantum_model())
    if cfg.format == 'csv':
        _emit(cfg, render_csv(curve))
    elif cfg.format == 'json':
        _emit(cfg, dumps({'epsilon': cfg.epsilon, 'rows': [row.as_dict() for row in curve.rows]}))
    else:
        _emit(cfg, curve_svg(curve))
    if cfg.svg:
        write_text(cfg.svg, curve_svg(curve))
    _record(logger, {'command': 'bounds', 'rows': len(curve.rows), 'epsilon': cfg.epsilon})
    return EXIT_OK


def cmd_crossover(cfg, logger=None):
    ns = log_spaced(cfg.n_min, cfg.n_max, cfg.steps)
    result = crossover(cfg.quantum_model(), cfg.epsilon, ns)
    _emit(cfg, dumps(result.as_dict()))
    _record(logger, dict(result.as_dict(), command='crossover'))
    return EXIT_OK


def cmd_simulate(cfg, logger=None):
    p = read_protocol(cfg.protocol)
    f = read_function(cfg.function, p)
    cost = costs(p, f)
    report = {'model': p.model.value, 'worst_error': cost.worst_error, 'costs': cost.as_dict()}
    try:
        worst = il_worst(p)
        report['leakage'] = worst.as_dict()
        report['il_worst'] = worst.il
        report['ic_worst'] = worst.ic
        if cfg.mu_file:
            dist = leakage_report(p, read_prior(cfg.mu_file, p))
            report['leakage_dist'] = dist.as_dict()
            report['identity_residual'] = dist.identity_residual
        else:
            report['identity_residual'] = worst.identity_residual
    except UnsupportedOperation as error:
        log.warning("leakage skipped: %s", error)
        report['leakage'] = None
    _emit(cfg, dumps(report))
    _record(logger, {'command': 'simulate', 'protocol': cfg.protocol, 'worst_error': cost.worst_error})
    return EXIT_OK


def cmd_transform(cfg, logger=None):
    p = read_protocol(cfg.protocol)
    stages = [parse_stage(text) for text in cfg.pipeline]
    reports = []
    if stages:
        f = read_function(cfg.function, p)
        p, reports = compose_pipeline(p, f, stages, np.random.default_rng(cfg.seed))
    for report in reports:
        _record(logger, dict(report.as_dict(), command='transform'))
    passed = all(report.passed for report in reports)
    _emit(cfg, dump_protocol(p))
    summary = dumps({'stages': [report.as_dict() for report in reports], 'passed': passed})
    if cfg.report:
        write_text(cfg.report, summary)
    elif cfg.out:
        sys.stdout.write(summary)
    return EXIT_OK if passed else EXIT_BOUND_CHECK


def _marginal_residual(p):
    # the law of M_A must not depend on y, nor that of M_B on x
    worst = 0.0
    for i, x in enumerate(p.inputs_x):
        for j, y in enumerate(p.inputs_y):
            transcript = joint_transcript(p, x, y)
            worst = max(worst,
                        float(np.abs(transcript.marginal(['M_A']).probs - p.alice.message_law[i]).max()),
                        float(np.abs(transcript.marginal(['M_B']).probs - p.bob.message_law[j]).max()))
    return worst


def _kraft_residual(p, mu):
    # E[l(M)] >= H(M) under the induced message marginal
    worst = 0.0
    for sender, weights in ((p.alice, mu.marginal(['X']).probs), (p.bob, mu.marginal(['Y']).probs)):
        law = weights @ sender.message_law
        law = law / law.sum()
        worst = max(worst, entropy(Dist(sender.messages, law)) - float(sender.lengths.expected(law)))
    return max(worst, 0.0)


def check_protocol(p, rng):
    """
    Residuals of every identity on one protocol; all should be zero up to rounding.
    """
    mu = random_prior(rng, p)
    residuals = {}
    dist = leakage_report(p, mu)
    residuals['identity'] = dist.identity_residual
    residuals['il_le_ic_le_2il'] = max(0.0, dist.il - dist.ic, dist.ic - 2.0 * dist.il)
    forms = il_three_forms(p, mu)
    residuals['il_three_forms'] = max(forms) - min(forms)
    cost = costs(p)
    residuals['cost_chain'] = 0.0
    if p.alice.lengths.is_uniform() and p.bob.lengths.is_uniform():
        residuals['cost_chain'] = max(0.0, cost.cc_av - cost.cc_sh, cost.cc_sh - cost.cc_priv)
    expected_cost = sum(mu.probs[i, j] * cost.cc_av_per_input[(x, y)]
                        for i, x in enumerate(p.inputs_x) for j, y in enumerate(p.inputs_y))
    residuals['ic_le_expected_ccav'] = max(0.0, dist.ic - expected_cost)
    worst = il_worst(p)
    residuals['worst_case_witness'] = max(0.0, worst.witness_il - worst.ic - worst.lower_gap)
    residuals['kraft'] = _kraft_residual(p, mu)
    residuals['message_marginals'] = _marginal_residual(p)
    return residuals


def cmd_verify(cfg, logger=None):
    tol = conf.config().get_tolerance()
    rng = np.random.default_rng(cfg.seed)
    protocols = []
    if cfg.protocol:
        protocols.append(read_protocol(cfg.protocol))
    models = (Model.SHARED, Model.PRIVATE, Model.AVERAGE)
    protocols.extend(random_protocol(rng, models[i % len(models)]) for i in range(cfg.count))
    worst = {}
    for k, p in enumerate(protocols):
        residuals = check_protocol(p, rng)
        for name, value in residuals.items():
            worst[name] = max(worst.get(name, 0.0), value)
        _record(logger, {'command': 'verify', 'protocol': k, 'residuals': residuals})
    passed = all(value <= tol for value in worst.values())
    _emit(cfg, dumps({'count': len(protocols), 'seed': cfg.seed, 'max_residual': worst, 'passed': passed}))
    return EXIT_OK if passed else EXIT_BOUND_CHECK


COMMANDS = {
    'bounds': cmd_bounds,
    'crossover': cmd_crossover,
    'simulate': cmd_simulate,
    'transform': cmd_transform,
    'verify': cmd_verify,
}


def run(argv=None):
    args = build_parser().parse_args(argv)
    smplog.configure(args.log_level)
    cfg = RunConfig.from_args(args)
    cfg.validate()
    conf.override(CELL_CAP=cfg.cell_cap, SEED=cfg.seed)
    if cfg.log:
        with smplog.Logger(cfg.log) as logger:
            return COMMANDS[cfg.command](cfg, logger)
    return COMMANDS[cfg.command](cfg)


def main(argv=None):
    try:
        return run(argv)
    except (ValidationError, EnumerationLimitExceeded, UnsupportedOperation, OSError) as error:
        print('error: {}'.format(error), file=sys.stderr)
        return EXIT_INVALID
    except (SearchFailure, CapacityNotConverged) as error:
        print('error: {}'.format(error), file=sys.stderr)
        return EXIT_SEARCH
    finally:
        conf.reset()


if __name__ == '__main__':
    sys.exit(main())
