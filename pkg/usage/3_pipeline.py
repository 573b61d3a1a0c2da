"""
Compress a protocol, truncate it, and remove the shared randomness, checking each step.
"""
import numpy as np

from smpleak.fixtures import verbatim_equality
from smpleak.smp import costs, make_equality
from smpleak.transforms import compose_pipeline
from smpleak.utils import dump_protocol

p = verbatim_equality(1)
f = make_equality(1)
q, reports = compose_pipeline(p, f, ['compress', 'truncate:0.25', 'newman:0.25', 'bk:0.3'],
                              rng=np.random.default_rng(0))
for report in reports:
    print(report.name, report.passed, report.claimed, report.measured)

print(q.model.value, costs(q, f).as_dict()['cc_priv'])
print(dump_protocol(q)[:200])
