"""
Information leakage of a few equality protocols, worst case and under a correlated prior.
"""
import numpy as np

from smpleak.fixtures import private_hash_equality, shared_hash_equality, verbatim_equality
from smpleak.infotheory import JointDist
from smpleak.leakage import il_worst, leakage_report
from smpleak.smp import costs, make_equality

f = make_equality(2)
for p in (verbatim_equality(2), shared_hash_equality(2, k=2), private_hash_equality(2, k=3)):
    worst = il_worst(p)
    print(p.metadata['fixture'], p.model.value, 'error', costs(p, f).worst_error, 'IL', round(worst.il, 6))

# equal inputs: the referee learns x once, IC charges it twice
p = verbatim_equality(2)
mu = JointDist((('X', p.inputs_x), ('Y', p.inputs_y)), np.eye(4) / 4)
print(leakage_report(p, mu).as_dict())
