"""
Lower bounds for equality against the quantum fingerprinting curve.
"""
from smpleak.bounds import QuantumModel, bound_curve, crossover
from smpleak.utils import format_number, log_spaced

ns = log_spaced(1e4, 1e10, 7)
model = QuantumModel(mu=10.0)

curve = bound_curve(ns, 0.01, model)
for row in curve.rows:
    print(format_number(row.n), format_number(row.cc_lower), format_number(row.il_lower),
          format_number(row.qil_upper))

print(crossover(model, 0.01, log_spaced(1e4, 1e12, 33)).as_dict())
