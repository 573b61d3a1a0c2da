"""
Independent oracles shared by the test modules: grid searches over priors,
brute-force information measures and a Monte-Carlo runner for map-form protocols.
"""
import itertools
import math

import numpy as np

from smpleak.infotheory import Dist, JointDist
from smpleak.leakage import ic_dist, il_dist, product_prior


def simplex_grid(size, step):
    """
    Every probability vector of the given size whose entries are multiples of step.
    """
    units = int(round(1.0 / step))
    for cut in itertools.combinations(range(units + size - 1), size - 1):
        bounds = (-1,) + cut + (units + size - 1,)
        counts = [bounds[k + 1] - bounds[k] - 1 for k in range(size)]
        yield np.array(counts, dtype=float) / units


def brute_entropy(probs):
    return -sum(p * math.log2(p) for p in np.ravel(probs) if p > 0)


def brute_cond_mi(table):
    """
    I(A;B|C) of a table [a, b, c] as sum_c p(c) I(A;B|C=c), by plain loops.
    """
    total = 0.0
    for c in range(table.shape[2]):
        weight = table[:, :, c].sum()
        if weight <= 0:
            continue
        slab = table[:, :, c] / weight
        rows, cols = slab.sum(axis=1), slab.sum(axis=0)
        info = 0.0
        for a in range(slab.shape[0]):
            for b in range(slab.shape[1]):
                if slab[a, b] > 0:
                    info += slab[a, b] * math.log2(slab[a, b] / (rows[a] * cols[b]))
        total += weight * info
    return total


def brute_capacity(matrix, step=1e-4):
    """
    Capacity of a two-input channel by scanning the input prior.
    """
    best = 0.0
    for p in np.arange(0.0, 1.0 + step / 2, step):
        prior = np.array([p, 1.0 - p])
        joint = prior[:, None] * matrix
        out = joint.sum(axis=0)
        info = sum(joint[i, j] * math.log2(joint[i, j] / (prior[i] * out[j]))
                   for i in range(2) for j in range(matrix.shape[1]) if joint[i, j] > 0)
        best = max(best, info)
    return best


def product_grid_ic(p, step):
    """
    Largest IC over product priors on the grid.
    """
    best = 0.0
    for px in simplex_grid(p.inputs_x.size, step):
        for py in simplex_grid(p.inputs_y.size, step):
            prior = product_prior(Dist(p.inputs_x, px), Dist(p.inputs_y, py))
            best = max(best, ic_dist(p, prior))
    return best


def joint_grid_il(p, step):
    """
    Largest IL over all joint priors on the grid.
    """
    best = 0.0
    shape = (p.inputs_x.size, p.inputs_y.size)
    for probs in simplex_grid(shape[0] * shape[1], step):
        prior = JointDist((('X', p.inputs_x), ('Y', p.inputs_y)), probs.reshape(shape))
        best = max(best, il_dist(p, prior))
    return best


def _sample_views(sender, x_index, samples, rng):
    private = rng.choice(sender.private.size, size=samples, p=sender.private.probs)
    shared = rng.choice(sender.shared.size, size=samples, p=sender.shared.probs)
    messages = sender.table[x_index, private, shared]
    return sender.decode[shared, messages]


def monte_carlo_outputs(p, x, y, samples, rng):
    """
    Empirical output frequencies from running a map-form protocol samples times.
    """
    views_a = _sample_views(p.alice, p.inputs_x.index(x), samples, rng)
    views_b = _sample_views(p.bob, p.inputs_y.index(y), samples, rng)
    coins = rng.choice(p.referee.randomness.size, size=samples, p=p.referee.randomness.probs)
    outputs = p.referee.table[views_a, views_b, coins]
    return np.bincount(outputs, minlength=p.outputs.size) / samples


# bound functions written out again from their definitions

def ref_g1(x):
    return 2 * math.log2(x + 1) + 10


def ref_g2(x, y, z):
    return 2 * math.log2(2 * (x + y) / (z * z * math.log2(math.e)) + 1) + 2


def ref_g3(x):
    return 2 * (0.5 - x) ** 2 * math.log2(math.e)


def ref_il_bound(n, epsilon, delta1, delta2):
    g = ref_g3(epsilon + delta1 + delta2)
    return delta1 * (2 * math.sqrt(g) * math.sqrt(n) - g - ref_g2(n, n, delta2) - 10) - 2 * ref_g1(2 * n)
