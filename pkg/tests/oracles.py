"""Brute-force reference computations used by the tests.

Nothing here calls into ``capspec``; each function recomputes its quantity
from the definition by enumeration.
"""

import math
import random
from fractions import Fraction
from functools import reduce

import numpy as np


def brute_min_combination(a, bound):
    """Smallest positive ``sum k_i a_i`` over ``|k_i| <= bound``."""
    common = reduce(math.lcm, (x.denominator for x in a))
    ints = [int(x * common) for x in a]
    ks = np.arange(-bound, bound + 1, dtype=np.int64)
    sums = np.zeros(1, dtype=np.int64)
    for v in ints[:-1]:
        sums = np.unique((sums[:, None] + ks[None, :] * v).ravel())
    last = (sums[:, None] + ks[None, :] * ints[-1]).ravel()
    return Fraction(int(last[last > 0].min()), common)


def brute_actions(a, cap):
    """All ``(m * a_j, j, m)`` with action at most ``cap``; j is 1-based in ``a``."""
    out = []
    for j, aj in enumerate(a, start=1):
        m = 1
        while m * aj <= cap:
            out.append((m * aj, j, m))
            m += 1
    return sorted(out)


def kth_smallest_action(a, k):
    # the k-th action never exceeds k * min(a)
    return brute_actions(a, k * min(a))[k - 1][0]


def count_actions_at_most(a, t):
    return len(brute_actions(a, t))


def rotation_cz_by_crossings(theta):
    """Robbin-Salamon index of ``t -> exp(2 pi i theta t)`` on [0, 1], theta > 0.

    Half contribution (+1) at t = 0 and +2 for each interior crossing t = m /
    theta with 0 < m < theta.
    """
    crossings = 0
    m = 1
    while m < theta:
        crossings += 1
        m += 1
    return 1 + 2 * crossings


def random_rational(rng, max_den=12, lo=Fraction(1, 12), hi=Fraction(5)):
    while True:
        q = rng.randint(1, max_den)
        p = rng.randint(1, int(hi * q))
        x = Fraction(p, q)
        if lo <= x <= hi:
            return x


def random_generic_ellipsoids(count, seed, k_horizon=20, max_n=4):
    """Axis vectors whose first ``k_horizon + 1`` actions are pairwise distinct."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_n)
        a = tuple(sorted(random_rational(rng) for _ in range(n)))
        acts = [t for t, _, _ in brute_actions(a, (k_horizon + 1) * min(a))][:k_horizon + 1]
        if len(set(acts)) == len(acts):
            out.append(a)
    return out


def grid_points(box, per_axis):
    """Rational grid points ``(i_1 b_1 / N, ..., i_n b_n / N)`` in a box."""
    axes = [[Fraction(i, per_axis) * b for i in range(per_axis + 1)] for b in box]
    grids = np.meshgrid(*[np.arange(len(ax)) for ax in axes], indexing="ij")
    idx = np.stack([g.ravel() for g in grids], axis=1)
    for row in idx:
        yield tuple(axes[d][i] for d, i in enumerate(row))


def mc_volume(mask, box, samples=10**6, seed=12345):
    """Monte Carlo volume of ``{x in box : mask(x)}``; ``mask`` is vectorized."""
    rng = np.random.default_rng(seed)
    box = np.asarray(box, dtype=float)
    pts = rng.random((samples, len(box))) * box
    return float(mask(pts).mean() * np.prod(box))


def random_canonical_hrep(rng, n=2, constraints=3):
    """Normals >= 0 (each with a positive entry) and positive offsets."""
    normals, offsets = [], []
    for _ in range(constraints):
        v = [Fraction(rng.randint(0, 6), rng.randint(1, 4)) for _ in range(n)]
        if not any(v):
            v[rng.randrange(n)] = Fraction(1)
        normals.append(tuple(v))
        offsets.append(random_rational(rng))
    # make sure every axis is capped so the region is bounded
    for j in range(n):
        if all(v[j] == 0 for v in normals):
            normals.append(tuple(Fraction(int(i == j)) for i in range(n)))
            offsets.append(random_rational(rng))
    return tuple(normals), tuple(offsets)


def nested_chain(rng, n, length=30):
    """Alternating ("E", a) / ("P", a) axis data, each region inside the next.

    E(a) lies in P(a); P(a) lies in E(b) once sum a_i / b_i <= 1, which the
    factor ``n (1 + t)`` with t > 0 guarantees.
    """
    a = [random_rational(rng, hi=Fraction(2)) for _ in range(n)]
    chain = [("E", tuple(a))]
    while len(chain) < length:
        kind, prev = chain[-1]
        if kind == "E":
            chain.append(("P", tuple(x * (1 + Fraction(rng.randint(0, 3), 10)) for x in prev)))
        else:
            chain.append(("E", tuple(n * x * (1 + Fraction(rng.randint(1, 3), 10)) for x in prev)))
    return chain
