"""Random small configurations for property tests."""

import numpy as np

from gencluster.pattern import MutationKit, with_principal_coefficients, with_trivial_coefficients
from gencluster.verify import admissible_prefix, random_exchange_matrix, random_walk


def random_config(seed, ns=(2, 3), max_entry=2, max_r=3, max_len=4, max_d=6):
    rng = np.random.default_rng(seed)
    n = int(rng.choice(ns))
    B0 = random_exchange_matrix(rng, n, max_entry)
    R = tuple(int(v) for v in rng.integers(1, max_r + 1, size=n))
    walk = random_walk(rng, n, int(rng.integers(0, max_len + 1)))
    walk = admissible_prefix(B0, R, walk, max_d)
    return B0, R, walk


def principal(B0, R, **kw):
    return with_principal_coefficients(B0, MutationKit.formal(R), **kw)


def trivial(B0, R, **kw):
    return with_trivial_coefficients(B0, MutationKit.formal(R), **kw)
