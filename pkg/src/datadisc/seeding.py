"""Deterministic random streams derived from one user seed.

Every randomized step asks for its own stream keyed by the seed and a
label path, so results do not depend on the order in which samples are
scheduled across workers.
"""

import random

POOL_LO, POOL_HI = -999, 999


def stream(seed, *labels):
    return random.Random(":".join(str(x) for x in (seed,) + labels))


def nonzero_int(rng, lo=POOL_LO, hi=POOL_HI):
    while True:
        v = rng.randint(lo, hi)
        if v:
            return v


def nonzero_ints(rng, count, lo=POOL_LO, hi=POOL_HI):
    return [nonzero_int(rng, lo, hi) for _ in range(count)]
