import random

from arrangement_lab.arrangement import Arrangement, random_arrangement


def rows(*rs, labels=None):
    return Arrangement.from_rows(rs, labels)


def random_suite(count, seed, dims=(1, 2, 3, 4), max_n=7, coef=3, essential=False):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        dim = rng.choice(dims)
        lo = dim if essential else 1
        n = rng.randint(lo, max(lo, max_n))
        out.append(random_arrangement(rng, dim, n, coef, essential=essential))
    return out
