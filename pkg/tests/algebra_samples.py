"""Seeded random monomial-ideal algebras used by several suites."""

import random

from nilcomm.algebra import ArtinianAlgebra


def random_monomial_algebra(rng, max_dim=30):
    """K[x0..x(k-1)]/(pure powers + a few extra monomials) with 0 < dim <= max_dim."""
    while True:
        k = rng.randint(2, 3)
        names = [f"x{i}" for i in range(k)]
        gens = [f"x{i}^{rng.randint(2, 4)}" for i in range(k)]
        for _ in range(rng.randint(0, 3)):
            exps = [rng.randint(0, 2) for _ in range(k)]
            if sum(exps) >= 2:
                gens.append("*".join(f"x{i}^{e}" for i, e in enumerate(exps) if e))
        a = ArtinianAlgebra.from_strings(gens, names)
        if a.dim <= max_dim and a.top_degree >= 1:
            return a


def random_monomial_algebras(seed, count, max_dim=30):
    rng = random.Random(seed)
    return [random_monomial_algebra(rng, max_dim) for _ in range(count)]
