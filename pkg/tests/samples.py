"""Random inputs shared by several test modules."""

from __future__ import annotations

import random

from higgscoha.tautalg.chern import KunnethClass
from higgscoha.tautalg.rings import FreeRing, Tensor, XCohRing


def random_class(rng: random.Random, g: int, max_degree: int, n_terms: int = 6, rank: int = 1) -> KunnethClass:
    """``1 + (sparse even-total-degree terms)`` in ``H (x) H*(X)``."""
    ring = FreeRing(g)
    rings = (ring, XCohRing(g))
    gens = ring.generators(max_degree)
    terms = {((), 0): 1}
    value = Tensor(rings, terms)
    for _ in range(n_terms):
        mono = Tensor.one((ring,))
        for _ in range(rng.randrange(1, 3)):
            mono = mono.mul(Tensor.basis((ring,), ((rng.choice(gens),),)))
        for (m,), c in mono.terms.items():
            deg = ring.degree(m)
            if deg > max_degree:
                continue
            ps = [p for p in range(2 * g + 2) if (deg + XCohRing(g).degree(p)) % 2 == 0 and deg + XCohRing(g).degree(p) > 0]
            p = rng.choice(ps)
            value = value + Tensor.basis(rings, (m, p), c * rng.randrange(-3, 4))
    return KunnethClass(value, rank)
