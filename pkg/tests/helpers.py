"""Shared test utilities: independent oracles and instance generators.

The d'Hondt oracle here deliberately avoids the package's sequential
algorithm: it builds the full quotient table and takes the largest entries
under the same total order (quotient, raw pool, party position), which is
the textbook characterization the sequential method must reproduce.
"""

from __future__ import annotations

import random
from fractions import Fraction

from votexfer import DistrictResult, ElectionInput


def dhondt_quotient_table(pools, seats, party_order=None):
    """Brute-force d'Hondt: the `seats` largest quotients pool/d, d=1..seats.

    Ties order by larger raw pool, then earlier party position.
    """
    order = list(party_order) if party_order is not None else list(pools)
    position = {p: i for i, p in enumerate(order)}
    quotients = []
    for p in order:
        for divisor in range(1, seats + 1):
            quotients.append((Fraction(pools[p], divisor), pools[p], -position[p], p))
    quotients.sort(reverse=True)
    allocated = {p: 0 for p in order}
    for _, _, _, p in quotients[:seats]:
        allocated[p] += 1
    return allocated


def random_pools(rng: random.Random, *, max_parties=6, max_pool=60):
    """Small random pool maps; the narrow value range provokes ties."""
    n = rng.randint(1, max_parties)
    return {f"P{i}": rng.randint(0, max_pool) for i in range(n)}


def random_equal_size_election(
    rng: random.Random,
    *,
    n_parties=2,
    n_districts=3,
    district_total=100,
) -> ElectionInput:
    """Random election where every district casts `district_total` votes."""
    parties = tuple(chr(ord("A") + i) for i in range(n_parties))
    districts = []
    for d in range(n_districts):
        cuts = sorted(rng.randint(0, district_total) for _ in range(n_parties - 1))
        counts = []
        prev = 0
        for c in cuts:
            counts.append(c - prev)
            prev = c
        counts.append(district_total - prev)
        districts.append(DistrictResult(f"d{d}", dict(zip(parties, counts))))
    return ElectionInput(parties, tuple(districts))
