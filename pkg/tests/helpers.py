"""Shared fixtures for the test suite: named complexes and seeded random families."""

import random

from momangle.complexes import SimplicialComplex

OCTAHEDRON = SimplicialComplex.from_facets(
    6, [[1, 3, 5], [1, 3, 6], [1, 4, 5], [1, 4, 6], [2, 3, 5], [2, 3, 6], [2, 4, 5], [2, 4, 6]]
)
PENTAGON = SimplicialComplex.from_facets(5, [[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]])
RP2 = SimplicialComplex.from_facets(
    6,
    [
        [1, 2, 3],
        [1, 2, 6],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [2, 3, 5],
        [2, 4, 5],
        [2, 4, 6],
        [3, 4, 6],
        [3, 5, 6],
    ],
)
PATH_P3 = SimplicialComplex.from_facets(3, [[1, 2], [2, 3]])
THREE_POINTS = SimplicialComplex.from_facets(3, [[1], [2], [3]])
GHOST_POINT = SimplicialComplex.empty(1)


def random_complex(rng: random.Random, m: int, max_facets: int = 6) -> SimplicialComplex:
    """Closure of up to max_facets random vertex sets on [m]; never VOID."""
    facets = [rng.getrandbits(m) for _ in range(rng.randint(0, max_facets))]
    return SimplicialComplex.from_facets(m, facets, include_empty=True)


def complex_family(seed: int, count: int, max_m: int = 5) -> list[SimplicialComplex]:
    """Distinct random complexes on at most max_m vertices, in generation order."""
    rng = random.Random(seed)
    sizes = list(range(1, max_m + 1)) + [max_m] * 6
    seen: set[SimplicialComplex] = set()
    family = []
    attempts = 0
    while len(family) < count and attempts < 200 * count:
        attempts += 1
        K = random_complex(rng, rng.choice(sizes), max_facets=7)
        if K not in seen:
            seen.add(K)
            family.append(K)
    return family
