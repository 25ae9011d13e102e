import itertools
from collections import deque

import pytest


def closure(gens, degree):
    """All elements generated by ``gens`` (tuples of images), by breadth-first search."""
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[i] for i in x)  # g after x
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def tuple_orbit_count(elements, degree, k):
    """Number of orbits on ordered k-tuples of distinct points, plus whether the action is free."""
    tuples = list(itertools.permutations(range(degree), k))
    start = tuples[0]
    orbit = {tuple(g[x] for x in start) for g in elements}
    free = len(orbit) == len(elements)
    return len(orbit) == len(tuples), free


@pytest.fixture
def brute():
    return {"closure": closure, "tuple_orbit_count": tuple_orbit_count}
