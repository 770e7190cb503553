import functools

import pytest

from cmpoly.jets import JetSequence
from cmpoly.liegroup import resolve_space
from cmpoly.minpoly import minimal_polynomial


@functools.lru_cache(maxsize=None)
def sequence(space: str) -> JetSequence:
    return JetSequence.from_presentation(resolve_space(space))


@functools.lru_cache(maxsize=None)
def minpoly(space: str, seed: int = 42):
    return minimal_polynomial(sequence(space), seed=seed)


@pytest.fixture(scope="session")
def h3():
    return sequence("heisenberg3")


@pytest.fixture(scope="session")
def h3_min():
    return minpoly("heisenberg3")
