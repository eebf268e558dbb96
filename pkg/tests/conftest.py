import functools

import pytest

from quotientopes.congruence import Congruence
from quotientopes.shards import enumerate_upper_ideals


@functools.lru_cache(maxsize=None)
def ideals(n, essential_only):
    return tuple(enumerate_upper_ideals(n, essential_only=essential_only))


@pytest.fixture(scope="session")
def essential_ideals_4():
    return ideals(4, True)


@pytest.fixture(scope="session")
def all_ideals_4():
    return ideals(4, False)


@pytest.fixture(scope="session")
def essential_quotientopes_4(essential_ideals_4):
    from quotientopes.quotientope import build_quotientope

    return tuple(build_quotientope(Congruence(I)) for I in essential_ideals_4)
