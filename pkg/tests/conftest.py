"""Shared fixtures for the charsum test suite."""
import cmath
import math

import pytest
from hypothesis import settings as hypothesis_settings

from charsum.arithmetic import enumerate_characters, get_context
from charsum.config import get_settings

hypothesis_settings.register_profile("charsum", deadline=None, max_examples=40)
hypothesis_settings.load_profile("charsum")


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are cached per process; tests that patch the environment need a rebuild."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def chars_mod():
    """All characters mod p^m, in enumeration order."""
    def build(p: int, m: int):
        return list(enumerate_characters(get_context(p, m)))
    return build


@pytest.fixture
def e():
    """e(s) = e^{2 pi i s}."""
    def root(s: float) -> complex:
        return cmath.exp(2j * math.pi * s)
    return root
