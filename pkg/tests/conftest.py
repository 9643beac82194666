import os
import sys
import random

import pytest

# Add the repository root to the path to import the src package
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.core.words import parse_word

N22_WORD_TEXT = "E^3 O^1 E^2 O^1 E^1 O^2 E^1"
N14_WORD_TEXT = "E^3 O^1 E^2 O^1 E^1 O^3 E^1"
N6_WORD_TEXT = "E^3 O^2 E^1"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale runs that take tens of seconds")


@pytest.fixture
def rng():
    return random.Random(20240613)


@pytest.fixture
def n22_word():
    return parse_word(N22_WORD_TEXT)


@pytest.fixture
def n14_word():
    return parse_word(N14_WORD_TEXT)


@pytest.fixture
def n6_word():
    return parse_word(N6_WORD_TEXT)
