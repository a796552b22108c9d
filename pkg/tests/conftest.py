import random

import pytest

from shiftrank import BINARY, QQ, PrimeField


@pytest.fixture
def cfg():
    return BINARY


@pytest.fixture
def qq():
    return QQ


@pytest.fixture
def f7():
    return PrimeField(7)


@pytest.fixture
def rnd():
    return random.Random(12345)
