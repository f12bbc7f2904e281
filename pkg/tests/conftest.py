import random

import pytest

from galois_locus import curve_make, field_make, parse_form
from galois_locus.geometry import ProjPoint


@pytest.fixture(scope="session")
def F7():
    return field_make(7)


@pytest.fixture(scope="session")
def F13():
    return field_make(13)


@pytest.fixture(scope="session")
def fermat_cubic(F7):
    return curve_make(parse_form("X^3+Y^3+Z^3", F7))


@pytest.fixture(scope="session")
def control_cubic(F7):
    return curve_make(parse_form("X^3+Y^3+Z^3-X*Y*Z", F7))


@pytest.fixture(scope="session")
def takahashi4(F13):
    return curve_make(parse_form("X^4+X^2*Z^2+Y^4", F13))


@pytest.fixture(scope="session")
def takahashi6(F13):
    return curve_make(parse_form("X^6+X^3*Z^3+Y^6", F13))


def pt(F, *c):
    return ProjPoint(F, [F.from_int(x) for x in c])


@pytest.fixture
def rng():
    return random.Random(12345)
