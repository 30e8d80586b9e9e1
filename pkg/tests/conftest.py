"""Shared fixtures: small fields and the standard power maps."""

import pytest

from sumfree_cli.gf2n import FieldContext
from sumfree_cli.vecfun import power_map


@pytest.fixture
def gf16():
    return FieldContext.default(4)


@pytest.fixture
def gf32():
    return FieldContext.default(5)


@pytest.fixture
def gf64():
    return FieldContext.default(6)


@pytest.fixture
def x3(gf32):
    return power_map(gf32, 3)


@pytest.fixture
def x7(gf32):
    return power_map(gf32, 7)


@pytest.fixture
def x30(gf32):
    return power_map(gf32, 30)
