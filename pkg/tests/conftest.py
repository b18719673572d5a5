import pytest

from hyptess.heptagrid import Cell, Region
from hyptess.trilaterals import HypStructure, build


def axis(depth):
    """Leftmost tile of sector 0 at ``depth``; the branch below it is all black."""
    return Cell(0, (0,) * depth)


@pytest.fixture(scope="session")
def deep_strip():
    return Region.strip(axis(20), 45, 150)


@pytest.fixture(scope="session")
def deep_structure(deep_strip):
    return build(deep_strip, 1)


@pytest.fixture(scope="session")
def plane():
    """Structure anchored at depth 0 used only for whole-plane activity queries."""
    return HypStructure(Region.cone(axis(0), 0, origin_depth=0), 5)
