import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.tipcalc import TreeParams  # noqa: E402


@pytest.fixture
def tree():
    """TreeParams factory so tests read tree(150, 0.8)."""
    return TreeParams


@pytest.fixture
def dimensions_tree():
    # the top/side/bottom values quoted for the 35 degree dimension example
    # reproduce at r = 0.65
    return TreeParams(35.0, 0.65)
