import pytest

from faddeeva_ice.errmap import DEGRADED_GRID_TEXT, HEADLINE_GRID_TEXT, GridSpec
from faddeeva_ice.oracle import w_ref_array


def _reference(text):
    grid = GridSpec.parse(text)
    values, agreement, methods = w_ref_array(grid.mesh())
    return grid, values, agreement, methods


@pytest.fixture(scope="session")
def headline_reference():
    """Oracle values on the 200x200 map, x in (0, 15), y in (1e-4, 15)."""
    return _reference(HEADLINE_GRID_TEXT)


@pytest.fixture(scope="session")
def degraded_reference():
    """Oracle values on the 200x200 map, x in (1e-4, 15), y in (1e-6, 1e-4)."""
    return _reference(DEGRADED_GRID_TEXT)
