import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gridknot import census
from gridknot.grid import GridDiagram, component_count

_CENSUS_CACHE: dict = {}


def census_reps(n: int, knots_only: bool = False) -> list[GridDiagram]:
    """One canonical representative per orbit, cached across the session."""
    key = (n, knots_only)
    if key not in _CENSUS_CACHE:
        filt = census.CensusFilter(knots_only=knots_only)
        _CENSUS_CACHE[key] = census.enumerate_diagrams(n, filt).representatives
    return _CENSUS_CACHE[key]


def knot_reps(n: int) -> list[GridDiagram]:
    return [d for d in census_reps(n, knots_only=True) if component_count(d) == 1]


@pytest.fixture
def stuck8() -> GridDiagram:
    """A stuck trivial 8-grid (found by the census; also hand-checkable)."""
    return GridDiagram(8, ((1, 5), (3, 7), (6, 8), (4, 7), (5, 8), (2, 6), (1, 3), (2, 4)))


@pytest.fixture
def trefoil5() -> GridDiagram:
    return GridDiagram(5, ((1, 3), (2, 4), (3, 5), (1, 4), (2, 5)))
