"""Shared fixtures: the reflexive polygon census is computed once per session."""

import pytest

from toric_dh.enumeration import enumerate_reflexive_polygons
from toric_dh.lattice import is_delzant


@pytest.fixture(scope="session")
def reflexive_polygons():
    return enumerate_reflexive_polygons()


@pytest.fixture(scope="session")
def delzant_polygons(reflexive_polygons):
    return [p for p in reflexive_polygons if is_delzant(p)]
