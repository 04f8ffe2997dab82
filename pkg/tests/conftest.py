import pytest

from tscalc.scale import canonicalize


@pytest.fixture
def mixed_scale():
    """One dense block with an isolated point above it."""
    return canonicalize([(0.0, 1.0), 2.0])


@pytest.fixture
def full_mixed_scale():
    """The builtin mixed fixture: two blocks and two isolated points."""
    return canonicalize([(0.0, 1.0), 2.0, 3.0, (4.0, 5.0)])


@pytest.fixture
def unit_interval():
    return canonicalize([(0.0, 1.0)])


@pytest.fixture
def integers_window():
    """Integer lattice 0..5."""
    return canonicalize([float(k) for k in range(6)])
