"""Shared fixtures: small graphs whose spectra are known in closed form."""

import numpy as np
import pytest

from gbfinterp import eigendecompose, generate_graph, normalized_laplacian
from gbfinterp.graphs import connected_random_geometric


def spectrum_of(graph):
    return eigendecompose(normalized_laplacian(graph))


@pytest.fixture(scope="session")
def path2():
    """Two nodes, one edge: eigenvalues 0 and 2."""
    return spectrum_of(generate_graph("path", n=2))


@pytest.fixture(scope="session")
def path3():
    return spectrum_of(generate_graph("path", n=3))


@pytest.fixture(scope="session")
def cycle4():
    """Eigenvalue 1 appears twice, so the spectrum has a nontrivial cluster."""
    return spectrum_of(generate_graph("cycle", n=4))


@pytest.fixture(scope="session")
def cycle8():
    return spectrum_of(generate_graph("cycle", n=8))


@pytest.fixture(scope="session")
def complete3():
    return spectrum_of(generate_graph("complete", n=3))


@pytest.fixture(scope="session")
def rand12():
    """A small connected random geometric graph with a generic spectrum."""
    return spectrum_of(connected_random_geometric(12, 0.45, seed=9))


@pytest.fixture()
def rng():
    return np.random.default_rng(42)
