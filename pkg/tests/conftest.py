"""Shared test fixtures and configuration."""

import tempfile
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def rng():
    """Seeded generator for randomized property checks."""
    return np.random.default_rng(12345)


@pytest.fixture
def runner():
    """Create a CLI runner."""
    return CliRunner()


@pytest.fixture
def small_grid():
    """A quick grid covering the half-strip, both edge lines included."""
    from lindelof_lab.harness import GridSpec

    return GridSpec(sigma_min=0.0, sigma_max=0.5, sigma_steps=3, tau_min=1.0, tau_max=100.0, tau_steps=5)


def random_points(rng, n, sigma_range, tau_range):
    """n uniform complex points in a rectangle."""
    sigmas = rng.uniform(*sigma_range, n)
    taus = rng.uniform(*tau_range, n)
    return [complex(s, t) for s, t in zip(sigmas, taus)]
