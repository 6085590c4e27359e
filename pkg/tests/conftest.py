"""Shared fixtures. Every randomized suite seeds from SEED."""

import random
from itertools import combinations_with_replacement

import pytest

from satlab.config import DEFAULT_SEED, Config
from satlab.hypergraph import Pattern

SEED = DEFAULT_SEED


def sorted_patterns(d, n):
    """Every undirected pattern with d sizes in 1..n."""
    return [Pattern(n=n, p=p) for p in combinations_with_replacement(range(1, n + 1), d)]


def small_grid(max_d, max_n, max_cells=None):
    """(d, n) pairs with d <= max_d and n <= max_n, optionally capped by n^d."""
    return [
        (d, n)
        for d in range(1, max_d + 1)
        for n in range(1, max_n + 1)
        if max_cells is None or n ** d <= max_cells
    ]


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(autouse=True)
def _single_worker(monkeypatch):
    """Searches run in-process unless a test asks for workers explicitly."""
    monkeypatch.setattr(Config, "WORKERS", 1)
    monkeypatch.setattr(Config, "BUDGET", 5_000_000)
    monkeypatch.setattr(Config, "SYMMETRY", False)
