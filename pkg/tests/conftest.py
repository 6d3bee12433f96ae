"""Shared fixtures: seeded random connection matrices."""

import numpy as np
import pytest

from contact_interactions.schema import Mat2R

SAMPLE_COUNT = 10_000


def _signed(rng: np.random.Generator, low: float, high: float, size: int) -> np.ndarray:
    return rng.choice([-1.0, 1.0], size=size) * rng.uniform(low, high, size=size)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def unimodular_matrices(rng) -> list[Mat2R]:
    """Random det-1 matrices with |t|, |u| >= 0.1 and s fixed by the determinant."""
    t = _signed(rng, 0.1, 3.0, SAMPLE_COUNT)
    u = _signed(rng, 0.1, 3.0, SAMPLE_COUNT)
    v = rng.uniform(-3.0, 3.0, size=SAMPLE_COUNT)
    s = (1.0 + u * v) / t
    return [Mat2R(m11=float(a), m12=float(b), m21=float(c), m22=float(d)) for a, b, c, d in zip(t, v, u, s)]


@pytest.fixture
def upper_matrices(rng) -> list[Mat2R]:
    """Random det-1 matrices with u = 0."""
    t = _signed(rng, 0.1, 3.0, SAMPLE_COUNT)
    v = _signed(rng, 0.1, 3.0, SAMPLE_COUNT)
    return [Mat2R(m11=float(a), m12=float(b), m21=0.0, m22=float(1.0 / a)) for a, b in zip(t, v)]


@pytest.fixture
def symmetric_matrices(rng) -> list[Mat2R]:
    """Random det-1 matrices with t = s."""
    t = rng.uniform(-3.0, 3.0, size=SAMPLE_COUNT)
    u = _signed(rng, 0.1, 3.0, SAMPLE_COUNT)
    v = (t**2 - 1.0) / u
    return [Mat2R(m11=float(a), m12=float(b), m21=float(c), m22=float(a)) for a, b, c in zip(t, v, u)]
