"""Shared helpers for the test suite."""

import numpy as np
import pytest

from qdt import AlternativeBasis, measure_from_basis, random_state, random_unitary


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (z + z.conj().T) / 2


def random_basis(dim: int, seed, labels_prefix: str = "A") -> AlternativeBasis:
    u = random_unitary(dim, seed)
    labels = tuple(f"{labels_prefix}{i}" for i in range(dim))
    return AlternativeBasis(labels, u.T.copy())


def random_measure(dim: int, seed, labels_prefix: str = "A"):
    return measure_from_basis(random_basis(dim, seed, labels_prefix))


def random_unit_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20231115)


__all__ = [
    "random_hermitian",
    "random_basis",
    "random_measure",
    "random_unit_vector",
    "random_state",
    "random_unitary",
]
