"""Seeded random state factories for verification suites and tests."""

from __future__ import annotations

import numpy as np

from .core import CoherentSuperposition


def random_betas(rng: np.random.Generator, n: int, beta_max: float) -> np.ndarray:
    """n amplitudes uniform in the disk |beta| <= beta_max."""
    radius = beta_max * np.sqrt(rng.uniform(size=n))
    angle = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return radius * np.exp(1j * angle)


def random_superposition(
    rng: np.random.Generator, n: int, beta_max: float, sigma: float = 1.0
) -> CoherentSuperposition:
    """Random PSD Hermitian coefficient matrix over random coherent centers."""
    betas = random_betas(rng, n, beta_max)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    coeffs = a @ a.conj().T
    coeffs /= np.trace(coeffs).real
    return CoherentSuperposition(betas=tuple(betas), coeffs=coeffs, sigma=sigma)


def random_diagonal_mixture(
    rng: np.random.Generator, max_components: int, beta_max: float
) -> CoherentSuperposition:
    """Incoherent mixture: diagonal coefficient matrix with weights summing to 1."""
    n = int(rng.integers(1, max_components + 1))
    betas = random_betas(rng, n, beta_max)
    w = rng.uniform(0.1, 1.0, size=n)
    w /= w.sum()
    return CoherentSuperposition(betas=tuple(betas), coeffs=np.diag(w).astype(complex))
