"""Self-verification suites: each checks one structural identity of the
library against an independently coded route, over seeded random draws.

All suites are deterministic given the seed and return a :class:`SuiteResult`
rather than raising, so the CLI can render a pass/fail table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import PhasePoint
from .fock import characteristic_displacement, characteristic_sequential
from .sampling import random_diagonal_mixture, random_superposition
from .solver import certify_negativity, default_spec
from .wigner import (
    CharacteristicPoint,
    default_quadrature,
    quasi_characteristic,
    wigner_direct,
    wigner_direct_grid,
    wigner_grid_from_characteristic,
    wigner_physical,
)

QNDM_SPLIT_TOL = 1e-10
QNDM_CLOSED_TOL = 1e-8
RESCALE_TOL = 1e-10
DIAGONAL_FLOOR = -1e-12
PATH_TOL = 1e-6


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


def qndm_suite(seed: int = 0, draws: int = 100, dim: int = 64) -> SuiteResult:
    """Sequential-coupling trace vs single displacement vs closed form.

    Random 2-component states with |beta| <= 2 and couplings in [-4, 4]^2.
    """
    rng = np.random.default_rng(seed)
    worst_split = 0.0
    worst_closed = 0.0
    for _ in range(draws):
        state = random_superposition(rng, 2, beta_max=2.0)
        cp = CharacteristicPoint(rng.uniform(-4, 4), rng.uniform(-4, 4))
        g_seq = characteristic_sequential(state, cp, dim)
        g_disp = characteristic_displacement(state, cp, dim)
        g_closed = quasi_characteristic(state, cp)
        worst_split = max(worst_split, abs(g_seq - g_disp))
        worst_closed = max(worst_closed, abs(g_seq - g_closed))
    passed = worst_split <= QNDM_SPLIT_TOL and worst_closed <= QNDM_CLOSED_TOL
    return SuiteResult(
        "qndm-identity",
        passed,
        f"max|G_seq-G_disp|={worst_split:.2e} (tol {QNDM_SPLIT_TOL:.0e}), "
        f"max|G_fock-G_closed|={worst_closed:.2e} (tol {QNDM_CLOSED_TOL:.0e})",
    )


def rescaling_suite(seed: int = 0, draws: int = 20) -> SuiteResult:
    """Length rescaling: with sigma -> c*sigma the physical evaluation at
    (c x, p/c) must reproduce W(x, p) pointwise."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        n = int(rng.integers(1, 4))
        base = random_superposition(rng, n, beta_max=2.0)
        for c in (0.5, 2.0):
            scaled = base.__class__(betas=base.betas, coeffs=base.coeffs, sigma=c)
            for _ in range(5):
                x, p = rng.uniform(-3, 3, size=2)
                w_ref = wigner_physical(base, x, p)
                w_scaled = wigner_physical(scaled, c * x, p / c)
                worst = max(worst, abs(w_scaled - w_ref))
    return SuiteResult(
        "rescaling-invariance",
        worst <= RESCALE_TOL,
        f"max pointwise deviation {worst:.2e} (tol {RESCALE_TOL:.0e})",
    )


def diagonal_positivity_suite(seed: int = 0, draws: int = 50) -> SuiteResult:
    """Diagonal mixtures of coherent states have nonnegative Wigner functions:
    the refined global minimum must stay above -1e-12."""
    rng = np.random.default_rng(seed)
    worst = np.inf
    for _ in range(draws):
        state = random_diagonal_mixture(rng, max_components=8, beta_max=3.0)
        cert = certify_negativity(state, default_spec(state.max_abs_beta()))
        worst = min(worst, cert.min_value)
    return SuiteResult(
        "diagonal-positivity",
        worst >= DIAGONAL_FLOOR,
        f"smallest refined minimum {worst:.2e} (floor {DIAGONAL_FLOOR:.0e})",
    )


def path_equivalence_suite(seed: int = 0, draws: int = 3, grid_n: int = 21) -> SuiteResult:
    """Direct cross-Wigner sum vs Fourier reconstruction of G, plus agreement
    of the scalar reference sum with the vectorized kernel."""
    rng = np.random.default_rng(seed)
    worst_path = 0.0
    worst_kernel = 0.0
    for _ in range(draws):
        state = random_superposition(rng, 2, beta_max=2.0)
        half = np.sqrt(2.0) * state.max_abs_beta() + 3.0
        xs = np.linspace(-half, half, grid_n)
        ps = np.linspace(-half, half, grid_n)
        direct_ref = np.array(
            [[wigner_direct(state, PhasePoint(x, p)) for p in ps] for x in xs]
        )
        vectorized = wigner_direct_grid(state, xs, ps)
        fourier = wigner_grid_from_characteristic(state, xs, ps, default_quadrature(state))
        worst_kernel = max(worst_kernel, float(np.max(np.abs(vectorized - direct_ref))))
        worst_path = max(worst_path, float(np.max(np.abs(fourier - direct_ref))))
    passed = worst_path <= PATH_TOL and worst_kernel <= 1e-12
    return SuiteResult(
        "path-equivalence",
        passed,
        f"max|fourier-direct|={worst_path:.2e} (tol {PATH_TOL:.0e}), "
        f"max|kernel-direct|={worst_kernel:.2e} (tol 1e-12)",
    )


def run_all(seed: int = 0) -> list:
    return [
        qndm_suite(seed),
        rescaling_suite(seed),
        diagonal_positivity_suite(seed),
        path_equivalence_suite(seed),
    ]
