"""Truncated number-basis oracle for the quasi-characteristic function.

Everything here is deliberately independent of the closed forms in
:mod:`wnl.wigner`: operators are built as explicit matrices, exponentials go
through spectral decompositions of the Hermitian generators, and the two
orderings of the coupling (sequential x/p split vs. a single displacement
exponential) are evaluated as written so their equality can be checked
numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CoherentSuperposition, normalization
from .errors import TruncationTooSmall

DEFAULT_DIM = 64


def required_dim(beta_abs: float) -> int:
    """Tail bound dim >= |beta|^2 + 8*sqrt(|beta|^2 + 1) for a clean coherent
    expansion."""
    b2 = beta_abs**2
    return int(math.ceil(b2 + 8.0 * math.sqrt(b2 + 1.0)))


@dataclass(frozen=True)
class FockOperatorSet:
    """Matrices a, a_dag, x, p on the dim-dimensional truncated Fock space."""

    dim: int
    a: np.ndarray
    a_dag: np.ndarray
    x: np.ndarray
    p: np.ndarray


def fock_operators(dim: int) -> FockOperatorSet:
    """a[m, n] = sqrt(n) delta_{m, n-1}; x = (a_dag + a)/sqrt2; p = i(a_dag - a)/sqrt2.

    The commutator [x, p] equals i*I on the interior (dim-1) block only; the
    corner element is a truncation artifact.
    """
    if dim < 8:
        raise ValueError(f"dim must be >= 8, got {dim}")
    a = np.diag(np.sqrt(np.arange(1, dim)), k=1).astype(complex)
    a_dag = a.conj().T
    x = (a_dag + a) / math.sqrt(2)
    p = 1j * (a_dag - a) / math.sqrt(2)
    return FockOperatorSet(dim=dim, a=a, a_dag=a_dag, x=x, p=p)


@dataclass(frozen=True)
class FockState:
    """Truncated amplitude vector; norm deficit is bounded at construction."""

    dim: int
    amplitudes: np.ndarray


def coherent_fock(beta: complex, dim: int) -> FockState:
    """Coherent state |beta> as amplitudes e^{-|beta|^2/2} beta^n / sqrt(n!)."""
    beta = complex(beta)
    need = required_dim(abs(beta))
    if dim < need:
        raise TruncationTooSmall(f"dim {dim} < required {need} for |beta|={abs(beta):.3f}")
    n = np.arange(dim)
    # log-space assembly keeps large-|beta| tails finite
    log_fact = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, dim)))))
    mag = np.exp(-0.5 * abs(beta) ** 2 + n * np.log(abs(beta)) - 0.5 * log_fact) \
        if beta != 0 else np.concatenate(([1.0], np.zeros(dim - 1)))
    phase = np.exp(1j * n * np.angle(beta)) if beta != 0 else np.ones(dim)
    amps = mag * phase
    deficit = 1.0 - float(np.vdot(amps, amps).real)
    if deficit > 1e-10:
        raise TruncationTooSmall(f"norm deficit {deficit:.3e} exceeds 1e-10")
    return FockState(dim=dim, amplitudes=amps)


def density_matrix(state: CoherentSuperposition, dim: int) -> np.ndarray:
    """rho = N^-1 sum_{j,k} rho_{j,k} |beta_j><beta_k| in the truncated basis."""
    norm = normalization(state)
    vecs = np.stack([coherent_fock(b, dim).amplitudes for b in state.betas])
    return np.einsum("jk,jm,kn->mn", np.asarray(state.coeffs), vecs, np.conj(vecs)) / norm


def expm_i_hermitian(h: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """exp(i * scale * h) for Hermitian h via spectral decomposition."""
    evals, evecs = np.linalg.eigh(h)
    return (evecs * np.exp(1j * scale * evals)) @ evecs.conj().T


def characteristic_sequential(
    state: CoherentSuperposition, cp, dim: int = DEFAULT_DIM
) -> complex:
    """G as the sandwiched trace of the split coupling,
    Tr[e^{i lam x/2} e^{i eta p/2} rho e^{i eta p/2} e^{i lam x/2}]."""
    ops = fock_operators(dim)
    rho = density_matrix(state, dim)
    ux = expm_i_hermitian(ops.x, 0.5 * cp.lam)
    up = expm_i_hermitian(ops.p, 0.5 * cp.eta)
    return complex(np.trace(ux @ up @ rho @ up @ ux))


def characteristic_displacement(
    state: CoherentSuperposition, cp, dim: int = DEFAULT_DIM
) -> complex:
    """G as a single exponential, Tr[e^{i(lam x + eta p)} rho].

    Equality with :func:`characteristic_sequential` is the numerically
    verified Zassenhaus-split identity.
    """
    ops = fock_operators(dim)
    rho = density_matrix(state, dim)
    u = expm_i_hermitian(cp.lam * ops.x + cp.eta * ops.p)
    return complex(np.trace(u @ rho))
