"""Wigner-function evaluation for coherent-state superpositions.

Two independent evaluation routes are kept deliberately separate so they can
serve as mutual oracles:

* the direct route sums cross-Wigner kernels W_{j,k}(X, P) of the coherent
  dyads (a Gaussian envelope times an interference phase), and
* the Fourier route reconstructs W from the quasi-characteristic function
  G(lambda, eta) = Tr[exp(i(lambda*x + eta*p)) rho] by 2-D quadrature.

All exponents are assembled in full before a single ``exp`` call, so large
separations neither overflow nor underflow intermediate factors.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import fsum, pi

import numpy as np

from .core import CoherentSuperposition, PhasePoint, normalization
from .errors import CutoffTooSmall, NegativeWeight, NonHermitianAccumulation

SQRT2 = math.sqrt(2.0)

# Imaginary residual above this aborts the direct sum (non-Hermitian input).
IMAG_RESIDUAL_HARD = 1e-8

# The separable grid kernel multiplies per-axis factors whose magnitude grows
# like exp(1.5*max|beta|^2); beyond this the scattered route is used instead.
_GRID_KERNEL_BETA_MAX = 12.0


@dataclass(frozen=True)
class CharacteristicPoint:
    """Conjugate point (lam, eta) of the quasi-characteristic function."""

    lam: float
    eta: float

    def __post_init__(self):
        if not (math.isfinite(self.lam) and math.isfinite(self.eta)):
            raise ValueError("characteristic point must be finite")

    def alpha(self) -> complex:
        """Displacement alpha = (i*lam - eta)/sqrt(2) in sigma=1 units."""
        return (1j * self.lam - self.eta) / SQRT2


@dataclass(frozen=True)
class QuadratureSpec:
    """Uniform trapezoidal grid on [-cutoff, cutoff]^2 for the Fourier route."""

    cutoff: float
    n_lambda: int = 512
    n_eta: int = 512

    def __post_init__(self):
        if not (self.cutoff > 0 and math.isfinite(self.cutoff)):
            raise ValueError("cutoff must be positive")
        for n in (self.n_lambda, self.n_eta):
            if n < 16 or n % 2:
                raise ValueError("quadrature sizes must be even and >= 16")


def default_quadrature(state: CoherentSuperposition) -> QuadratureSpec:
    """Cutoff 8*(1 + max|beta|); G decays like exp(-(lam^2+eta^2)/4) beyond
    the displaced centers, so the boundary tail is far below double precision."""
    return QuadratureSpec(cutoff=8.0 * (1.0 + state.max_abs_beta()))


def _centers(beta: complex) -> tuple:
    return SQRT2 * beta.real, SQRT2 * beta.imag


def cross_wigner(beta_j: complex, beta_k: complex, pt: PhasePoint) -> complex:
    """Cross-Wigner kernel of the dyad |beta_j><beta_k| at pt (sigma = 1).

    (1/pi) * exp(-(X - (Xj+Xk)/2)^2 - (P - (Pj+Pk)/2)^2)
           * exp(i[X(Pj-Pk) - P(Xj-Xk) + (Xj*Pk - Xk*Pj)/2])
    with coherent centers Xm = sqrt(2) Re beta_m, Pm = sqrt(2) Im beta_m.
    """
    xj, pj = _centers(complex(beta_j))
    xk, pk = _centers(complex(beta_k))
    expo = (
        -((pt.x - 0.5 * (xj + xk)) ** 2)
        - (pt.p - 0.5 * (pj + pk)) ** 2
        + 1j * (pt.x * (pj - pk) - pt.p * (xj - xk) + 0.5 * (xj * pk - xk * pj))
    )
    return cmath.exp(expo) / pi


def wigner_direct(state: CoherentSuperposition, pt: PhasePoint) -> float:
    """W(X, P) = Re(N^-1 sum_{j,k} rho_{j,k} W_{j,k}).

    Reference scalar path: accumulates the full complex double sum with exact
    (fsum) summation and checks the imaginary residual, which vanishes for
    Hermitian coefficient matrices.
    """
    norm = normalization(state)
    re_parts = []
    im_parts = []
    for j, bj in enumerate(state.betas):
        for k, bk in enumerate(state.betas):
            term = state.coeffs[j, k] * cross_wigner(bj, bk, pt)
            re_parts.append(term.real)
            im_parts.append(term.imag)
    total = complex(fsum(re_parts), fsum(im_parts)) / norm
    if abs(total.imag) > IMAG_RESIDUAL_HARD:
        raise NonHermitianAccumulation(
            f"imaginary residual {abs(total.imag):.3e} exceeds {IMAG_RESIDUAL_HARD:.0e}"
        )
    return total.real


class PairKernel:
    """Vectorized direct-route evaluator.

    The cross-Wigner exponent splits as u(j) + conj(u(k)) - beta_j*conj(beta_k)
    with u depending on one component only, so a superposition evaluates as a
    Hermitian quadratic form in the per-component factors h_j = exp(u(j)).
    On separable (x, p) grids h factorizes further into per-axis vectors and
    the whole grid reduces to one complex matrix product.

    ``PairKernel.raw(betas, coeffs)`` builds the unnormalized field
    (norm = 1); the solver uses pairs of raw kernels to evaluate
    coherence-parametrized families without re-summing per parameter value.
    """

    def __init__(self, state: CoherentSuperposition):
        self._init(state.beta_array(), np.asarray(state.coeffs), normalization(state))

    @classmethod
    def raw(cls, betas, coeffs) -> "PairKernel":
        kernel = cls.__new__(cls)
        kernel._init(np.asarray(betas, dtype=complex), np.asarray(coeffs, dtype=complex), 1.0)
        return kernel

    def _init(self, b: np.ndarray, coeffs: np.ndarray, norm: float):
        self.norm = norm
        self.max_abs_beta = float(np.max(np.abs(b))) if len(b) else 0.0
        self.xc = SQRT2 * b.real
        self.pc = SQRT2 * b.imag
        # pair matrix rho_{jk} * exp(-beta_j conj(beta_k)); Hermitian
        self.pair = coeffs * np.exp(-b[:, None] * np.conj(b[None, :]))

    def _h(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        """Per-component factors h[j, ipt] at scattered points."""
        xc, pc = self.xc[:, None], self.pc[:, None]
        u = (
            x[None, :] * (xc + 1j * pc)
            + p[None, :] * (pc - 1j * xc)
            - 0.25 * (xc**2 + pc**2)
            - 0.5 * (x[None, :] ** 2 + p[None, :] ** 2)
        )
        return np.exp(u)

    def points(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        """W at paired coordinate arrays (any shape)."""
        x = np.asarray(x, dtype=float)
        p = np.asarray(p, dtype=float)
        shape = x.shape
        h = self._h(x.ravel(), p.ravel())
        vals = np.einsum("jn,jk,kn->n", h, self.pair, np.conj(h)).real
        return (vals / (pi * self.norm)).reshape(shape)

    def grid(self, x_nodes: np.ndarray, p_nodes: np.ndarray) -> np.ndarray:
        """W on the tensor grid, shape (len(x_nodes), len(p_nodes))."""
        if self.max_abs_beta > _GRID_KERNEL_BETA_MAX:
            xg, pg = np.meshgrid(x_nodes, p_nodes, indexing="ij")
            return self.points(xg, pg)
        x = np.asarray(x_nodes, dtype=float)
        p = np.asarray(p_nodes, dtype=float)
        xc, pc = self.xc[:, None], self.pc[:, None]
        ax = np.exp(x[None, :] * (xc + 1j * pc) - 0.5 * x[None, :] ** 2 - 0.25 * xc**2)
        bp = np.exp(p[None, :] * (pc - 1j * xc) - 0.5 * p[None, :] ** 2 - 0.25 * pc**2)
        n = len(self.xc)
        ju, ku = np.triu_indices(n)
        w = self.pair[ju, ku] * np.where(ju == ku, 1.0, 2.0)
        lam = ax[ju] * np.conj(ax[ku])          # (npairs, nx)
        tht = bp[ju] * np.conj(bp[ku])          # (npairs, np)
        vals = (lam.T @ (w[:, None] * tht)).real
        return vals / (pi * self.norm)


def wigner_direct_points(state: CoherentSuperposition, x, p) -> np.ndarray:
    return PairKernel(state).points(np.asarray(x, float), np.asarray(p, float))


def wigner_direct_grid(state: CoherentSuperposition, x_nodes, p_nodes) -> np.ndarray:
    return PairKernel(state).grid(np.asarray(x_nodes, float), np.asarray(p_nodes, float))


def quasi_characteristic(state: CoherentSuperposition, cp: CharacteristicPoint) -> complex:
    """Closed form of G on coherent components.

    G = exp(-|alpha|^2/2) N^-1 sum_{j,k} rho_{j,k}
        exp(-conj(alpha) beta_j) exp(alpha conj(beta_k)) <beta_k|beta_j>
    with alpha = (i lam - eta)/sqrt(2); G(0, 0) = 1.
    """
    norm = normalization(state)
    alpha = cp.alpha()
    b = state.beta_array()
    expo = -np.conj(alpha) * b[:, None] + alpha * np.conj(b[None, :])
    total = complex(np.sum(state.coeffs * state.overlap_matrix() * np.exp(expo)))
    return cmath.exp(-0.5 * abs(alpha) ** 2) * total / norm


def characteristic_grid(state: CoherentSuperposition, lams, etas) -> np.ndarray:
    """G on a tensor (lambda, eta) grid, shape (len(lams), len(etas)).

    The pair exponent separates per axis, so each (j, k) pair contributes an
    outer product of one lambda vector and one eta vector.
    """
    norm = normalization(state)
    lams = np.asarray(lams, dtype=float)
    etas = np.asarray(etas, dtype=float)
    b = state.beta_array()
    coeff = np.asarray(state.coeffs) * state.overlap_matrix()
    n = len(b)
    out = np.zeros((len(lams), len(etas)), dtype=complex)
    for j in range(n):
        for k in range(n):
            fl = np.exp(1j * lams * (b[j] + np.conj(b[k])) / SQRT2 - lams**2 / 4.0)
            fe = np.exp(etas * (b[j] - np.conj(b[k])) / SQRT2 - etas**2 / 4.0)
            out += coeff[j, k] * np.outer(fl, fe)
    return out / norm


def _quad_nodes(quad: QuadratureSpec):
    lams = np.linspace(-quad.cutoff, quad.cutoff, quad.n_lambda)
    etas = np.linspace(-quad.cutoff, quad.cutoff, quad.n_eta)
    wl = np.full(quad.n_lambda, lams[1] - lams[0])
    wl[0] *= 0.5
    wl[-1] *= 0.5
    we = np.full(quad.n_eta, etas[1] - etas[0])
    we[0] *= 0.5
    we[-1] *= 0.5
    return lams, etas, wl, we


def _check_boundary(g: np.ndarray):
    edge = max(
        float(np.max(np.abs(g[0, :]))),
        float(np.max(np.abs(g[-1, :]))),
        float(np.max(np.abs(g[:, 0]))),
        float(np.max(np.abs(g[:, -1]))),
    )
    if edge > 1e-10:
        raise CutoffTooSmall(f"|G| = {edge:.3e} at the quadrature boundary")


def wigner_grid_from_characteristic(
    state: CoherentSuperposition, x_nodes, p_nodes, quad: QuadratureSpec
) -> np.ndarray:
    """Fourier reconstruction W = (1/4 pi^2) int dlam deta e^{-i lam X - i eta P} G
    on a tensor grid, by trapezoidal quadrature."""
    lams, etas, wl, we = _quad_nodes(quad)
    g = characteristic_grid(state, lams, etas)
    _check_boundary(g)
    x_nodes = np.asarray(x_nodes, dtype=float)
    p_nodes = np.asarray(p_nodes, dtype=float)
    u = np.exp(-1j * np.outer(x_nodes, lams)) * wl[None, :]
    v = np.exp(-1j * np.outer(etas, p_nodes)) * we[:, None]
    vals = (u @ g @ v).real / (4.0 * pi**2)
    return vals


def wigner_from_characteristic(
    state: CoherentSuperposition, pt: PhasePoint, quad: QuadratureSpec
) -> float:
    vals = wigner_grid_from_characteristic(state, [pt.x], [pt.p], quad)
    return float(vals[0, 0])


def wigner_diagonal_mixture(weights, pt: PhasePoint) -> float:
    """(1/pi) sum_i w_i exp(-(X - sqrt2 Re b_i)^2 - (P - sqrt2 Im b_i)^2).

    ``weights`` is a sequence of (beta, w) with w >= 0 summing to 1.  The
    result is a sum of nonnegative terms, hence always >= 0.
    """
    ws = [float(w) for _, w in weights]
    for w in ws:
        if w < 0:
            raise NegativeWeight(f"weight {w} is negative")
    if abs(fsum(ws) - 1.0) > 1e-9:
        raise ValueError(f"weights must sum to 1, got {fsum(ws)!r}")
    terms = []
    for (beta, w) in weights:
        xc, pc = _centers(complex(beta))
        terms.append(float(w) * math.exp(-((pt.x - xc) ** 2) - (pt.p - pc) ** 2))
    return fsum(terms) / pi


def wigner_physical(state: CoherentSuperposition, x_phys: float, p_phys: float) -> float:
    """W at a physical-units point: x in length units, p in inverse length.

    Internally everything is expressed in units of state.sigma; the map
    (x, p) -> (x/sigma, p*sigma) is area-preserving, so no Jacobian factor.
    """
    return wigner_direct(state, PhasePoint(x_phys / state.sigma, p_phys * state.sigma))


def integrate_wigner(state: CoherentSuperposition, x_nodes, p_nodes) -> float:
    """Trapezoidal integral of W over the tensor grid (normalization check)."""
    vals = wigner_direct_grid(state, x_nodes, p_nodes)
    return float(np.trapezoid(np.trapezoid(vals, np.asarray(p_nodes, float), axis=1),
                              np.asarray(x_nodes, float)))
