"""Closed-form machinery for two-component cat states on the position axis.

The canonical configuration has components at beta = +/- re_beta (real), with
populations cos^2(theta), sin^2(theta) and off-diagonal coherence
Delta * sin(theta) cos(theta) e^{i phi}.  The Wigner function factors through
the quadratic polynomial

    P(Z) = cos^2(theta) Z^2 + b Z + sin^2(theta),   Z = e^{2 sqrt2 X re_beta},

whose vertex value decides negativity: W dips below zero somewhere iff the
coherence exceeds the critical value exp(-2 re_beta^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .core import CoherentSuperposition, PhasePoint
from .errors import NotNegative

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class CatParams:
    theta: float
    delta: float
    phi: float
    re_beta: float

    def __post_init__(self):
        if not 0.0 < self.theta < math.pi / 2:
            raise ValueError("theta must lie strictly inside (0, pi/2)")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError("delta must lie in [0, 1]")
        if self.re_beta <= 0:
            raise ValueError("re_beta must be positive")
        object.__setattr__(self, "phi", self.phi % (2 * math.pi))


@dataclass(frozen=True)
class CatZeroAnalysis:
    """Roots and vertex of P(Z) at a given momentum (through tilde_phi)."""

    z_plus: complex
    z_minus: complex
    z_m: float
    p_of_zm: float
    b: float
    tilde_phi: float


def cat_state(params: CatParams) -> CoherentSuperposition:
    """Two-component superposition with beta_1 = +re_beta, beta_2 = -re_beta."""
    sc = math.sin(params.theta) * math.cos(params.theta)
    off = params.delta * sc * complex(math.cos(params.phi), math.sin(params.phi))
    coeffs = np.array(
        [
            [math.cos(params.theta) ** 2, off],
            [off.conjugate(), math.sin(params.theta) ** 2],
        ],
        dtype=complex,
    )
    return CoherentSuperposition(
        betas=(complex(params.re_beta), complex(-params.re_beta)), coeffs=coeffs
    )


def cat_normalization(params: CatParams) -> float:
    """N = 1 + Delta sin(2 theta) cos(phi) exp(-2 re_beta^2)."""
    return 1.0 + params.delta * math.sin(2 * params.theta) * math.cos(params.phi) * math.exp(
        -2.0 * params.re_beta**2
    )


def tilde_phi(params: CatParams, p: float) -> float:
    """Reduced phase tilde_phi = phi - 2 sqrt2 P re_beta."""
    return params.phi - 2.0 * SQRT2 * p * params.re_beta


def cat_wigner_closed(params: CatParams, pt: PhasePoint) -> float:
    """Closed-form W for the cat (three Gaussians, exponents assembled first).

    Algebraically identical to the Z-polynomial form
    e^{-X^2-P^2-2rb^2} [cos^2(th) Z^2 + b Z + sin^2(th)] / (pi N Z)
    with b = e^{2 rb^2} Delta sin(2 th) cos(tilde_phi), but immune to the
    overflow of Z at large X*re_beta.
    """
    rb = params.re_beta
    n = cat_normalization(params)
    g_plus = math.exp(-((pt.x - SQRT2 * rb) ** 2) - pt.p**2)
    g_minus = math.exp(-((pt.x + SQRT2 * rb) ** 2) - pt.p**2)
    cross = (
        params.delta
        * math.sin(2 * params.theta)
        * math.cos(tilde_phi(params, pt.p))
        * math.exp(-(pt.x**2) - pt.p**2)
    )
    return (
        math.cos(params.theta) ** 2 * g_plus
        + math.sin(params.theta) ** 2 * g_minus
        + cross
    ) / (math.pi * n)


def cat_zero_analysis(params: CatParams, p: float) -> CatZeroAnalysis:
    """Zeros Z_± and vertex of P(Z) at momentum p.

    The vertex value sin^2(th) (1 - Delta^2 cos^2(tilde_phi) e^{4 rb^2}) is
    the main-text form; it coincides with the algebraic identity
    c - b^2/(4a) for the quadratic.
    """
    tp = tilde_phi(params, p)
    b = (
        math.exp(2.0 * params.re_beta**2)
        * params.delta
        * math.sin(2 * params.theta)
        * math.cos(tp)
    )
    cos2 = math.cos(params.theta) ** 2
    sin2 = math.sin(params.theta) ** 2
    disc = complex(b * b - math.sin(2 * params.theta) ** 2)
    sq = np.sqrt(disc)
    z_plus = (-b + sq) / (2 * cos2)
    z_minus = (-b - sq) / (2 * cos2)
    p_of_zm = sin2 * (
        1.0 - params.delta**2 * math.cos(tp) ** 2 * math.exp(4.0 * params.re_beta**2)
    )
    return CatZeroAnalysis(
        z_plus=complex(z_plus),
        z_minus=complex(z_minus),
        z_m=-b / (2 * cos2),
        p_of_zm=p_of_zm,
        b=b,
        tilde_phi=tp,
    )


def critical_delta_analytic(re_beta: float) -> float:
    """Critical coherence exp(-2 re_beta^2), clamped to <= 1."""
    if re_beta <= 0:
        raise ValueError("re_beta must be positive")
    return min(1.0, math.exp(-2.0 * re_beta**2))


def _fringe_momentum(params: CatParams) -> float:
    """Momentum of the deepest reachable interference trough.

    P(Z) dips below zero for Z > 0 only where cos(tilde_phi) < 0; the
    strongest fringe has cos(tilde_phi) = -1, i.e. tilde_phi = (2m+1) pi.
    Among those the Gaussian envelope favors the smallest |P|.
    """
    s = 2.0 * SQRT2 * params.re_beta
    cands = [(params.phi - math.pi) / s, (params.phi + math.pi) / s]
    cands.sort(key=lambda p: (abs(p), -p))
    return cands[0]


def predicted_min_location(params: CatParams) -> PhasePoint:
    """Location of the global Wigner minimum, from the fringe analysis.

    The momentum starts on the deepest fringe and the abscissa between the
    two Gaussians; the Gaussian envelope pulls the true minimum slightly off
    the fringe center, so both coordinates are polished by alternating 1-D
    minimization of the closed form.  Verified to be a local minimum by a
    finite-difference Hessian before returning.  Raises NotNegative when
    Delta <= Delta_c.
    """
    if params.delta <= critical_delta_analytic(params.re_beta):
        raise NotNegative(
            f"delta {params.delta} <= critical {critical_delta_analytic(params.re_beta):.6g}"
        )
    p_star = _fringe_momentum(params)
    half_fringe = math.pi / (2.0 * SQRT2 * params.re_beta)
    lim = SQRT2 * params.re_beta + 1.0
    xs = np.linspace(-lim, lim, 201)
    vals = [cat_wigner_closed(params, PhasePoint(x, p_star)) for x in xs]
    x_star = float(xs[int(np.argmin(vals))])

    def polish(fn, lo, hi):
        res = minimize_scalar(fn, bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-12})
        return float(res.x)

    for _ in range(3):
        x_star = polish(
            lambda x: cat_wigner_closed(params, PhasePoint(x, p_star)),
            max(-lim, x_star - half_fringe), min(lim, x_star + half_fringe),
        )
        p_star = polish(
            lambda p: cat_wigner_closed(params, PhasePoint(x_star, p)),
            p_star - half_fringe, p_star + half_fringe,
        )
    _check_local_min(params, x_star, p_star)
    return PhasePoint(x_star, p_star)


def _check_local_min(params: CatParams, x: float, p: float, h: float = 1e-4):
    w = lambda dx, dp: cat_wigner_closed(params, PhasePoint(x + dx, p + dp))
    w0 = w(0, 0)
    wxx = (w(h, 0) - 2 * w0 + w(-h, 0)) / h**2
    wpp = (w(0, h) - 2 * w0 + w(0, -h)) / h**2
    wxp = (w(h, h) - w(h, -h) - w(-h, h) + w(-h, -h)) / (4 * h**2)
    hess = np.array([[wxx, wxp], [wxp, wpp]])
    if np.min(np.linalg.eigvalsh(hess)) <= 0:
        raise RuntimeError("predicted location is not a local minimum")
