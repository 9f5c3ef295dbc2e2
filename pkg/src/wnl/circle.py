"""Higher-order cat states: M coherent states equally spaced on a circle.

The exact polar Wigner function is a double sum over component pairs whose
individual exponents span e^{+-d^2}; folding the Gaussian prefactor into each
exponent bounds every term by 1 in magnitude, and conjugate (j, k)/(k, j)
pairs are combined analytically so the sum is real term by term.  Close to
the origin and for densely packed circles the off-diagonal part collapses to
a J0 Bessel profile, which yields an analytic upper bound on the critical
coherence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import fsum, pi

import numpy as np
from scipy import special
from scipy.optimize import minimize_scalar

from .core import CoherentSuperposition, PolarPoint, normalization
from .errors import OutsideValidityWindow, OverflowRange

SQRT2 = math.sqrt(2.0)

BESSEL_I_MAX_ARG = 700.0  # exp overflow guard for I_n


@dataclass(frozen=True)
class CircleCatParams:
    m: int
    d: float
    delta: float

    def __post_init__(self):
        if self.m < 4 or self.m % 2:
            raise ValueError("m must be an even integer >= 4")
        if not self.d >= 1.0:
            raise ValueError("d must be >= 1")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError("delta must lie in [0, 1]")

    @property
    def highly_packed(self) -> bool:
        """Validity flag m > d^2 of the leading-order reduction (not enforced)."""
        return self.m > self.d**2

    def window_radius(self) -> float:
        """Validity window R < m / (2 sqrt2 d) of the radial approximation."""
        return self.m / (2.0 * SQRT2 * self.d)


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind J_n."""
    if n < 0 or n != int(n):
        raise ValueError("order must be a nonnegative integer")
    return float(special.jv(n, x))


def bessel_i(n: int, x: float) -> float:
    """Modified Bessel function of the first kind I_n; |x| capped at 700."""
    if n < 0 or n != int(n):
        raise ValueError("order must be a nonnegative integer")
    if abs(x) > BESSEL_I_MAX_ARG:
        raise OverflowRange(f"|x| = {abs(x)} exceeds {BESSEL_I_MAX_ARG}")
    return float(special.iv(n, x))


def circle_state(params: CircleCatParams) -> CoherentSuperposition:
    """beta_k = d e^{2 pi i k / m}, coeffs ((1 - Delta) delta_jk + Delta)/m."""
    k = np.arange(1, params.m + 1)
    betas = params.d * np.exp(2j * pi * k / params.m)
    coeffs = ((1.0 - params.delta) * np.eye(params.m) + params.delta) / params.m
    return CoherentSuperposition(betas=tuple(betas), coeffs=coeffs.astype(complex))


def _angles(params: CircleCatParams) -> np.ndarray:
    return 2.0 * pi * np.arange(1, params.m + 1) / params.m


def circle_wigner_exact(params: CircleCatParams, pt: PolarPoint) -> float:
    """Exact polar double sum

    W(R, phi) = e^{-R^2-d^2}/(pi N M) sum_{j,k} [(1-Delta) delta_jk + Delta]
                exp(-d^2 e^{2i Phi_jk} + r cos(phi - Lambda_jk) e^{i Phi_jk})

    with r = 2 sqrt2 R d, Lambda = (th_j + th_k)/2, Phi = (th_j - th_k)/2.
    The prefactor is folded into each exponent (max real part is then 0) and
    conjugate pairs are combined before compensated summation, so the result
    is real by construction.
    """
    d, m = params.d, params.m
    r = 2.0 * SQRT2 * pt.r * d
    th = _angles(params)
    state = circle_state(params)
    norm = normalization(state)

    ju, ku = np.triu_indices(m)
    phi_jk = 0.5 * (th[ju] - th[ku])
    lam_jk = 0.5 * (th[ju] + th[ku])
    expo = (
        -pt.r**2
        - d * d
        - d * d * np.exp(2j * phi_jk)
        + r * np.cos(pt.phi - lam_jk) * np.exp(1j * phi_jk)
    )
    coeff = np.where(ju == ku, (1.0 - params.delta) + params.delta, params.delta) / m
    pairing = np.where(ju == ku, 1.0, 2.0)
    terms = pairing * coeff * np.exp(expo).real
    return fsum(terms.tolist()) / (pi * norm)


def circle_wigner_bessel(params: CircleCatParams, r_radius: float) -> float:
    """Leading-order radial form

    W(R) = e^{-R^2-d^2}/(pi N) [(1-Delta) e^{-d^2} I0(r) + Delta M J0(r)]

    with r = 2 sqrt2 R d and N computed exactly.  Only valid close to the
    origin, R < m/(2 sqrt2 d), and quantitatively reliable for m >> d^2.
    """
    if not 0.0 <= r_radius < params.window_radius():
        raise OutsideValidityWindow(
            f"R = {r_radius} outside [0, {params.window_radius():.4f})"
        )
    d, m = params.d, params.m
    r = 2.0 * SQRT2 * r_radius * d
    norm = normalization(circle_state(params))
    bracket = (1.0 - params.delta) * math.exp(-d * d) * bessel_i(0, r) + (
        params.delta * m * bessel_j(0, r)
    )
    return math.exp(-r_radius**2 - d * d) * bracket / (pi * norm)


@dataclass(frozen=True)
class BesselBound:
    """Upper bound on the critical coherence and the minimizing r."""

    value: float
    r_star: float


def critical_delta_bound(params: CircleCatParams) -> BesselBound:
    """Upper bound Delta_bar = min_r 1 / (1 - e^{d^2} M J0(r)/I0(r)).

    The ratio J0/I0 has stationary points near r = n pi; each is bracketed
    and refined, and the most negative ratio (near r = pi, where
    J0/I0 ~= -0.056) gives the bound.
    """
    ratio = lambda r: bessel_j(0, r) / bessel_i(0, r)
    best_val = math.inf
    best_r = 0.0
    for n in range(1, 5):
        res = minimize_scalar(
            ratio,
            bounds=(n * pi - 1.2, n * pi + 1.2),
            method="bounded",
            options={"xatol": 1e-10},
        )
        if res.fun < best_val:
            best_val = float(res.fun)
            best_r = float(res.x)
    scale = math.exp(params.d**2) * params.m
    return BesselBound(value=1.0 / (1.0 - scale * best_val), r_star=best_r)
