"""Value types and construction/validation of coherent-state superpositions.

All phase-space coordinates are dimensionless (lengths in units of the basis
scale sigma, inverse lengths in units of 1/sigma).  The ``sigma`` carried by a
:class:`CoherentSuperposition` only enters when converting physical
coordinates; see :func:`wnl.wigner.wigner_physical`.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NonPositiveNorm

HERMITICITY_TOL = 1e-12
NORM_IMAG_TOL = 1e-10
NORM_FLOOR = 1e-14


def _require_finite(value: complex, name: str) -> complex:
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class PhasePoint:
    """Point (x, p) in phase space, x in units of sigma, p in units of 1/sigma."""

    x: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.p)):
            raise ValueError(f"phase point must be finite, got ({self.x}, {self.p})")


@dataclass(frozen=True)
class PolarPoint:
    """Polar phase-space point (r, phi) with r >= 0 and phi wrapped to [0, 2*pi)."""

    r: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and math.isfinite(self.phi)):
            raise ValueError("polar point must be finite")
        if self.r < 0:
            raise ValueError(f"radius must be >= 0, got {self.r}")
        object.__setattr__(self, "phi", self.phi % (2 * math.pi))

    def to_cartesian(self) -> PhasePoint:
        return PhasePoint(self.r * math.cos(self.phi), self.r * math.sin(self.phi))


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform rectangular evaluation grid.

    node(i, j) = (x_min + i*(x_max-x_min)/(nx-1), p_min + j*(p_max-p_min)/(np-1))
    """

    x_min: float
    x_max: float
    p_min: float
    p_max: float
    nx: int
    np: int

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.p_min < self.p_max):
            raise ValueError("grid bounds must satisfy x_min < x_max and p_min < p_max")
        if self.nx < 2 or self.np < 2:
            raise ValueError("grid needs nx >= 2 and np >= 2")

    def x_nodes(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def p_nodes(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.np)

    def node(self, i: int, j: int) -> PhasePoint:
        hx = (self.x_max - self.x_min) / (self.nx - 1)
        hp = (self.p_max - self.p_min) / (self.np - 1)
        return PhasePoint(self.x_min + i * hx, self.p_min + j * hp)


def coherent_overlap(beta_j: complex, beta_k: complex) -> complex:
    """Overlap <beta_k|beta_j> = exp(-(|beta_j|^2+|beta_k|^2)/2 + beta_j*conj(beta_k))."""
    beta_j = _require_finite(beta_j, "beta_j")
    beta_k = _require_finite(beta_k, "beta_k")
    expo = (
        -0.5 * (abs(beta_j) ** 2 + abs(beta_k) ** 2) + beta_j * beta_k.conjugate()
    )
    return cmath.exp(expo)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate`; a clean report has no flags."""

    hermiticity_residual: float
    min_diagonal: float
    norm_value: float
    norm_imag_residual: float
    flags: tuple = ()

    @property
    def clean(self) -> bool:
        return not self.flags


@dataclass(frozen=True)
class CoherentSuperposition:
    """Finite superposition/mixture of coherent states on a single length scale.

    ``coeffs`` is the (unnormalized) coefficient matrix rho_{j,k} of
    sum_{j,k} rho_{j,k} |beta_j><beta_k| / N; the normalization N is always
    recomputed, never trusted from input.
    """

    betas: tuple
    coeffs: np.ndarray
    sigma: float = 1.0

    def __post_init__(self):
        betas = tuple(_require_finite(b, "beta") for b in self.betas)
        if len(betas) < 1:
            raise ValueError("need at least one coherent component")
        coeffs = np.asarray(self.coeffs, dtype=complex)
        n = len(betas)
        if coeffs.shape != (n, n):
            raise ValueError(f"coeffs must be {n}x{n}, got {coeffs.shape}")
        if not np.all(np.isfinite(coeffs.view(float))):
            raise ValueError("coeffs must be finite")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n(self) -> int:
        return len(self.betas)

    def beta_array(self) -> np.ndarray:
        return np.asarray(self.betas, dtype=complex)

    def max_abs_beta(self) -> float:
        return float(np.max(np.abs(self.beta_array())))

    def overlap_matrix(self) -> np.ndarray:
        """Gram matrix O[j, k] = <beta_k|beta_j>."""
        b = self.beta_array()
        expo = (
            -0.5 * (np.abs(b[:, None]) ** 2 + np.abs(b[None, :]) ** 2)
            + b[:, None] * np.conj(b[None, :])
        )
        return np.exp(expo)


def normalization(state: CoherentSuperposition) -> float:
    """Normalization N = Re(sum_{j,k} rho_{j,k} <beta_k|beta_j>).

    Raises NonPositiveNorm when the result is <= 1e-14 (degenerate or invalid
    coefficient matrix).
    """
    total = complex(np.sum(state.coeffs * state.overlap_matrix()))
    if total.real <= NORM_FLOOR:
        raise NonPositiveNorm(f"normalization {total.real:.3e} is not positive")
    return total.real


def validate(state: CoherentSuperposition) -> ValidationReport:
    """Report Hermiticity residual, diagonal negativity and normalization sign.

    Report-returning: never raises.  States used by any evaluation routine
    must report clean.
    """
    c = state.coeffs
    herm = float(np.max(np.abs(c - c.conj().T)))
    diag = c.diagonal()
    min_diag = float(np.min(diag.real))
    max_diag_imag = float(np.max(np.abs(diag.imag)))
    total = complex(np.sum(c * state.overlap_matrix()))

    flags = []
    if herm > HERMITICITY_TOL:
        flags.append("HermiticityViolation")
    if min_diag < 0 or max_diag_imag > HERMITICITY_TOL:
        flags.append("NegativeDiagonal")
    if total.real <= NORM_FLOOR:
        flags.append("NonPositiveNorm")
    elif abs(total.imag) > NORM_IMAG_TOL * abs(total):
        flags.append("NonRealNorm")
    return ValidationReport(
        hermiticity_residual=herm,
        min_diagonal=min_diag,
        norm_value=total.real,
        norm_imag_residual=abs(total.imag),
        flags=tuple(flags),
    )


def require_clean(state: CoherentSuperposition) -> CoherentSuperposition:
    """Raise ValueError unless the state validates clean."""
    report = validate(state)
    if not report.clean:
        raise ValueError(f"state failed validation: {', '.join(report.flags)}")
    return state


# --- JSON interface -------------------------------------------------------
#
# {"sigma": real, "betas": [[re, im], ...], "coeffs": [[[re, im], ...], ...]}


def state_to_json(state: CoherentSuperposition) -> str:
    payload = {
        "sigma": state.sigma,
        "betas": [[b.real, b.imag] for b in state.betas],
        "coeffs": [
            [[z.real, z.imag] for z in row] for row in state.coeffs.tolist()
        ],
    }
    return json.dumps(payload)


def state_from_json(text: str) -> CoherentSuperposition:
    """Parse the CLI state schema.  Raises ValueError on malformed input."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValueError("state JSON must be an object")
    try:
        sigma = float(payload.get("sigma", 1.0))
        betas = tuple(complex(re, im) for re, im in payload["betas"])
        coeffs = np.array(
            [[complex(re, im) for re, im in row] for row in payload["coeffs"]],
            dtype=complex,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad state schema: {exc}") from exc
    return CoherentSuperposition(betas=betas, coeffs=coeffs, sigma=sigma)
