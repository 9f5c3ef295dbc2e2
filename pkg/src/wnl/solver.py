"""Global Wigner minimization, negativity certificates, and the critical
coherence by bisection.

The search is a deterministic coarse-grid scan followed by coordinate descent
with a shrinking step from the five best nodes; the coarse step resolves the
interference fringe spacing pi/(2 sqrt2 max|beta|).

Coherence-parametrized families are evaluated through a linear split
W(Delta) = (q0 + Delta*q1) / N(Delta): the two fields are computed once and
combined per Delta, which keeps the sign of W resolvable even where the
critical coherence is dozens of orders of magnitude below 1 (densely packed
circle states), far beyond what re-summing the full superposition per Delta
could distinguish from rounding noise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .core import CoherentSuperposition, PhasePoint
from .errors import BoxTooSmall, NoSignChange
from .wigner import PairKernel

NEGATIVITY_ABS_TOL = 1e-12
REFINE_STARTS = 5
LADDER_FLOOR = 1e-300


@dataclass(frozen=True)
class MinimizationSpec:
    x_min: float
    x_max: float
    p_min: float
    p_max: float
    nx: int
    np: int
    refine_iters: int = 60
    refine_tol: float = 1e-6

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.p_min < self.p_max):
            raise ValueError("degenerate search box")
        if self.nx < 2 or self.np < 2:
            raise ValueError("coarse grid needs at least 2 nodes per axis")
        if not self.refine_tol > 0:
            raise ValueError("refine_tol must be positive")


def default_spec(
    max_abs_beta: float,
    margin: float = 5.0,
    refine_iters: int = 60,
    refine_tol: float = 1e-6,
) -> MinimizationSpec:
    """Box +-(sqrt2 max|beta| + margin); step <= fringe/6 and <= 0.35."""
    half = math.sqrt(2.0) * max_abs_beta + margin
    fringe = math.pi / (2.0 * math.sqrt(2.0) * max_abs_beta) if max_abs_beta > 0 else math.inf
    step = min(fringe / 6.0, 0.35)
    n = int(math.ceil(2.0 * half / step)) + 1
    return MinimizationSpec(
        x_min=-half, x_max=half, p_min=-half, p_max=half,
        nx=n, np=n, refine_iters=refine_iters, refine_tol=refine_tol,
    )


@dataclass(frozen=True)
class MinimizationResult:
    value: float
    argmin: PhasePoint
    evaluations: int
    refined: bool = True


class _CallableMap:
    def __init__(self, fn):
        self.fn = fn

    def points(self, x, p):
        return np.asarray(self.fn(np.asarray(x, float), np.asarray(p, float)), float)

    def grid(self, x_nodes, p_nodes):
        xg, pg = np.meshgrid(x_nodes, p_nodes, indexing="ij")
        return self.points(xg, pg)


def as_wigner_map(target):
    """Accept a CoherentSuperposition, a map object, or a vectorized callable."""
    if isinstance(target, CoherentSuperposition):
        return PairKernel(target)
    if hasattr(target, "grid") and hasattr(target, "points"):
        return target
    if callable(target):
        return _CallableMap(target)
    raise TypeError(f"cannot evaluate Wigner map from {type(target)!r}")


def minimize_wigner(
    target,
    spec: MinimizationSpec,
    stop_when_negative: bool = False,
) -> MinimizationResult:
    """Coarse scan plus multistart coordinate descent; deterministic given spec.

    With ``stop_when_negative`` the scan returns as soon as the coarse grid
    exhibits a negative node (refinement can only lower the minimum, so the
    sign is already decided); bisection uses this fast path.

    Raises BoxTooSmall when a negative minimum sits on the box boundary.
    """
    wmap = as_wigner_map(target)
    xs = np.linspace(spec.x_min, spec.x_max, spec.nx)
    ps = np.linspace(spec.p_min, spec.p_max, spec.np)
    coarse = wmap.grid(xs, ps)
    evaluations = coarse.size

    flat = coarse.ravel()
    order = np.lexsort(
        (np.tile(np.arange(spec.np), spec.nx), np.repeat(np.arange(spec.nx), spec.np), flat)
    )
    best_flat = int(order[0])
    best_coarse = float(flat[best_flat])

    if stop_when_negative and best_coarse < 0.0:
        i, j = divmod(best_flat, spec.np)
        return MinimizationResult(
            value=best_coarse,
            argmin=PhasePoint(float(xs[i]), float(ps[j])),
            evaluations=evaluations,
            refined=False,
        )

    hx = xs[1] - xs[0]
    hp = ps[1] - ps[0]
    best_val = math.inf
    best_xy = (0.0, 0.0)
    for flat_idx in order[:REFINE_STARTS]:
        i, j = divmod(int(flat_idx), spec.np)
        x, p, w = float(xs[i]), float(ps[j]), float(flat[flat_idx])
        step = max(hx, hp)
        for _ in range(spec.refine_iters):
            cand_x = np.clip([x - step, x + step, x, x], spec.x_min, spec.x_max)
            cand_p = np.clip([p, p, p - step, p + step], spec.p_min, spec.p_max)
            vals = wmap.points(cand_x, cand_p)
            evaluations += 4
            k = int(np.argmin(vals))
            if vals[k] < w:
                x, p, w = float(cand_x[k]), float(cand_p[k]), float(vals[k])
            else:
                step *= 0.5
                if step < spec.refine_tol:
                    break
        if w < best_val or (w == best_val and (x, p) < best_xy):
            best_val, best_xy = w, (x, p)

    edge = max(hx, hp)
    on_edge = (
        best_xy[0] - spec.x_min < edge
        or spec.x_max - best_xy[0] < edge
        or best_xy[1] - spec.p_min < edge
        or spec.p_max - best_xy[1] < edge
    )
    if best_val < -NEGATIVITY_ABS_TOL and on_edge:
        raise BoxTooSmall(
            f"negative minimum {best_val:.3e} at boundary point {best_xy}; grow the box"
        )
    return MinimizationResult(
        value=best_val,
        argmin=PhasePoint(best_xy[0], best_xy[1]),
        evaluations=evaluations,
    )


@dataclass(frozen=True)
class Certificate:
    negative: bool
    min_value: float
    witness: PhasePoint
    evaluations: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "negative": self.negative,
                "min": self.min_value,
                "x": self.witness.x,
                "p": self.witness.p,
                "evals": self.evaluations,
            }
        )


def certify_negativity(
    target, spec: MinimizationSpec, abs_tol: float = NEGATIVITY_ABS_TOL
) -> Certificate:
    """negative iff the refined minimum is < -abs_tol; carries the witness."""
    res = minimize_wigner(target, spec)
    return Certificate(
        negative=res.value < -abs_tol,
        min_value=res.value,
        witness=res.argmin,
        evaluations=res.evaluations,
    )


# --- coherence-parametrized families ---------------------------------------


class LinearDeltaFamily:
    """States whose coefficient matrix is coeffs0 + Delta * coeffs1.

    Both cat and circle dephasing families are of this form.  The two
    unnormalized quadratic fields are evaluated once per point set (the
    coarse mesh is cached) and combined per Delta.
    """

    def __init__(self, betas, coeffs0, coeffs1):
        self.betas = np.asarray(betas, dtype=complex)
        self.coeffs0 = np.asarray(coeffs0, dtype=complex)
        self.coeffs1 = np.asarray(coeffs1, dtype=complex)
        self._k0 = PairKernel.raw(self.betas, self.coeffs0)
        self._k1 = PairKernel.raw(self.betas, self.coeffs1)
        b = self.betas
        overlap = np.exp(
            -0.5 * (np.abs(b[:, None]) ** 2 + np.abs(b[None, :]) ** 2)
            + b[:, None] * np.conj(b[None, :])
        )
        self._n0 = float(np.sum(self.coeffs0 * overlap).real)
        self._n1 = float(np.sum(self.coeffs1 * overlap).real)
        self._grid_cache = None

    def norm(self, delta: float) -> float:
        n = self._n0 + delta * self._n1
        if n <= 0:
            raise ValueError(f"non-positive normalization at delta={delta}")
        return n

    def state(self, delta: float) -> CoherentSuperposition:
        return CoherentSuperposition(
            betas=tuple(self.betas), coeffs=self.coeffs0 + delta * self.coeffs1
        )

    def fields_grid(self, x_nodes, p_nodes):
        cache = self._grid_cache
        if (
            cache is not None
            and np.array_equal(cache[0], x_nodes)
            and np.array_equal(cache[1], p_nodes)
        ):
            return cache[2], cache[3]
        q0 = self._k0.grid(x_nodes, p_nodes)
        q1 = self._k1.grid(x_nodes, p_nodes)
        self._grid_cache = (np.array(x_nodes), np.array(p_nodes), q0, q1)
        return q0, q1

    def map(self, delta: float):
        return _FamilyMap(self, float(delta))


class _FamilyMap:
    def __init__(self, family: LinearDeltaFamily, delta: float):
        self.family = family
        self.delta = delta

    def grid(self, x_nodes, p_nodes):
        q0, q1 = self.family.fields_grid(x_nodes, p_nodes)
        return (q0 + self.delta * q1) / self.family.norm(self.delta)

    def points(self, x, p):
        q0 = self.family._k0.points(x, p)
        q1 = self.family._k1.points(x, p)
        return (q0 + self.delta * q1) / self.family.norm(self.delta)


def cat_delta_family(theta: float, phi: float, re_beta: float) -> LinearDeltaFamily:
    sc = math.sin(theta) * math.cos(theta)
    off = sc * complex(math.cos(phi), math.sin(phi))
    coeffs0 = np.diag([math.cos(theta) ** 2, math.sin(theta) ** 2]).astype(complex)
    coeffs1 = np.array([[0.0, off], [off.conjugate(), 0.0]], dtype=complex)
    return LinearDeltaFamily((complex(re_beta), complex(-re_beta)), coeffs0, coeffs1)


def circle_delta_family(m: int, d: float) -> LinearDeltaFamily:
    k = np.arange(1, m + 1)
    betas = d * np.exp(2j * math.pi * k / m)
    coeffs0 = np.eye(m, dtype=complex) / m
    coeffs1 = (np.ones((m, m)) - np.eye(m)).astype(complex) / m
    return LinearDeltaFamily(betas, coeffs0, coeffs1)


@dataclass(frozen=True)
class CriticalCoherenceResult:
    delta_c: float
    bracket_low: float
    bracket_high: float
    minimizer: PhasePoint
    evaluations: int
    method: str

    @property
    def bracket_width(self) -> float:
        return self.bracket_high - self.bracket_low


def _family_of(family) -> LinearDeltaFamily:
    if isinstance(family, LinearDeltaFamily):
        return family
    raise TypeError("critical_delta_numeric expects a LinearDeltaFamily")


def critical_delta_numeric(
    family,
    spec: MinimizationSpec,
    delta_tol: float,
    relative: bool = False,
) -> CriticalCoherenceResult:
    """Bisection of Delta against the sign of the refined Wigner minimum.

    With ``relative=False`` this is plain bisection on [0, 1] terminating at
    bracket width <= delta_tol.  With ``relative=True`` the lower bracket is
    found by descending decades and the bisection is geometric, terminating
    at hi/lo <= 1 + delta_tol; this is required where Delta_c is many orders
    of magnitude below 1.

    Raises NoSignChange when the minimum has the same sign at Delta = 0 and 1.
    """
    fam = _family_of(family)
    evaluations = 0

    def refined_min(delta: float, fast: bool) -> MinimizationResult:
        nonlocal evaluations
        res = minimize_wigner(fam.map(delta), spec, stop_when_negative=fast)
        evaluations += res.evaluations
        return res

    # monotonicity precheck: min W must be nonincreasing in Delta
    samples = [refined_min(d, fast=False).value for d in (0.0, 0.5, 1.0)]
    for a, b in zip(samples, samples[1:]):
        if b > a + 1e-12:
            raise ValueError(f"family not monotone in negativity: min W {samples}")

    if samples[0] < 0.0:
        raise NoSignChange("minimum is already negative at delta = 0")
    if not samples[2] < 0.0:
        raise NoSignChange(
            f"minimum stays nonnegative at delta = 1 (min W = {samples[2]:.3e})"
        )

    lo, hi = 0.0, 1.0
    if relative:
        while lo == 0.0:
            probe = hi * 0.1
            if probe < LADDER_FLOOR:
                break
            if refined_min(probe, fast=True).value < 0.0:
                hi = probe
            else:
                lo = probe
        while lo > 0.0 and hi / lo > 1.0 + delta_tol:
            mid = math.sqrt(lo * hi)
            if refined_min(mid, fast=True).value < 0.0:
                hi = mid
            else:
                lo = mid
        delta_c = math.sqrt(lo * hi) if lo > 0.0 else hi
        method = "bisection-geometric"
    else:
        while hi - lo > delta_tol:
            mid = 0.5 * (lo + hi)
            if refined_min(mid, fast=True).value < 0.0:
                hi = mid
            else:
                lo = mid
        delta_c = 0.5 * (lo + hi)
        method = "bisection"

    witness = refined_min(hi, fast=False)
    return CriticalCoherenceResult(
        delta_c=delta_c,
        bracket_low=lo,
        bracket_high=hi,
        minimizer=witness.argmin,
        evaluations=evaluations,
        method=method,
    )
