"""Wigner functions of coherent-state superpositions and negativity certification."""

from .cat import (
    CatParams,
    CatZeroAnalysis,
    cat_state,
    cat_wigner_closed,
    cat_zero_analysis,
    critical_delta_analytic,
    predicted_min_location,
)
from .circle import (
    BesselBound,
    CircleCatParams,
    bessel_i,
    bessel_j,
    circle_state,
    circle_wigner_bessel,
    circle_wigner_exact,
    critical_delta_bound,
)
from .core import (
    CoherentSuperposition,
    PhaseGrid,
    PhasePoint,
    PolarPoint,
    ValidationReport,
    coherent_overlap,
    normalization,
    state_from_json,
    state_to_json,
    validate,
)
from .fock import (
    FockOperatorSet,
    FockState,
    characteristic_displacement,
    characteristic_sequential,
    coherent_fock,
    fock_operators,
)
from .solver import (
    Certificate,
    CriticalCoherenceResult,
    LinearDeltaFamily,
    MinimizationSpec,
    cat_delta_family,
    certify_negativity,
    circle_delta_family,
    critical_delta_numeric,
    default_spec,
    minimize_wigner,
)
from .wigner import (
    CharacteristicPoint,
    QuadratureSpec,
    cross_wigner,
    default_quadrature,
    quasi_characteristic,
    wigner_diagonal_mixture,
    wigner_direct,
    wigner_direct_grid,
    wigner_direct_points,
    wigner_from_characteristic,
    wigner_physical,
)

__version__ = "0.1.0"
