"""Exception types shared across the library."""


class WnlError(Exception):
    """Base class for all library errors."""


class NonPositiveNorm(WnlError):
    """Normalization of a superposition is not positive (degenerate coefficients)."""


class NonHermitianAccumulation(WnlError):
    """Imaginary residual of a Wigner sum exceeded tolerance (non-Hermitian input)."""


class NegativeWeight(WnlError):
    """A mixture weight is negative."""


class CutoffTooSmall(WnlError):
    """Characteristic function has not decayed at the quadrature boundary."""


class TruncationTooSmall(WnlError):
    """Fock-space truncation is too small for the requested amplitudes."""


class OverflowRange(WnlError):
    """Argument outside the safe range of a special-function evaluation."""


class OutsideValidityWindow(WnlError):
    """Radial point outside the validity window of the leading-order form."""


class NotNegative(WnlError):
    """Requested a minimum location for a state whose Wigner function is nonnegative."""


class BoxTooSmall(WnlError):
    """Negative minimum found on the search-box boundary; the box must grow."""


class NoSignChange(WnlError):
    """Minimum of the Wigner function has the same sign at both ends of the coherence range."""
