"""Exception hierarchy shared by all modules."""


class SepfaceError(Exception):
    """Base class for every error raised by this package."""


class ContractViolation(SepfaceError, ValueError):
    """An input breaks a documented precondition."""


class NotInSpanError(ContractViolation):
    """A target vector is not in the span of the given basis."""


class UnsupportedShapeError(ContractViolation):
    """The party shape is outside what the requested operation supports."""


class NumericFailure(SepfaceError, RuntimeError):
    """A numerical routine failed to converge or produced an inconsistent result."""


class NoPptBoundaryError(SepfaceError):
    """The boundary construction does not apply (sum of |a_i|^2/p_i is at most 1)."""


class DegenerateGammaSpanError(SepfaceError):
    """Some family of partial conjugates spans more than five dimensions."""
