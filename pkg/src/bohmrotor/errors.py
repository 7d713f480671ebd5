"""Exception taxonomy for the rotor package.

Every failure a caller can act on gets its own type. Validation problems
(bad parameters, malformed configs) are distinct from numerical failures
(truncation overflow, node proximity) so the CLI can map them to
different exit codes.
"""


class RotorError(Exception):
    """Base class for all package errors."""


class ValidationError(RotorError):
    """Base class for input and configuration problems."""


class ParameterDomainError(ValidationError):
    """A physical parameter is outside its legal domain."""


class DegenerateStateError(ValidationError):
    """An initial state has zero norm or an empty mode band."""


class ConfigError(ValidationError):
    """A scenario config failed to parse or validate.

    Carries optional ``line`` and ``column`` attributes (1-based) when the
    problem is a syntax error with a known location.
    """

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class NumericalError(RotorError):
    """Base class for runtime numerical failures."""


class TruncationFailureError(NumericalError):
    """A kick pushed amplitude past the band cap beyond the norm tolerance.

    Attributes carry the measured norm defect and the band that produced it
    so callers can report or retry with a larger cap.
    """

    def __init__(self, defect, band_cap, kick_index):
        super().__init__(
            "kick %d lost norm %.3e with band cap %d; raise band_cap or "
            "loosen norm_tolerance" % (kick_index, defect, band_cap)
        )
        self.defect = defect
        self.band_cap = band_cap
        self.kick_index = kick_index


class NodeProximityError(NumericalError):
    """A trajectory ran into a wavefunction node and could not continue.

    The attached :class:`~bohmrotor.bohm.NodeEvent` records where and when.
    """

    def __init__(self, event):
        super().__init__(
            "trajectory hit a density floor at t=%.9g, theta=%.9g "
            "(density %.3e)" % (event.t, event.theta, event.density)
        )
        self.event = event


class HorizonError(NumericalError):
    """A sample time lies beyond the evolved timeline."""


class SamplingContractError(NumericalError):
    """Requested samples are absent from a trajectory's sample grid."""
