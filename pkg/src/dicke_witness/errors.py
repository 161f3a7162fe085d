"""Exception hierarchy shared by all modules."""


class WitnessError(Exception):
    """Base class for errors raised by :mod:`dicke_witness`."""


class InvalidArgument(WitnessError, ValueError):
    """An argument violates a documented precondition."""


class OutOfDomain(WitnessError, ValueError):
    """Arguments are well formed but outside the regime a construction covers."""


class CapacityError(WitnessError):
    """A dense 2^N object was requested beyond the supported qubit count."""


class InfeasibleShift(WitnessError):
    """Shifting the witness coefficients would make one of them negative."""


class NoDetection(WitnessError):
    """The witness never becomes negative on the noisy Dicke family."""
