"""Exception types raised by otrl."""


class OTRLError(ValueError):
    """Base class for all input and contract errors."""


class PointNotInSpaceError(OTRLError):
    pass


class WrongSpaceError(OTRLError):
    """An operation was called on a measure living in an unsupported space."""


class SpaceMismatchError(OTRLError):
    pass


class EmptySupportError(OTRLError):
    pass


class NegativeWeightError(OTRLError):
    pass


class MassNotOneError(OTRLError):
    pass


class QMassPresentError(OTRLError):
    pass


class NonLinearMotionError(OTRLError):
    pass


class MixedQPairingError(OTRLError):
    """A coupling moves mass between q and a plane point."""


class NotRationalError(OTRLError):
    pass


class InstanceTooLargeError(OTRLError):
    pass


class NotLipschitzError(OTRLError):
    pass


class ConfigError(OTRLError):
    pass
