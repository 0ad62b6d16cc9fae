"""Exception hierarchy for the canal-surface symmetry kernel.

Every kernel failure derives from ``CanalSymError`` so the CLI can map
precondition failures to a single exit code.
"""


class CanalSymError(Exception):
    """Base class for kernel errors."""


class DivisionByZero(CanalSymError, ZeroDivisionError):
    pass


class DegenerateInput(CanalSymError, ValueError):
    pass


class PoleAtInput(CanalSymError, ZeroDivisionError):
    pass


class LinearSpine(CanalSymError):
    """Spine is a straight line (surface of revolution).

    Symmetries of surfaces of revolution are handled by dedicated
    detection methods for such surfaces and are not computed here.
    """


class ExactnessRequired(CanalSymError, TypeError):
    pass


class FrameDegenerate(CanalSymError):
    pass


class DegenerateEnvelope(CanalSymError):
    pass


class DegenerateCircle(CanalSymError):
    pass


class NotPlanar(CanalSymError):
    pass


class DegenerateConic(CanalSymError):
    pass


class NotADupinConfiguration(CanalSymError):
    pass


class InvalidParams(CanalSymError, ValueError):
    pass


class InconsistentConstraint(CanalSymError):
    pass


class SymmetryIncompatible(CanalSymError):
    def __init__(self, message, order=None):
        super().__init__(message)
        self.order = order


class DegenerateBlend(SymmetryIncompatible):
    pass


class PoleInWindow(CanalSymError):
    pass
