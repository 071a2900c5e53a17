"""Exception hierarchy.

Input problems derive from ``InputError`` (CLI exit code 2); broken
identities derive from ``VerificationError`` (exit code 1).
"""


class PreprojError(Exception):
    pass


class InputError(PreprojError, ValueError):
    pass


class VerificationError(PreprojError, AssertionError):
    pass


class EmptyQuiver(InputError):
    pass


class DivisibilityViolation(InputError):
    pass


class DisconnectedQuiver(InputError):
    pass


class NotSymmetrizable(InputError):
    pass


class NonCartanEntries(InputError):
    pass


class CyclicOrientation(InputError):
    pass


class InfiniteRootSystem(InputError):
    pass


class NonDynkinInput(InputError):
    pass


class NonDynkinNeedsMaxDegree(InputError):
    pass


class DynkinNotSupported(InputError):
    pass


class NotSimplyLaced(InputError):
    pass


class DegreeTooLarge(InputError):
    pass


class PathCountExceeded(InputError):
    pass


class OrderNotFoundWithinCap(VerificationError):
    pass


class OrbitStructureViolation(VerificationError):
    pass


class NegativeNotMinusProjective(VerificationError):
    pass


class EulerFormViolation(VerificationError):
    pass


class IdentityViolation(VerificationError):
    pass


class SocleMismatch(VerificationError):
    pass


class KernelFound(VerificationError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class AssociativityViolation(VerificationError):
    pass


class SurjectivityFailure(VerificationError):
    pass


class Degree3Residual(VerificationError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
