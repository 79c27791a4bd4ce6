"""Exception hierarchy shared by every module."""

from __future__ import annotations


class AdesignError(Exception):
    """Base class; the CLI maps any subclass to exit status 2."""


class NonPrimeModulus(AdesignError):
    pass


class ReducibleModulus(AdesignError):
    pass


class FieldTooLarge(AdesignError):
    pass


class IndexOutOfRange(AdesignError):
    pass


class UnsupportedOrder(AdesignError):
    pass


class NoDecomposition(AdesignError):
    pass


class ElementNotInGroup(AdesignError):
    pass


class EmptyOrFullSubset(AdesignError):
    pass


class NotPrime(AdesignError):
    pass


class NotPlanarDifferenceSet(AdesignError):
    pass


class CapExceeded(AdesignError):
    pass


class DegenerateT(AdesignError):
    pass


class PointNotFound(AdesignError):
    pass


class EmptyBlock(AdesignError):
    pass


class BadParameters(AdesignError):
    pass


class BadModulusClass(AdesignError):
    """Parameter outside the congruence class a construction requires."""


class BadIndexSet(AdesignError):
    pass


class NotSymmetricDesign(AdesignError):
    pass


class WrongCount(AdesignError):
    pass


class NoValidAssignment(AdesignError):
    pass


class BadN(AdesignError):
    pass


class DimensionTooLarge(AdesignError):
    pass


class ParityViolation(AdesignError):
    pass


class DesignFileError(AdesignError):
    pass
