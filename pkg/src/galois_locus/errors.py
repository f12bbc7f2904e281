"""Exception hierarchy.

Every error raised by the library derives from :class:`GaloisLocusError`, so the
CLI can map them onto exit code 2 without catching unrelated bugs.
"""


class GaloisLocusError(Exception):
    """Base class for all library errors."""


# algebra kernel

class NotPrime(GaloisLocusError, ValueError):
    pass


class SizeExceeded(GaloisLocusError, ValueError):
    pass


class ZeroPolynomial(GaloisLocusError, ValueError):
    pass


class BothZero(GaloisLocusError, ValueError):
    pass


class NotRational(GaloisLocusError, ValueError):
    """The requested roots of unity are not in the field."""


class CharDivides(GaloisLocusError, ValueError):
    pass


class DegreeMismatch(GaloisLocusError, ValueError):
    pass


class CharDividesM(GaloisLocusError, ValueError):
    pass


class FieldMismatch(GaloisLocusError, ValueError):
    pass


# curve geometry

class DegreeTooSmall(GaloisLocusError, ValueError):
    pass


class NotHomogeneous(GaloisLocusError, ValueError):
    pass


class PointOnCurve(GaloisLocusError, ValueError):
    """The point lies on the curve, so it cannot be an outer point."""


class LineMissesPoint(GaloisLocusError, ValueError):
    pass


class PointNotOnBoth(GaloisLocusError, ValueError):
    pass


class SingularMatrix(GaloisLocusError, ValueError):
    pass


class LineComponent(GaloisLocusError, ValueError):
    """The line is a component of the curve; intersection multiplicity is infinite."""


class ParseError(GaloisLocusError, ValueError):
    pass


# automorphism engine

class ShearFailed(GaloisLocusError):
    pass


class NotOnCurve(GaloisLocusError):
    """A candidate map does not send the curve to itself."""


class DenominatorVanishes(GaloisLocusError):
    pass


class CapExceeded(GaloisLocusError):
    pass


class NotInvertible(GaloisLocusError):
    pass


class ModelMismatch(GaloisLocusError):
    pass


class BasePoint(GaloisLocusError):
    """A map's projective presentation vanishes at the requested point."""


class SingularPoint(GaloisLocusError):
    pass


class ReducibleModel(GaloisLocusError):
    """The affine equation is reducible over the rational function field."""


# detector

class RootsOfUnityMissing(GaloisLocusError, ValueError):
    pass


# kummer

class NotSuperelliptic(GaloisLocusError, ValueError):
    pass


class CharDividesD(GaloisLocusError, ValueError):
    pass


class ParityViolation(GaloisLocusError):
    pass


class NotABranchPoint(GaloisLocusError, ValueError):
    pass


class NoStructure(GaloisLocusError):
    pass


# families

class BadParameters(GaloisLocusError, ValueError):
    pass
