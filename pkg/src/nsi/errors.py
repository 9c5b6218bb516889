"""Exception hierarchy.

Every domain error derives from :class:`NSIError`, so callers (and the
command line front end) can catch one type.  ``str(exc)`` is a short
diagnostic without the class name.
"""


class NSIError(ValueError):
    pass


# exact arithmetic
class SingularMatrix(NSIError):
    pass


class DimensionMismatch(NSIError):
    pass


class NotSymmetric(NSIError):
    pass


# resolution graphs
class NotNegativeDefinite(NSIError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"leading principal minor {index} has the wrong sign")


class AsymmetricAdjacency(NSIError):
    pass


class InvalidPair(NSIError):
    pass


# surface models
class UnsupportedModel(NSIError):
    pass


# fans
class NotComplete(NSIError):
    pass


class NotPrimitive(NSIError):
    pass


class NotSimplicial(NSIError):
    pass


class DuplicateRay(NSIError):
    pass


class NotSmooth(NSIError):
    pass


class NotCartier(NSIError):
    pass


# limits
class QuasiPolynomialMismatch(NSIError):
    pass


class NonStabilizing(NSIError):
    pass


# Chern ledger
class ModelMismatch(NSIError):
    pass


class MissingChiO(NSIError):
    pass
