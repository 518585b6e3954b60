"""Exception hierarchy shared across the package."""


class IsoasymError(Exception):
    """Base class for every error raised by this package."""


class NonFiniteVector(IsoasymError, ValueError):
    pass


class NearNullVector(IsoasymError, ValueError):
    """A vector is too close to the light cone to be normalized."""


class OutOfDomain(IsoasymError, ValueError):
    pass


class StencilOutsideDomain(IsoasymError, ValueError):
    """A finite-difference stencil would sample outside the parameter domain."""


class VanishingCurvature(IsoasymError, ValueError):
    pass


class NullPrincipalNormal(IsoasymError, ValueError):
    pass


class NotUnitSpeed(IsoasymError, ValueError):
    pass


class DegenerateNormal(IsoasymError, ValueError):
    """The surface normal vanishes (singular parametrization point)."""


class NullNormal(IsoasymError, ValueError):
    """The surface normal is lightlike, so no unit normal exists."""


class DegenerateFirstForm(IsoasymError, ValueError):
    pass


class NotIsoparametric(IsoasymError, ValueError):
    pass


class UnknownPreset(IsoasymError, KeyError):
    pass


class ParseError(IsoasymError, ValueError):
    """Config or expression parse failure, located by line and column."""

    def __init__(self, message, line=None, column=None, token=None):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)
