"""Exception hierarchy shared by every module of the package."""


class DualGroupError(Exception):
    """Base class for all errors raised by :mod:`dualgroups`."""


class MalformedInputError(DualGroupError, ValueError):
    """Inputs of mismatched shape or otherwise ill-formed."""


class DegenerateInputError(DualGroupError, ValueError):
    """Zero vector, zero valuation and similar degenerate inputs."""


class InvalidTypeError(DualGroupError, ValueError):
    """Unknown Dynkin family or rank outside the allowed bounds."""


class NotARootError(DualGroupError, ValueError):
    pass


class NotABaseError(DualGroupError, ValueError):
    """A proposed set of (co)roots is not the base of a root subsystem."""


class SpanError(DualGroupError, ValueError):
    pass


class NotSphericalRootError(DualGroupError, ValueError):
    """No row of the classification table matches the coefficient pattern."""


class SpIncompatibleError(NotSphericalRootError):
    """The coefficient pattern matches but the S^p condition fails."""


class RestrictionMismatchError(DualGroupError):
    pass


class NotFiniteTypeError(DualGroupError):
    pass


class LatticeNotStableError(DualGroupError):
    pass


class NotRankOneError(DualGroupError):
    pass


class NotInConeError(DualGroupError, ValueError):
    pass


class NoEtaError(DualGroupError):
    """The lattice containments required for a distinguished map fail."""


class ParameterRangeError(DualGroupError, ValueError):
    pass


class UnknownEntryError(DualGroupError, KeyError):
    pass


class ParseError(DualGroupError, ValueError):
    """Syntax or validation error in a spherical-system file."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
