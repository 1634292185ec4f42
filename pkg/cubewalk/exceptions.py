"""
Errors raised by cubewalk.

All errors derive from :class:`ValueError` so callers that only care about invalid input can keep catching that.
"""

__all__ = ['CubewalkError',
           'IdentityInGeneratingSet',
           'DuplicateGenerator',
           'EmptyGeneratingSet',
           'DimensionTooSmall',
           'TooManyExtras',
           'EdgeIndexOutOfRange',
           'WidthMismatch',
           'GeneratingSetFormatError',
           'ResourceLimitExceeded',
           'TooManyWires',
           'DegreeNotPowerOfTwo',
           'InvalidGate',
           'ProgramFormatError',
           'EmptyWindow',
           'TooFewRows',
           'ConfigError']


class CubewalkError(ValueError):
    pass


class IdentityInGeneratingSet(CubewalkError):
    pass


class DuplicateGenerator(CubewalkError):
    pass


class EmptyGeneratingSet(CubewalkError):
    pass


class DimensionTooSmall(CubewalkError):
    pass


class TooManyExtras(CubewalkError):
    pass


class EdgeIndexOutOfRange(CubewalkError):
    pass


class WidthMismatch(CubewalkError):
    pass


class GeneratingSetFormatError(CubewalkError):
    pass


class ResourceLimitExceeded(CubewalkError):
    """ The requested walk or circuit does not fit the configured wire limits. """


class TooManyWires(ResourceLimitExceeded):
    pass


class DegreeNotPowerOfTwo(CubewalkError):
    pass


class InvalidGate(CubewalkError):
    pass


class ProgramFormatError(CubewalkError):
    pass


class EmptyWindow(CubewalkError):
    pass


class TooFewRows(CubewalkError):
    pass


class ConfigError(CubewalkError):
    """ Invalid or incomplete command line / config file settings. """
