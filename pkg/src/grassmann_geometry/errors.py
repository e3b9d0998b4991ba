"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`GrassmannError`, so callers (and the command line front end) can
separate domain failures from programming bugs.
"""


class GrassmannError(Exception):
    """Base class for domain errors."""


class BadDimensions(GrassmannError, ValueError):
    pass


class DimensionMismatch(GrassmannError, ValueError):
    pass


class RankDeficient(GrassmannError, ValueError):
    pass


class NotOrthonormal(GrassmannError, ValueError):
    pass


class BadArguments(GrassmannError, ValueError):
    pass


class DegenerateAngles(GrassmannError):
    """Principal angles coincide, so principal vectors are not unique.

    ``indices`` lists the offending index pairs, ``pair`` names the pair of
    subspaces when the caller knows it.
    """

    def __init__(self, message, indices=(), pair=None):
        super().__init__(message)
        self.indices = tuple(indices)
        self.pair = pair


class PhaseUndefined(GrassmannError):
    """The argument of a (numerically) vanishing product was requested."""


class TooSmallAmbient(GrassmannError, ValueError):
    pass


class StepTooLarge(GrassmannError, ValueError):
    pass


class NonSmoothFrame(GrassmannError):
    pass


class BadOrder(GrassmannError, ValueError):
    pass


class BadSteps(GrassmannError, ValueError):
    pass


class InvalidLoop(GrassmannError, ValueError):
    pass


class ParseError(GrassmannError):
    pass


class SchemaError(GrassmannError):
    pass
