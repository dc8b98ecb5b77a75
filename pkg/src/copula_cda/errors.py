"""Exception hierarchy.

Every error raised by the package derives from :class:`CopulaCDAError`, and
each subclass also inherits from the builtin it most resembles so callers can
catch ``ValueError`` as usual. ``exit_code`` is consumed by the command line
front end.
"""


class CopulaCDAError(Exception):
    exit_code = 3


class UsageError(CopulaCDAError, ValueError):
    """Bad command line usage: unknown column, wrong column count, ..."""

    exit_code = 1


class ParseError(CopulaCDAError, ValueError):
    exit_code = 2


class InvalidDataError(CopulaCDAError, ValueError):
    """Non-finite or missing entries in the input data."""

    exit_code = 2


class SchemaError(CopulaCDAError, ValueError):
    exit_code = 2


class DomainError(CopulaCDAError, ValueError):
    """The data cannot be split into the required number of domains."""

    exit_code = 2


class InvalidSampleError(CopulaCDAError, ValueError):
    """Too few observations for the requested computation."""

    exit_code = 3


class ConfigError(CopulaCDAError, ValueError):
    exit_code = 3


class DimensionError(CopulaCDAError, ValueError):
    exit_code = 3


class ShapeError(CopulaCDAError, ValueError):
    exit_code = 3


class ParameterError(CopulaCDAError, ValueError):
    """A distribution parameter lies outside its admissible range."""

    exit_code = 3
