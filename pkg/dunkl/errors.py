# path: dunkl/errors.py


class DunklError(Exception):
    """Base class for every error raised by the toolkit."""

    exit_code = 1


class InvalidArgumentError(DunklError, ValueError):
    pass


class NotAFiniteGroupError(DunklError):
    pass


class ResolutionError(DunklError):
    pass


class DomainTagError(DunklError):
    pass


class UnsupportedGroupError(DunklError):
    """Kernel evaluation is only available for trivial, rank1 and z2_product groups."""

    exit_code = 3


class SeriesTruncationError(DunklError):
    pass


class DomainTooSmallError(DunklError):
    pass


class GeometryError(DunklError):
    pass


class InadmissibleTestFunctionError(DunklError):
    pass


class ConfigError(DunklError):
    exit_code = 2


class EmptyRunDirectoryError(DunklError):
    pass
