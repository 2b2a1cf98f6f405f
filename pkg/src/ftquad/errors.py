"""Exception types raised across the package."""


class FtquadError(Exception):
    """Base class for all package errors."""


class NotSkew(FtquadError, ValueError):
    pass


class Degenerate(FtquadError, ValueError):
    pass


class TiltSingularity(FtquadError, ValueError):
    """Attitude is (numerically) upside down; yaw/tilt split undefined."""


class NumericalDivergence(FtquadError, ArithmeticError):
    pass


class DegenerateThrust(FtquadError, ValueError):
    pass


class HeadingSingularity(FtquadError, ValueError):
    pass


class ConfigError(FtquadError, ValueError):
    pass


class EmptyWindow(FtquadError, ValueError):
    pass
