"""Exception hierarchy shared by all graphheat modules."""


class GraphHeatError(Exception):
    """Base class for every error raised by graphheat."""


class GraphSizeError(GraphHeatError, OverflowError):
    """Vertex count does not fit the platform index range."""


class DimensionError(GraphHeatError, ValueError):
    """Signal, basis or matrix dimensions disagree."""


class CapacityError(GraphHeatError):
    """Problem too large for the dense eigensolver; use the grid path."""


class ConvergenceError(GraphHeatError, ArithmeticError):
    """QL iteration exhausted its sweep budget."""


class ConfigurationError(GraphHeatError, ValueError):
    """Parameters outside their admissible ranges (including Euler stability)."""


class AmplificationError(GraphHeatError, OverflowError):
    """Backward amplification factor would overflow double precision."""


class PGMError(GraphHeatError, ValueError):
    """Base class for PGM parse failures."""


class PGMMagicError(PGMError):
    """Stream does not start with a recognised netpbm magic number."""


class PGMUnsupportedError(PGMError):
    """Valid netpbm magic for a format other than grayscale PGM."""


class PGMHeaderError(PGMError):
    """Width, height or maxval field missing or not a positive integer."""


class PGMMaxvalError(PGMError):
    """Maxval larger than 255 (16-bit PGM is not supported)."""


class PGMTruncatedError(PGMError):
    """Payload holds fewer samples than width * height."""


class PGMSampleError(PGMError):
    """A sample is malformed or exceeds maxval."""
