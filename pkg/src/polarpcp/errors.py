"""Exception types raised across the package."""


class PolarPCPError(Exception):
    """Base class for every error raised by polarpcp."""


class UnknownDimension(PolarPCPError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DegenerateRange(PolarPCPError, ValueError):
    pass


class BadClip(PolarPCPError, ValueError):
    pass


class BadParameter(PolarPCPError, ValueError):
    pass


class ShapeMismatch(PolarPCPError, ValueError):
    pass


class DegenerateEdge(PolarPCPError, ValueError):
    pass


class DegenerateVariance(PolarPCPError, ValueError):
    pass


class DegenerateSubset(PolarPCPError, ValueError):
    pass


class EmptyInput(PolarPCPError, ValueError):
    pass


class SchemaError(PolarPCPError, ValueError):
    pass


class BadPopulation(PolarPCPError, ValueError):
    pass


class MissingDate(PolarPCPError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class LayoutError(PolarPCPError, ValueError):
    pass


class IoError(PolarPCPError, OSError):
    pass


class FetchError(PolarPCPError, OSError):
    pass
