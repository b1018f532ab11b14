"""Exception hierarchy shared by the library and the CLI."""


class Ads3Error(Exception):
    """Base class for all library errors."""


class NonPositiveDeterminant(Ads3Error):
    """A matrix with det <= 0 cannot be rescaled onto adS3."""


class ParamArity(Ads3Error):
    """Wrong number of group parameters for a catalog label."""


class DimensionOutOfRange(Ads3Error):
    """Gram form requested for an orbit of dimension 0 or 3."""


class UnexpectedSignature(Ads3Error):
    """An induced form with no place in the classification (e.g. a time-like surface)."""


class NotSameOrbit(Ads3Error):
    """Transporter requested between points on different orbits."""


class SolveFailed(Ads3Error):
    """The numerical transporter solve did not converge."""


class MalformedBasis(Ads3Error):
    """A finite topology basis is not closed under intersection."""
