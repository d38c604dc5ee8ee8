"""Exception hierarchy shared by all dephasim modules."""


class DephasimError(Exception):
    """Base class for all library errors."""


class KindHasNoDensity(DephasimError, ValueError):
    """White and multi-delta spectra have no pointwise density."""


class EmptyOrUnsorted(DephasimError, ValueError):
    """Tabulated samples are too few, unsorted or negative."""


class AllZero(DephasimError, ValueError):
    """Tabulated samples carry no spectral weight."""


class UnsupportedKind(DephasimError, ValueError):
    pass


class TabulatedNeedsQuadrature(DephasimError, ValueError):
    """Tabulated spectra have no closed-form correlation."""


class WhiteIsSingular(DephasimError, ValueError):
    """The white spectrum has no density to integrate."""


class NotConverged(DephasimError, ArithmeticError):
    """Adaptive quadrature ran out of subdivisions.

    The best available estimate and its error bound are kept on the
    exception so callers can decide whether they are usable.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class NotNormalized(DephasimError, ValueError):
    pass


class InvalidDensityMatrix(DephasimError, ValueError):
    pass


class EigenNotConverged(DephasimError, ArithmeticError):
    pass


class OracleMismatch(DephasimError, ArithmeticError):
    """Closed form and quadrature disagree during a validation sweep."""

    def __init__(self, message, length=None, difference=None):
        super().__init__(message)
        self.length = length
        self.difference = difference


class InvalidConfig(DephasimError, ValueError):
    pass
