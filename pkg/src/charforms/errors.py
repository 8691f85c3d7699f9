"""Exception hierarchy shared by all modules."""


class CharformsError(Exception):
    """Base class for all library-specific errors."""


class UnknownGenerator(CharformsError, ValueError):
    """A word refers to a generator that the presentation does not have."""


class WordSyntaxError(CharformsError, ValueError):
    """Malformed token in a word string."""


class IndexOutOfRange(CharformsError, IndexError):
    """Generator index outside the presentation's range."""


class SingularMatrix(CharformsError, ValueError):
    """Matrix inversion requested for a (numerically) singular matrix."""


class ConvergenceFailure(CharformsError, RuntimeError):
    """An iterative linear-algebra routine failed to converge."""


class NoConvergence(CharformsError, RuntimeError):
    """Gauss-Newton did not reach the residual tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class RankInstability(CharformsError, RuntimeError):
    """A singular value sits too close to the rank cutoff; dimensions untrustworthy."""


class NotSurfacePresentation(CharformsError, ValueError):
    """Presentation is not the standard genus-g surface presentation."""


class DegreeMismatch(CharformsError, ValueError):
    """Degrees of polynomial, cycle and argument list do not agree."""


class LeftChart(CharformsError, RuntimeError):
    """Retraction correction exceeded the chart step; chart too large."""


class NotEndomorphism(CharformsError, ValueError):
    """Candidate generator images do not define a group endomorphism at rho."""


class NotTangent(CharformsError, ValueError):
    """Family derivative fails the cocycle residual check."""


class InvalidInput(CharformsError, ValueError):
    """Malformed JSON payload or inconsistent job configuration."""
