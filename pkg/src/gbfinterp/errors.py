"""Exception types shared across the library.

Construction errors (bad weights, bad indices, malformed files) are distinct
from numerical errors (non positive definite kernels, ill conditioned
systems) so that callers, in particular the command line driver, can map
them to different exit codes.
"""


class GBFError(Exception):
    """Base class for every error raised by this package."""


# ---------------------------------------------------------------- graphs


class NonPositiveWeightError(GBFError):
    """An edge weight was zero or negative."""


class SelfLoopError(GBFError):
    """An edge connects a node to itself."""


class DuplicateEdgeError(GBFError):
    """The same unordered node pair appears twice in an edge list."""


class IsolatedNodeError(GBFError):
    """A node has degree zero, so the normalized Laplacian is undefined."""


class IndexOutOfRangeError(GBFError):
    """A node or frequency index is outside 0..n-1."""


# -------------------------------------------------------------- spectral


class NotSymmetricError(GBFError):
    """A matrix expected to be symmetric is not."""


class DimensionMismatchError(GBFError):
    """A vector or matrix has the wrong length for this graph."""


class BandwidthOutOfRangeError(GBFError):
    """A bandwidth M is outside 1..n."""


# ------------------------------------------------------- basis functions


class NotInSubalgebraError(GBFError):
    """Fourier coefficients differ inside an eigenvalue cluster."""


class DeltaTooSmallError(GBFError):
    """An augmentation shift does not clear the most negative coefficient."""


class NotPSDError(GBFError):
    """The operation needs nonnegative spectral coefficients."""


class NotPDError(GBFError):
    """The operation needs strictly positive spectral coefficients."""


class InvalidParamError(GBFError):
    """A parameter is outside its documented domain."""


class DescriptorError(GBFError):
    """A basis function descriptor string failed to parse.

    Carries the character position of the failure and a short statement of
    what was expected there.
    """

    def __init__(self, text: str, position: int, expected: str):
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(
            f"bad descriptor {text!r}: expected {expected} at position {position}"
        )


# --------------------------------------------- interpolation and analysis


class IllConditionedError(GBFError):
    """A kernel system is numerically singular.

    Raised instead of silently regularizing. ``condition_estimate`` is a
    cheap lower estimate of the 2-norm condition number (may be ``inf``).
    """

    def __init__(self, message: str, condition_estimate: float = float("inf")):
        self.condition_estimate = condition_estimate
        super().__init__(message)


class NotNormingError(GBFError):
    """A sampling set is not norming for the requested bandlimited space."""


class InvalidRateError(GBFError):
    """A decay rate is outside the range where the bound formula holds."""


# ------------------------------------------------------- space-frequency


class FirstEigenvectorNotConstantError(GBFError):
    """The windowed transform needs a constant first eigenvector."""


# -------------------------------------------------------------- file I/O


class FileFormatError(GBFError):
    """A data file violates its documented format.

    Carries the path and the 1-based line number of the offending line.
    """

    def __init__(self, path, line: int, message: str):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {message}")
