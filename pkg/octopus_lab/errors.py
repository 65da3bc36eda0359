"""Exception hierarchy for octopus_lab."""


class OctopusLabError(Exception):
    """Base class for every error raised by the package."""


class PreconditionError(OctopusLabError, ValueError):
    """An operation was called outside its domain.

    The message names the violated precondition so the CLI can surface it
    verbatim (exit code 2).
    """


class DegreeMismatchError(PreconditionError):
    """Two objects live on symmetric groups of different degree."""


class ThetaUndefinedError(PreconditionError):
    """The reduction map needs at least one positive weight on vertex n."""


class NotPositiveSymmetricError(PreconditionError):
    """A spectral gap was requested for an element outside CG(+)."""


class AsymmetricMatrixError(PreconditionError):
    """A matrix handed to the symmetric eigensolver is not symmetric."""


class WeightsFileError(OctopusLabError):
    """A weight file does not follow the expected schema."""


class ProjectFileError(PreconditionError):
    """A project file is missing, is not JSON, or has no settings object."""


class InternalConsistencyError(OctopusLabError, AssertionError):
    """Two independent computations of the same quantity disagree."""


class InconclusiveError(OctopusLabError):
    """The optimizer did not reach the margin needed for a certificate."""
