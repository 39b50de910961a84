"""Exception types shared across the toolkit.

Every error raised by the pipeline is a subclass of IeegDecError so CLI
code can map failures to a machine-readable name and exit nonzero.
"""


class IeegDecError(Exception):
    """Base class for all toolkit errors."""


class NyquistViolation(IeegDecError):
    """Band edge at or above fs/2."""


class TooShort(IeegDecError):
    """Input has fewer samples than the operation requires."""


class Empty(IeegDecError):
    """Empty input where at least one element is required."""


class OutOfBounds(IeegDecError):
    """One or more event windows fall outside the recording."""

    def __init__(self, event_indices, message=None):
        self.event_indices = list(event_indices)
        super().__init__(message or f"events out of bounds: {self.event_indices}")


class SingleClass(IeegDecError):
    """Training data contains only one class."""


class NonFinite(IeegDecError):
    """NaN or infinity where finite values are required."""


class ShapeMismatch(IeegDecError):
    """Array shape incompatible with the trained model or operation."""


class TooFewMinority(IeegDecError):
    """Minority class too small to oversample."""


class LengthMismatch(IeegDecError):
    """Paired sequences have different lengths."""


class TooFewTrials(IeegDecError):
    """Not enough trials to build the requested folds."""


class MissingChannel(IeegDecError):
    """Ensemble inference is missing features for selected channels."""

    def __init__(self, channel_indices, message=None):
        self.channel_indices = list(channel_indices)
        super().__init__(message or f"missing channels: {self.channel_indices}")


class SpecInvalid(IeegDecError):
    """Synthetic dataset specification fails validation."""


class ConfigInvalid(IeegDecError):
    """Run configuration fails validation."""


class ContainerCorrupt(IeegDecError):
    """On-disk container violates the format contract."""
