"""Exception hierarchy shared across the package."""


class ShapeSigError(Exception):
    """Base class for all shapesig-specific errors."""


class EmptyImage(ShapeSigError):
    """Raster with zero pixels."""


class EmptyShape(ShapeSigError):
    """Mask contains no foreground pixels."""


class DegenerateShape(ShapeSigError):
    """Shape too thin or too small to carry a usable boundary."""


class InvalidSampleCount(ShapeSigError):
    """Contour resampling asked for fewer than 4 points."""


class InvalidStep(ShapeSigError):
    """Signature step outside [1, N/2)."""


class DegenerateDescriptor(ShapeSigError):
    """Spectrum DC magnitude too small to normalize by."""


class KindMismatch(ShapeSigError):
    """Query descriptor kind differs from the index kind."""


class DimensionMismatch(ShapeSigError):
    """Query descriptor length differs from the index dimension."""


class FormatError(ShapeSigError):
    """Index file with a bad magic line or malformed records."""


class EmptyDataset(ShapeSigError):
    """Dataset directory holds no readable shape images."""


class InvalidCounts(ShapeSigError):
    """Precision/recall counts violate their preconditions."""


class MissingRelevant(ShapeSigError):
    """Ranking holds fewer relevant items than requested."""


class UnbalancedClasses(ShapeSigError):
    """Index classes do not all have the required member count."""
