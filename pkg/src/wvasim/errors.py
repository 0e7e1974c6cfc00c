"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A configuration document or parameter set violates an invariant."""


class NumericalError(RuntimeError):
    """A numerical routine failed to reach its required accuracy."""


class ModeTruncationError(ValueError):
    """An operation would populate a mode index beyond the basis truncation."""


class SmallAngleError(ValueError):
    """A tilt is far outside the first-order (small-angle) regime."""


class SmallAngleWarning(UserWarning):
    """A tilt is large enough that first-order results degrade."""
