"""Exception types shared across the package."""


class FclError(Exception):
    """Base class for all package-specific errors."""


class InvalidArgumentError(FclError):
    """A parameter is outside its documented domain."""


class InvalidStateError(FclError):
    """A state or matrix violates a structural requirement (norm, shape, positivity)."""


class SingularModeError(FclError):
    """A momentum mode has |sin eps| ~ 0, so its Bloch axis is undefined."""


class DegenerateTopologyError(FclError):
    """The quasienergy gap closes, so the winding number is undefined."""


class ResourceLimitError(FclError):
    """A requested computation exceeds the configured size limits."""


class ConfigError(InvalidArgumentError):
    """An experiment configuration file is malformed or inconsistent."""
