"""Exception types shared across the package."""


class QuadGaitError(Exception):
    """Base class for all planner and simulator errors."""


class InfeasibleState(QuadGaitError):
    """A robot state violates the kinematic model (foot outside its workspace)."""


class InfeasiblePlan(QuadGaitError):
    """No plan exists under the requested constraints."""


class NoSupport(QuadGaitError):
    """A state has fewer than the supporting feet required to stand."""


class MalformedTimeline(QuadGaitError):
    """A timeline's segments are not contiguous or do not chain consistently."""


class ConfigError(QuadGaitError):
    """Base class for configuration problems."""


class MissingConfigFile(ConfigError):
    """The requested config file does not exist or cannot be read."""


class ConfigParseError(ConfigError):
    """The config file or a --set override is not well-formed."""


class ConfigValidationError(ConfigError):
    """A config value is out of range or otherwise unusable."""
