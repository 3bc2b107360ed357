"""Error types shared across the simulator."""


class ConfigError(ValueError):
    """A configuration value is missing, unparseable, or out of range."""


class CapacityError(ValueError):
    """A requested search space exceeds the configured size limit."""
