"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Raised for invalid configuration values (bad sizes, ranges, keys)."""


class DimensionError(ValueError):
    """Raised when vector/codebook dimensions do not match."""
