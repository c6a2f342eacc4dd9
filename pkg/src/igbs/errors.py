"""Exception hierarchy; the CLI maps these onto exit codes."""


class IgbsError(Exception):
    """Base class for all package errors."""


class ConfigError(IgbsError):
    """Invalid configuration or parameters (CLI exit code 2)."""


class DataError(IgbsError):
    """Invalid or inconsistent input data (CLI exit code 3)."""


class MethodError(IgbsError):
    """A selection or classification stage failed (CLI exit code 4)."""
