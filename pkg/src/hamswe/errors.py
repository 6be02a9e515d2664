"""Exception types used across the package."""


class ConfigError(ValueError):
    """Invalid or malformed run configuration."""


class DepthPositivityError(RuntimeError):
    """The depth field H lost positivity during assembly or time stepping."""


class GradientBlowupError(RuntimeError):
    """max|u_x| exceeded the configured guard (classical SWE steepening)."""
