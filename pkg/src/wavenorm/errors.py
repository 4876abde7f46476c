"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration value (tolerance range, malformed config file, ...)."""


class BlowupRegimeError(ValueError):
    """Requested a large-time envelope in a regime where the norm is infinite."""


class UnsupportedKernelError(ValueError):
    """Operation requires a conservative cosine kernel and got something else."""


class NonIntegrableError(ValueError):
    """The requested integral is infinite for structural reasons."""


class NonIntegrableTailError(NonIntegrableError):
    """Declared profile decay is too weak to certify a finite large-r tail."""
