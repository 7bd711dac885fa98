"""Exception types shared across the toolkit."""


class PfkitError(Exception):
    """Base class for all toolkit errors."""


class DomainError(PfkitError, ValueError):
    """An argument violates an operation's precondition (bad alphabet,
    out-of-range index, odd length where even is required, ...)."""


class ResourceError(PfkitError):
    """A request exceeds the configured desk-scale resource budget."""


class ExtensionError(PfkitError):
    """Leftward extension got stuck: no letter keeps all windows up to the
    horizon inside the language.  Carries the prefix that could not be
    extended; usually a sign the horizon is too small or the source word
    is not recurrent."""

    def __init__(self, stuck_prefix, horizon):
        self.stuck_prefix = stuck_prefix
        self.horizon = horizon
        super().__init__(
            f"no admissible letter within horizon {horizon}; "
            f"stuck at prefix {stuck_prefix!s}"
        )
