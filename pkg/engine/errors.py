"""
Engine error types.

Infeasible generations are not errors: they come back as a GeneratedDatum
without output. Errors here mean the pieces were wired together wrongly.
"""


class ConfigurationError(ValueError):
    """Raised when a generator, choice model or policy do not fit together."""
