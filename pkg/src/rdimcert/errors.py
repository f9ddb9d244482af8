"""Exception hierarchy shared by every engine."""


class RdimError(Exception):
    """Base class for all errors raised by this package."""

    kind = "error"

    def to_dict(self):
        return {"type": self.kind, "message": str(self)}


class DomainError(RdimError, ValueError):
    kind = "domain_error"


class ResourceLimitError(RdimError):
    kind = "resource_limit"


class UnknownRdimError(RdimError):
    kind = "unknown_rdim"


class InvariantViolation(RdimError):
    kind = "invariant_violation"


class ConfigError(RdimError):
    kind = "malformed_config"


class RuleViolation(RdimError):
    """A tower violates one of the hypotheses the bound depends on.

    ``hypothesis`` is a short stable identifier, e.g. ``"at_most_three_centers"``.
    """

    kind = "rule_violation"

    def __init__(self, hypothesis, message):
        super().__init__(message)
        self.hypothesis = hypothesis

    def to_dict(self):
        return {"type": self.kind, "hypothesis": self.hypothesis, "message": str(self)}


class UnsupportedGeometry(RuleViolation):
    kind = "unsupported_geometry"
