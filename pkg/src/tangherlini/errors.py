"""Exception types shared across the package."""


class TangherliniError(Exception):
    """Base class; ``kind`` is the machine-readable tag used by the CLI."""

    kind = "computation_error"

    def __init__(self, message, location=None):
        super().__init__(message)
        self.message = message
        self.location = location


class UnclassifiableError(TangherliniError):
    kind = "unclassifiable"


class SingularPointError(TangherliniError):
    kind = "singular_point"


class ResonanceError(TangherliniError):
    kind = "resonance"


class DivergenceError(TangherliniError):
    kind = "divergence"


class PoleError(TangherliniError):
    kind = "gamma_pole"


class FormulaMismatchError(TangherliniError):
    kind = "formula_mismatch"


class DomainError(TangherliniError):
    kind = "domain"


class IntegrationError(TangherliniError):
    kind = "integration"
