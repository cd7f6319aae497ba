"""Exception types shared across the engine."""


class PhaxError(Exception):
    """Base class for all engine errors."""


class TheoryParseError(PhaxError):
    """Raised by the strict parsing helpers when a source does not parse.

    Carries the list of Diagnostic records produced by the parser.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(d.message for d in self.diagnostics) or "parse failed"
        super().__init__(lines)


class TheoryValidationError(PhaxError):
    """A theory violates its structural invariants."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(d.message for d in self.diagnostics) or "invalid theory"
        super().__init__(lines)


class GroundingLimitError(PhaxError):
    """Grounding would exceed the configured instance cap."""


class ArgumentLimitError(PhaxError):
    """Argument construction would exceed the configured cap."""


class SizeCapError(PhaxError):
    """Exhaustive labelling enumeration refused: framework too large."""


class UnknownTargetError(PhaxError):
    """A query names an argument, literal, premise, or session that does not exist."""


class UnknownSchemeError(PhaxError):
    """A scheme id or critical-question id is not in the catalogue."""


class InsufficientExplanationError(PhaxError):
    """No subtree satisfies the sufficiency threshold and faithfulness slack."""

    def __init__(self, sigma_full, tau):
        self.sigma_full = sigma_full
        self.tau = tau
        super().__init__(
            f"INSUFFICIENT: no feasible explanation subtree "
            f"(sigma_full={sigma_full:.4f}, tau={tau:.4f})"
        )


class RenderFormatError(PhaxError):
    """Unsupported rendering format."""
