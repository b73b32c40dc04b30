"""Exception types shared across the package."""

from __future__ import annotations


class BitangentsError(Exception):
    """Base class for all package errors."""


class DegenerateElimination(BitangentsError):
    """Resultant elimination received an identically zero polynomial."""


class NonConvergence(BitangentsError):
    """An iterative refinement failed to meet its residual bound.

    ``index`` identifies the offending root or candidate when applicable.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class WrongCount(BitangentsError):
    """The merged bitangent count differs from 28.

    Carries per-chart diagnostics so callers can distinguish a singular or
    degenerate quartic from a tolerance failure.
    """

    def __init__(self, count: int, diagnostics=None):
        super().__init__(f"expected 28 bitangents, found {count}")
        self.count = count
        self.diagnostics = diagnostics


class CapExceeded(BitangentsError):
    """Group closure exceeded the element cap (non-finite or drifting)."""

    def __init__(self, cap: int):
        super().__init__(f"closure exceeded cap of {cap} elements")
        self.cap = cap


class AmbiguousMatch(BitangentsError):
    """Two distinct elements fell inside the guard band around match_tol.

    Tolerance-based identification is unreliable in this regime, so the
    computation is aborted rather than silently misidentifying elements.
    """


class NotInvariant(BitangentsError):
    """A group element mapped a bitangent outside the computed set."""

    def __init__(self, element_index: int, line):
        super().__init__(
            f"group element {element_index} does not preserve the bitangent set"
        )
        self.element_index = element_index
        self.line = line


class ExcludedParameter(BitangentsError):
    """Parameters hit an excluded locus of a catalog family.

    ``promoted_type`` names the type the curve degenerates or promotes to,
    or ``None`` when the locus gives a singular curve.
    """

    def __init__(self, message: str, promoted_type: str | None = None):
        super().__init__(message)
        self.promoted_type = promoted_type


class ArityMismatch(BitangentsError):
    """Wrong number of parameters for a catalog family."""


class DegenerateFamily(BitangentsError):
    """Specialization requested on a family with no free parameters."""
