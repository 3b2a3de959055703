"""Exception hierarchy for hartree-lab.

Expected findings (an empty window, a failed check) are reported as values.
Exceptions are reserved for inputs an operation cannot be evaluated on.
"""

from typing import Optional


class HartreeLabError(Exception):
    """Base error. ``tag`` names the condition that failed, when there is one."""

    def __init__(self, message: str, tag: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.tag = tag

    def __str__(self) -> str:
        if self.tag:
            return f"[{self.tag}] {self.message}"
        return self.message


class ParameterError(HartreeLabError):
    """A parameter violates a type invariant or an operation precondition."""


class DegenerateParameterError(ParameterError):
    """n = 2s or p = 1: the critical-exponent formulas divide by zero."""


class DualPairError(HartreeLabError):
    """Input pair not admissible, or the dual Lebesgue index leaves (1, inf)."""


class LemmaHypothesisError(HartreeLabError):
    """The exponent relation required by a functional inequality does not hold."""


class NonFiniteFieldError(HartreeLabError):
    """A grid field contains NaN or inf entries."""


class ResolutionError(HartreeLabError):
    """Too much spectral energy in the top octave for the grid to be trusted."""


class NumericalBlowupError(HartreeLabError):
    """The time integration produced non-finite values."""


class ConfigError(HartreeLabError):
    """Malformed configuration text. ``line`` is 1-based."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message, tag="config")
        self.line = line

    def __str__(self) -> str:
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        return self.message
