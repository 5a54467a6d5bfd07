"""Exception types shared across the package."""

from __future__ import annotations


class MindistError(Exception):
    """Base class for all package errors."""


class InvalidDimensions(MindistError):
    """Matrix or code dimensions violate 0 < k <= n."""


class InvalidArity(MindistError):
    """Combination size g (or store depth s) outside its valid range."""


class OutOfRange(MindistError):
    """Rank argument outside [0, C(k, g))."""


class RankDeficient(MindistError):
    """Generator matrix does not have full row rank."""


class BudgetExceeded(MindistError):
    """Saved-additions store would exceed the memory budget."""

    def __init__(self, required_bytes: int, budget_bytes: int):
        self.required_bytes = required_bytes
        self.budget_bytes = budget_bytes
        super().__init__(
            f"saved-additions store needs {required_bytes} bytes, "
            f"budget is {budget_bytes}"
        )


class TooLarge(MindistError):
    """Brute-force enumeration refused: 2^k is beyond the configured cap."""


class MatrixFormatError(MindistError):
    """Malformed matrix text."""


class NotADivisor(MindistError):
    """Polynomial does not divide x^m - 1."""


class NotAUnit(MindistError):
    """Polynomial is not invertible in F2[x]/(x^m - 1)."""


class LengthMismatch(MindistError):
    """Operands have different code lengths."""


class ScriptError(MindistError):
    """Malformed construction script."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class Interrupted(MindistError):
    """Run stopped early; carries the partial report for resumption."""

    def __init__(self, report):
        self.report = report
        super().__init__("interrupted")
