"""Exception types shared across the package."""


class DisjointnessError(Exception):
    """Base class for all library-specific errors."""


class PauliSyntaxError(DisjointnessError, ValueError):
    """A Pauli string could not be parsed for the given qudit dimension."""


class DimensionMismatchError(DisjointnessError, ValueError):
    """Operands live on different qudit counts or qudit dimensions."""


class CompositeDimensionError(DisjointnessError, ValueError):
    """The qudit dimension is not a prime number."""


class CodeConstructionError(DisjointnessError, ValueError):
    """Stabilizer generators are inconsistent (non-commuting or dependent)."""


class CodeFileError(DisjointnessError, ValueError):
    """A code/partition/witness/circuit text file is malformed.

    Carries the 1-based line number when one is known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceededError(DisjointnessError, RuntimeError):
    """A coset enumeration would exceed the configured element budget."""


class WitnessError(DisjointnessError, ValueError):
    """A declared witness set failed re-verification."""


class OracleSizeError(DisjointnessError, ValueError):
    """The instance is too large for dense simulation."""


class NumericallyAmbiguousError(DisjointnessError, RuntimeError):
    """A floating-point test landed between the pass and fail thresholds."""
