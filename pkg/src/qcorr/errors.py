"""Exception types shared across the package."""


class QcorrError(Exception):
    """Base class for all qcorr errors."""


class DimensionError(QcorrError, ValueError):
    """Operand dimensions are unsupported or inconsistent."""


class HermiticityError(QcorrError, ValueError):
    """Input matrix is not Hermitian within tolerance."""


class StateError(QcorrError, ValueError):
    """Invalid state parameters, or a matrix violating density-matrix invariants."""


class DegenerateFormulaError(QcorrError, ArithmeticError):
    """A closed form hit a vanishing denominator outside its handled degenerate case."""


class RecordError(QcorrError, ValueError):
    """A state or sweep record could not be interpreted."""
