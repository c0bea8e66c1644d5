"""Exception hierarchy shared by all modules.

Every error carries a machine-readable ``kind`` used by the CLI to build
{"error": {"kind", "message"}} documents and to pick exit codes.
"""


class PencilformError(Exception):
    kind = "error"
    exit_code = 2

    def __init__(self, message=""):
        super().__init__(message or self.__class__.__name__)


class ZeroInversion(PencilformError):
    kind = "ZeroInversion"


class ZeroInput(PencilformError):
    kind = "ZeroInput"


class WrongCharacteristic(PencilformError):
    kind = "WrongCharacteristic"


class ZeroPolynomial(PencilformError):
    kind = "ZeroPolynomial"


class DegreeBoundExceeded(PencilformError):
    kind = "DegreeBoundExceeded"


class ZeroForm(PencilformError):
    kind = "ZeroForm"


class SingularP(PencilformError):
    kind = "SingularP"


class SizeMismatch(PencilformError):
    kind = "SizeMismatch"


class VanishingDiscriminant(PencilformError):
    kind = "VanishingDiscriminant"


class SingularMatrix(PencilformError):
    kind = "SingularMatrix"


class CharTwo(PencilformError):
    kind = "CharTwo"


class Unsupported(PencilformError):
    kind = "Unsupported"
    exit_code = 3


class NonUnit(PencilformError):
    kind = "NonUnit"


class SchemeMismatch(PencilformError):
    kind = "SchemeMismatch"


class NotFree(PencilformError):
    kind = "NotFree"


class InstanceTooLarge(PencilformError):
    kind = "InstanceTooLarge"
    exit_code = 3


class BudgetExceeded(PencilformError):
    kind = "BudgetExceeded"
    exit_code = 3


class ZeroPoint(PencilformError):
    kind = "ZeroPoint"


class NonRationalPoint(PencilformError):
    kind = "NonRationalPoint"


class LeadingCoefficientMismatch(PencilformError):
    kind = "LeadingCoefficientMismatch"


class CoefficientConventionViolated(PencilformError):
    kind = "CoefficientConventionViolated"


class PreconditionViolated(PencilformError):
    kind = "PreconditionViolated"


class ConventionFailure(PencilformError):
    """Raised when neither transpose convention produces a symmetric pair.

    Signals an implementation bug, never expected on valid input.
    """

    kind = "ConventionFailure"
    exit_code = 1


class InputError(PencilformError):
    """Malformed CLI/JSON input."""

    kind = "InputError"
