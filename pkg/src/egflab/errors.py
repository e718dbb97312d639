"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: usage/parse problems exit 2,
resource-cap problems exit 3.
"""


class EgflabError(Exception):
    """Base class for all package errors."""


class CapExceededError(EgflabError):
    """A requested enumeration exceeds the family's configured cap."""


class BlowupLimitError(EgflabError):
    """An operator-power expansion would exceed the word blowup guard."""


class ConstantTermError(EgflabError):
    """A series has the wrong constant term for the requested transform."""


class MissingVariableError(EgflabError):
    """A polynomial evaluation did not cover every occurring variable."""


class UnknownFeatureError(EgflabError):
    """A statistic refers to a feature the family does not define."""


class OperatorSyntaxError(EgflabError):
    """Operator-expression parse failure; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InhomogeneousOperatorError(EgflabError):
    """Normal support has more than one excess value."""

    def __init__(self, excesses):
        self.excesses = tuple(sorted(excesses))
        super().__init__(f"operator is not homogeneous: excesses {self.excesses}")


class NotOneAnnihilationError(EgflabError):
    """A word of the operator does not contain exactly one annihilation."""


class ExtractionMismatchError(EgflabError):
    """A normal-form term does not fit the homogeneous-extraction shape.

    This never fires for a correct implementation; it signals a bug.
    """


class BFileFormatError(EgflabError):
    """Malformed b-file line; carries the 1-based line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
