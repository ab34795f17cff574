"""Exception hierarchy shared by all qimedge modules."""


class QimedgeError(Exception):
    """Base class for every error raised by this package."""


class SizeError(QimedgeError, ValueError):
    """Qubit count, array length, or image side outside the supported range."""


class ValidationError(QimedgeError, ValueError):
    """An argument fails its contract (non-unitary gate, bad enum, bad range)."""


class QubitIndexError(QimedgeError, IndexError):
    """A qubit index does not address a qubit of the given state."""


class MeasurementError(QimedgeError):
    """A forced measurement outcome has (numerically) zero probability."""


class ContractError(QimedgeError):
    """A state handed to an operation violates that operation's precondition."""


class DegenerateInputError(QimedgeError, ValueError):
    """Input admits no well-defined result (e.g. an all-black image)."""


class InputError(QimedgeError):
    """A file could not be read or has an unsupported/corrupt format."""
