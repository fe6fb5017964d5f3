"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI prints on
failure (``error: <code>: <message>``).
"""


class HyperdecayError(Exception):
    code = "Error"


class ParameterOutOfRange(HyperdecayError, ValueError):
    code = "ParameterOutOfRange"


class NonStationary(HyperdecayError, ValueError):
    code = "NonStationary"


class NonInvertible(HyperdecayError, ValueError):
    code = "NonInvertible"


class DegenerateMemory(HyperdecayError, ValueError):
    code = "DegenerateMemory"


class Unsupported(HyperdecayError, TypeError):
    code = "Unsupported"


class DomainError(HyperdecayError, ValueError):
    code = "DomainError"


class ToleranceUnachievable(HyperdecayError, RuntimeError):
    code = "ToleranceUnachievable"


class InsufficientLags(HyperdecayError, ValueError):
    code = "InsufficientLags"


class MixedSigns(HyperdecayError, ValueError):
    code = "MixedSigns"


class WindowTooShort(HyperdecayError, ValueError):
    code = "WindowTooShort"


class NotPositiveDefinite(HyperdecayError, ValueError):
    code = "NotPositiveDefinite"


class MissingInnovationVariance(HyperdecayError, ValueError):
    code = "MissingInnovationVariance"


class EmptyData(HyperdecayError, ValueError):
    code = "EmptyData"


class MethodCapExceeded(HyperdecayError, ValueError):
    code = "MethodCapExceeded"


class LagTooLarge(HyperdecayError, ValueError):
    code = "LagTooLarge"
