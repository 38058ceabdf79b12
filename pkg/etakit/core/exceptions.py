"""Error hierarchy shared by every etakit module.

All errors derive from ``EtakitError`` (a ``ValueError``) so that the CLI can
translate any of them into a nonzero exit with a one-line message.
"""


class EtakitError(ValueError):
    """Base class for domain errors."""


# laurent
class NotPalindromic(EtakitError):
    pass


class ZeroArgument(EtakitError):
    pass


class PolynomialSyntaxError(EtakitError):
    """Malformed polynomial or bracket text."""


# diagram / quotient / pi1 file formats
class DiagramSyntaxError(EtakitError):
    """Malformed line in a diagram, leveled or presentation file."""

    def __init__(self, message: str, line_no: int = 0):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}" if line_no else message)


class ConsistencyError(EtakitError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class UnknownComponent(EtakitError):
    pass


class SameComponent(EtakitError):
    pass


# quotient
class JumpMismatch(EtakitError):
    pass


class NonzeroHolonomy(EtakitError):
    pass


class AsymmetricTally(EtakitError):
    def __init__(self, message: str, indices=()):
        self.indices = sorted(indices)
        super().__init__(message)


# cover_oracle
class DepthTooSmall(EtakitError):
    pass


# pi1
class UndeclaredGenerator(EtakitError):
    pass


class BudgetExhausted(EtakitError):
    pass


class TemplateUnavailable(EtakitError):
    pass
