"""Exception hierarchy.

Every error raised on purpose by the package derives from `SubfreeError`
and carries the process exit code the CLI should use:
2 for bad input, 3 for domain errors, 4 for internal consistency failures.
"""
from typing import Optional


class SubfreeError(Exception):
    exit_code = 1


class InputError(SubfreeError):
    exit_code = 2


class DomainError(SubfreeError):
    exit_code = 3


class ConsistencyError(SubfreeError):
    exit_code = 4


# --- input -----------------------------------------------------------------

class GraphFileError(InputError):
    pass


class NotBipartite(InputError):
    pass


class Disconnected(InputError):
    pass


class StarNotEven(InputError):
    pass


class DuplicateId(InputError):
    pass


class UnknownVertex(InputError):
    pass


class WordParseError(InputError):
    pass


class NonComposableWord(InputError):
    pass


class FamilyParseError(InputError):
    pass


class SettingsError(InputError):
    pass


# --- domain ----------------------------------------------------------------

class ParameterOutOfRange(DomainError):
    pass


class NoConvergence(DomainError):
    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class NotConverged(DomainError):
    pass


class IndexTooSmall(DomainError):
    pass


class DivisionByNonUnit(DomainError):
    pass


class CompositionNeedsZeroConstantTerm(DomainError):
    pass


class NotInvertible(DomainError):
    pass


class ZeroMeanLaw(DomainError):
    pass


class MassNegative(DomainError):
    pass


class ChainTooShort(DomainError):
    pass


class WordTooLong(DomainError):
    pass


class BlockSizeZero(DomainError):
    pass


# --- consistency -----------------------------------------------------------

class InconsistentParity(ConsistencyError):
    pass


class DimensionMismatch(ConsistencyError):
    pass


class MethodDisagreement(ConsistencyError):
    def __init__(self, message: str, max_deviation: Optional[float] = None):
        super().__init__(message)
        self.max_deviation = max_deviation
