from utils import constants


class TauGlueError(Exception):
    """Base class for every error raised by tauglue."""
    exit_code = constants.EXIT_INPUT_ERROR


# --- Input & Validation Errors (exit 1) ---

class InputError(TauGlueError):
    exit_code = constants.EXIT_INPUT_ERROR


class DimensionMismatch(InputError):
    pass


class NotSubspace(InputError):
    pass


class InvalidQuiver(InputError):
    pass


class InvalidRelation(InputError):
    pass


class NotFiniteDimensional(InputError):
    pass


class InvalidAlgebra(InputError):
    pass


class EmptySubset(InputError):
    pass


class FullSubset(InputError):
    pass


class UnknownVertex(InputError):
    pass


class AlgebraMismatch(InputError):
    pass


class InvalidModule(InputError):
    pass


class UnknownModuleLiteral(InputError):
    pass


class MissingIdempotent(InputError):
    pass


class AlgebraFileError(InputError):
    """A parse or validation problem anchored to a position in an algebra file."""

    def __init__(self, message: str, line: int, column: int, source: str = "<input>"):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.source = source

    def __str__(self):
        return f"{self.source}:{self.line}:{self.column}: {self.message}"


class NoMatch(InputError):
    pass


# --- Search Limits (exit 2) ---

class CapExceeded(TauGlueError):
    exit_code = constants.EXIT_CAP_EXCEEDED


# --- Internal Assertions (exit 3) ---

class InternalAssertion(TauGlueError):
    """Raised when a computed object contradicts the theory it should satisfy."""
    exit_code = constants.EXIT_VERIFICATION_FAILED


class RadicalNotNilpotent(InternalAssertion):
    pass


class LiftFailure(InternalAssertion):
    pass


class DecompositionStuck(InternalAssertion):
    pass


class CriterionMismatch(InternalAssertion):
    pass


class MutationFailed(InternalAssertion):
    pass


class NotASemibrick(InternalAssertion):
    pass


class AmbiguousMatch(InternalAssertion):
    pass


class GluingNotSemibrick(InternalAssertion):
    pass


class ThetaNotWellDefined(InternalAssertion):
    pass


class VerificationFailed(InternalAssertion):
    def __init__(self, message: str, failures=None):
        super().__init__(message)
        self.failures = list(failures or [])
