"""Exception hierarchy. ``exit_code`` is what the CLI returns for each class."""


class DualFramesError(Exception):
    exit_code = 3


# -- input / parse errors (exit 2) ------------------------------------------

class InputError(DualFramesError):
    exit_code = 2


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RangeError(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class SelfLoop(ParseError):
    pass


# -- mathematical preconditions (exit 3) ------------------------------------

class MathError(DualFramesError):
    exit_code = 3


class NonSymmetric(MathError):
    pass


class NoConvergence(MathError):
    pass


class DomainError(MathError, ValueError):
    pass


class RankZero(MathError):
    pass


class NotAFrame(MathError):
    pass


class DimensionMismatch(MathError):
    pass


class NotCorank1(MathError):
    pass


class NotIndependent(MathError):
    def __init__(self, message, subset=()):
        self.subset = tuple(subset)
        super().__init__(message)


class CombinatorialLimit(MathError):
    pass


class PreconditionError(MathError, ValueError):
    pass


# -- verification failures (exit 4) -----------------------------------------

class VerificationError(DualFramesError):
    exit_code = 4


class NotADual(VerificationError):
    def __init__(self, residual):
        self.residual = float(residual)
        super().__init__(
            f"not a dual pair: ||Theta_G* Theta_F - I||_F = {self.residual:.6e}")


class NotEquivalent(VerificationError):
    pass


class InvariantViolation(VerificationError):
    pass
