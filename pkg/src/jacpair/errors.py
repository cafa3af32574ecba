"""Exception hierarchy shared by all jacpair modules."""


class JacpairError(Exception):
    """Base class for every error raised by this package."""


class ZeroPolynomial(JacpairError, ValueError):
    """Degree data was requested for the zero polynomial."""


class PolySyntaxError(JacpairError, ValueError):
    """Malformed polynomial expression; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NegativeExponent(PolySyntaxError):
    pass


class NonIntegerExponent(PolySyntaxError):
    pass


class ExponentTooLarge(PolySyntaxError):
    pass


class Overflow(JacpairError, OverflowError):
    pass


class PreconditionViolated(JacpairError, ValueError):
    pass


class SearchExhausted(JacpairError):
    """No admissible L was found below the search cap."""

    def __init__(self, L_max, what="witness"):
        super().__init__(f"no {what} found with L <= {L_max}")
        self.L_max = L_max


class NoWitness(JacpairError):
    """A congruence obstruction rules out every L, so no search can succeed."""

    def __init__(self, message, modulus=2):
        super().__init__(message)
        self.modulus = modulus


class NotJacobianPair(JacpairError):
    """Jac(p, q) is zero or not constant."""

    def __init__(self, jac):
        super().__init__(f"Jacobian is not a nonzero constant: {jac}")
        self.jac = jac


class InternalInconsistency(JacpairError, AssertionError):
    pass


class WitnessCheckFailed(JacpairError, AssertionError):
    pass


class NotTriangular(JacpairError, ValueError):
    pass


class NotReducible(JacpairError):
    """No elementary reduction lowers the degree of the current pair."""


class StepLimitExceeded(JacpairError):
    pass
