"""
Exception types raised by the models and controllers.
"""


class RingMismatchError(ValueError):
    """Operands live in scalar rings of different rank or base ring."""


class NotComposableError(ValueError):
    """Target of the first map does not match the source of the second."""


class NotHomogeneousError(ValueError):
    """A scalar or matrix entry has no single bidegree."""


class DegreeError(ValueError):
    """A matrix entry does not have the bidegree claimed for it."""


class RegimeError(ValueError):
    """A complex or matrix is used outside the differential regime it allows."""


class BlockDecompositionError(ValueError):
    """The cyclic block decomposition of a subset does not exist."""


class VerificationError(Exception):
    """A constructed object failed one of its defining identities.

    Args:
        statement (str): Identifier of the failing statement
        lhs (str): Reduced left-hand side
        rhs (str): Reduced right-hand side
    """

    def __init__(self, statement, lhs="", rhs=""):
        self.statement = statement
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"{statement} failed: {lhs} != {rhs}")
