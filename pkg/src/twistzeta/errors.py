"""Exception types raised by twistzeta."""


class ContractError(ValueError):
    """An operation was called outside its documented preconditions."""


class PoleError(ZeroDivisionError):
    """A twist equal to 1 was used where the twisted zeta value has a pole."""


class PrecisionError(ArithmeticError):
    """A p-adic operation needs more precision than its inputs carry."""


class UnsupportedEmbeddingError(ValueError):
    """The cyclotomic element has no image in Q_p under the configured embedding."""


class HypothesisViolation(ValueError):
    """A hard hypothesis of the p-adic construction fails.

    ``residue`` holds the offending point (if any) so callers can report it.
    """

    def __init__(self, message, residue=None):
        super().__init__(message)
        self.residue = residue
