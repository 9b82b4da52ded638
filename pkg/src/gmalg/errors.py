"""Exception taxonomy shared by all modules.

The distinction that matters downstream (and for CLI exit codes):
input/guard problems vs. mathematical findings vs. internal theorem
violations that indicate a bug or corrupted input.
"""


class GmalgError(Exception):
    """Base class for all toolkit errors."""


class InputError(GmalgError):
    """Malformed user input (JSON documents, flags, shapes)."""


class DimensionMismatch(InputError):
    pass


class NotEnumerable(InputError):
    """Operation requires a finite coefficient ring."""


class BudgetExceeded(InputError):
    """Exhaustive enumeration would exceed the configured budget."""


class InvalidContext(InputError):
    """The supplied tensors do not form a Morita context."""


class InvalidAlgebra(InputError):
    """Structure constants violate associativity or unit axioms."""


class BadSplit(InputError):
    pass


class BadShape(InputError):
    pass


class TwoTorsion(InputError):
    """Ring fails the 2-torsion-free guard required by the main pipeline."""


class NotFaithful(InputError):
    """The M bimodule is not faithful on the required side."""


class NotKCommuting(InputError):
    """Precondition failure: the supplied map is not k-commuting."""


class NotDerivation(InputError):
    """Precondition failure: the supplied map is not a derivation."""


class HypothesesNotMet(GmalgError):
    """The sufficient conditions for the proper-form construction fail."""


class TheoremViolation(GmalgError):
    """A check that is guaranteed to pass failed.

    This is never a mathematical finding: it means an implementation bug
    or corrupted input, and is kept fatal so CI semantics stay honest.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
