"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`SymsumError`
and carries a short machine-readable ``code`` used by the command line front end.
"""


class SymsumError(Exception):
    code = "error"
    exit_code = 1


class NotPrime(SymsumError, ValueError):
    code = "not_prime"


class Reducible(SymsumError, ValueError):
    code = "reducible"


class TooLarge(SymsumError, ValueError):
    code = "too_large"


class FieldDivisionByZero(SymsumError, ZeroDivisionError):
    code = "division_by_zero"


class NotAdditive(SymsumError, ValueError):
    code = "not_additive"


class NotHomogeneous(SymsumError, ValueError):
    code = "not_homogeneous"


class FieldMismatch(SymsumError, ValueError):
    code = "field_mismatch"


class MismatchedD(SymsumError, ValueError):
    code = "mismatched_d"


class BudgetExceeded(SymsumError, RuntimeError):
    code = "budget_exceeded"
    exit_code = 2

    def __init__(self, required, budget, what="points"):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} required: {required}, budget: {budget}")


class NonRationalResult(SymsumError, ArithmeticError):
    code = "non_rational_result"


class BadPrime(SymsumError, ValueError):
    code = "bad_prime"


class ZeroVector(SymsumError, ValueError):
    code = "zero_vector"


class BadMultiset(SymsumError, ValueError):
    code = "bad_multiset"


class AlreadyBalanced(SymsumError, ValueError):
    code = "already_balanced"


class NotStochastic(SymsumError, ArithmeticError):
    code = "not_stochastic"


class UnsupportedField(SymsumError, ValueError):
    code = "unsupported_field"


class ParseError(SymsumError, ValueError):
    code = "parse_error"
