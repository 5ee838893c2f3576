"""Exception hierarchy.

Two families: :class:`UsageError` for malformed calls and input (CLI exit 2)
and :class:`MathError` for violated mathematical preconditions (CLI exit 3).
"""


class AlgdiagError(Exception):
    pass


class UsageError(AlgdiagError, ValueError):
    pass


class MathError(AlgdiagError, ArithmeticError):
    pass


class VarSetMismatch(UsageError):
    pass


class UnknownVariable(UsageError):
    pass


class ParseError(UsageError):
    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class UnknownIdentifier(ParseError):
    pass


class NotAPolynomial(UsageError):
    pass


class ZeroDenominator(MathError):
    pass


class NotAUnit(MathError):
    pass


class NotDivisible(MathError):
    pass


class NotARoot(MathError):
    pass


class MultipleRoot(MathError):
    pass


class BadSeed(MathError):
    pass


class NotCoprime(MathError):
    pass


class NotRegular(MathError):
    pass


class NotEtale(MathError):
    pass


class DenominatorNotUnit(MathError):
    pass


class NotExpandable(MathError):
    pass


class UseRepresentationBranch(MathError):
    pass
