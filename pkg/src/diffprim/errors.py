"""Exception types shared across the package."""

from __future__ import annotations


class DiffprimError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(DiffprimError, ZeroDivisionError):
    """Division by a zero polynomial or rational function."""


class DenominatorVanished(DiffprimError):
    """A substitution made a denominator identically zero."""


class PoleAtPoint(DiffprimError):
    """A denominator evaluated to zero at a concrete point."""


class UnboundVariable(DiffprimError):
    """Evaluation or substitution met a variable with no binding."""


class ExactDivisionError(DiffprimError):
    """Internal: an exact polynomial division left a remainder."""


class ArgumentOutOfRange(DiffprimError, ValueError):
    """An index or size parameter is outside its documented range."""


class DecompositionFailed(DiffprimError):
    """A Wronskian failed its structural decomposition.

    This cannot happen unless an implementation bug breaks the underlying
    identity, so callers must not swallow it.
    """


class NoWitness(DiffprimError):
    """No independence witness index exists; see DecompositionFailed."""


class ZeroPolynomial(DiffprimError, ValueError):
    """A nonzero differential polynomial was required."""


class ConstantElement(DiffprimError, ValueError):
    """A nonconstant field element was required."""


class NoNonconstant(DiffprimError):
    """Every supplied generator has derivative zero."""


class ZeroFactor(DiffprimError, ValueError):
    """The multiplier element of a scaled density step is zero."""


class RandomizationExhausted(DiffprimError):
    """Randomized rank estimation ran out of retries."""

    def __init__(self, retries: int, poles_hit: int):
        self.retries = retries
        self.poles_hit = poles_hit
        super().__init__(
            f"no stable pole-free rank witness within {retries} retries "
            f"({poles_hit} evaluation points hit a pole)"
        )


class CapExceeded(DiffprimError):
    """A bounded search exhausted its caps without success.

    Never interpreted as nonexistence: the underlying theory guarantees a
    witness exists, only the caps were too small.
    """

    def __init__(self, message: str, caps: dict, rejected: list | None = None):
        self.caps = dict(caps)
        self.rejected = list(rejected) if rejected is not None else []
        detail = ", ".join(f"{k}={v}" for k, v in sorted(self.caps.items()))
        super().__init__(f"{message} (caps: {detail})")


class MembershipNotFound(DiffprimError):
    """No membership certificate was found within the degree cap.

    Membership is not refuted, only unwitnessed up to the cap.
    """

    def __init__(self, degree_cap: int):
        self.degree_cap = degree_cap
        super().__init__(f"no membership certificate up to total degree {degree_cap}")


class ExprSyntaxError(DiffprimError):
    """Expression or file syntax error with a 1-based position."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class FieldFileError(DiffprimError):
    """Semantic error in a field-description file."""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


class MissingDerivation(FieldFileError):
    pass


class DuplicateGenerator(FieldFileError):
    pass


class UnknownVariable(FieldFileError):
    pass
