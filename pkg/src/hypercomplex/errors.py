"""Exception types shared across the package.

Division by zero in any coefficient field raises the builtin
ZeroDivisionError; everything else derives from HypercomplexError.
"""


class HypercomplexError(Exception):
    """Base class for all package-specific errors."""


class FieldMismatch(HypercomplexError):
    """Operands belong to different coefficient fields, or a field lacks
    a required element (e.g. a root of unity)."""


class AlgebraMismatch(HypercomplexError):
    """Operands belong to different algebras."""


class InvalidSignature(HypercomplexError):
    """Invalid construction data, e.g. a zero doubling constant."""


class HypothesisNotMet(HypercomplexError):
    """A verifier's mathematical hypotheses do not hold for the given
    algebra or field, so the check cannot be run."""


class ExcludedCase(HypercomplexError):
    """Equation data falls in a case the solution family excludes."""


class NotSimilar(HypercomplexError):
    """The two equation sides have different trace or norm, so the
    solution family would not solve the equation."""


class DegenerateWitness(HypercomplexError):
    """A decomposition witness was a scalar (vector part zero)."""


class IsotropicWitness(HypercomplexError):
    """A decomposition witness has an isotropic vector part (its square
    is zero), which the constructive formula cannot invert."""


class NotHomomorphic(HypercomplexError):
    """Generator images violate a defining relation."""


class NotInjective(HypercomplexError):
    """Monomial images are linearly dependent."""


class InvariantViolation(HypercomplexError):
    """An internal consistency check failed; indicates a bug."""


class SearchFailed(HypercomplexError):
    """A bounded search exhausted its budget without the guaranteed hit."""


class ElementSyntaxError(HypercomplexError):
    """An element or scalar literal failed to parse.

    Carries the offending text and the 0-based position of the bad token.
    """

    def __init__(self, text, pos, reason):
        self.text = text
        self.pos = pos
        self.reason = reason
        super().__init__(f"bad literal at position {pos}: {reason} (in {text!r})")
