"""Exception hierarchy for the algebra engine.

Verification failures are reported as data; these exceptions signal
inputs the engine cannot work with at all. ``UsageError`` subclasses
name a bad request (unknown tag, family or suite, malformed parameters);
the rest are raised while computing.
"""


class AlgebraError(Exception):
    """Base class for every engine error."""


class UsageError(AlgebraError):
    """The request names something the engine does not have, or has the wrong shape."""


class DivisionByZero(AlgebraError):
    """Exact division by the zero scalar."""


class CapExceeded(AlgebraError):
    """A configured size cap (basis enumeration, symmetrizer) was exceeded."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class LabelOutOfRange(UsageError):
    """A simple-module label violates its family's index set."""


class UnknownTag(UsageError):
    """A catalog tag that names no Yetter-Drinfeld module."""


class UnknownFamily(UsageError):
    """A lifting family index that is not implemented."""


class ParameterShapeMismatch(UsageError):
    """Lifting parameters do not fit the family's multiplicities."""


class WitnessShapeMismatch(UsageError):
    """An isomorphism witness does not cover the generators of the source."""


class MissingOption(UsageError):
    """A suite action was run without an option it needs (tag, family, witness)."""


class NoAntipode(AlgebraError):
    """The convolution-inverse system of a bialgebra is inconsistent."""


class NotAnAutomorphism(AlgebraError):
    """A generator assignment does not extend to a Hopf automorphism."""


class NicholsNotFinite(AlgebraError):
    """The Nichols algebra could not be certified finite-dimensional."""


class UnknownSuite(UsageError):
    """A verification suite or suite action that is not registered."""
