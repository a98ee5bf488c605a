"""Exception hierarchy shared by all easyqg modules.

The CLI maps these onto exit codes: ParseError -> 2, any other
PreconditionError / EasyQGError -> 3.
"""


class EasyQGError(Exception):
    """Base class for all library errors."""


class ParseError(EasyQGError, ValueError):
    """Malformed partition literal, label string or serialized value."""


class PreconditionError(EasyQGError, ValueError):
    """An operation was invoked outside its documented domain."""


class ColorMismatch(PreconditionError):
    """Composition attempted where the middle color patterns disagree."""


class EmptyRow(PreconditionError):
    """Rotation requested from a row that has no points."""


class ShapeMismatch(PreconditionError):
    """Operands have incompatible shapes (sizes or color strings)."""


class BoundTooSmall(PreconditionError):
    """A closure seed already exceeds the requested point bound."""


class IndexOutOfRange(PreconditionError):
    """A multi-index entry lies outside {1, ..., n}."""


class SizeOverflow(PreconditionError):
    """A requested matrix would exceed the configured entry cap."""


class NotProjective(PreconditionError):
    """A projective partition was required."""


class MissingSubprojectives(PreconditionError):
    """The category sample cannot guarantee all sub-projectives are present."""


class ModulusMismatch(PreconditionError):
    """Words over different cyclic groups cannot be combined."""


class OddLabel(PreconditionError):
    """An even label was required."""


class WrongFamily(PreconditionError):
    """A label or operation was used with a ring of the wrong family."""


class NotReachable(PreconditionError):
    """A label was not found in any tensor power within the level cap."""


class InconsistentDimension(EasyQGError):
    """The dimension recursion produced a non-positive value."""
