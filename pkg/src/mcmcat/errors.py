"""Exception types.  The CLI maps each family to an exit code."""


class McmError(Exception):
    exit_code = 1


class ShapeError(McmError, ValueError):
    exit_code = 4


class MalformedInput(McmError, ValueError):
    exit_code = 4


class UnsupportedField(McmError):
    exit_code = 2


class UnsupportedBase(McmError):
    exit_code = 2


class NonSplitTop(McmError):
    exit_code = 2


class ResolutionCapExceeded(McmError):
    """The resolution did not terminate within the cap: pd > cap (not "infinite")."""

    exit_code = 3

    def __init__(self, cap, message=None):
        self.cap = cap
        super().__init__(message or f"projective dimension exceeds cap {cap}")


class DegreeCapExceeded(McmError):
    exit_code = 3


class NotExact(McmError, ValueError):
    exit_code = 1


class PreconditionError(McmError, ValueError):
    exit_code = 4


class TheoremViolation(McmError, AssertionError):
    """A theorem-backed equality failed to re-verify: always a defect."""

    exit_code = 1
