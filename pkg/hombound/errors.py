from enum import IntEnum
from typing import Optional


class ExitCode(IntEnum):
    OK = 0
    INPUT = 2
    RESOURCE = 3
    DOMAIN = 4
    THEOREM_VIOLATION = 10


class HomboundError(Exception):
    category = "error"
    exit_code = ExitCode.DOMAIN

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail

    def to_dict(self) -> dict:
        return {"category": self.category, "detail": self.detail}


class InvalidArgumentError(HomboundError):
    category = "invalid-argument"
    exit_code = ExitCode.INPUT


class InputError(HomboundError):
    category = "input"
    exit_code = ExitCode.INPUT

    def __init__(self, detail: str, line: Optional[int] = None):
        if line is not None:
            detail = f"line {line}: {detail}"
        super().__init__(detail)
        self.line = line


class InstanceTooLargeError(HomboundError):
    category = "resource"
    exit_code = ExitCode.RESOURCE

    def __init__(self, cap: str, limit: int, what: str = ""):
        detail = f"cap {cap}={limit} exceeded"
        if what:
            detail += f" while {what}"
        super().__init__(detail)
        self.cap = cap
        self.limit = limit


class UncolorableError(HomboundError):
    category = "uncolorable"


class GPosetError(HomboundError):
    category = "gposet"


class OrderAxiomError(GPosetError):
    category = "order-axiom"


class ActionAxiomError(GPosetError):
    category = "action-axiom"


class EquivarianceError(GPosetError):
    category = "equivariance"


class WrongShapeError(HomboundError):
    category = "wrong-shape"


class DegenerateGroupError(HomboundError):
    category = "degenerate-group"


class PreconditionError(HomboundError):
    category = "precondition"


class TruncationError(HomboundError):
    category = "truncation"


class TheoremViolationError(HomboundError):
    """An inequality or property that the theory guarantees has failed.

    Never a user error: it means the implementation is wrong somewhere.
    """

    category = "theorem-violation"
    exit_code = ExitCode.THEOREM_VIOLATION


class ImpossibleStateError(TheoremViolationError):
    category = "impossible-state"
