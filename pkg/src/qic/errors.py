"""Exception types shared across the simulator."""


class QicError(Exception):
    """Base class for all simulator errors."""


class NormCollapse(QicError):
    """Raised when a state's surviving squared norm falls below tolerance.

    Signals that interference cancelled every component, i.e. no solutions
    remain in the state.
    """

    def __init__(self, norm_squared: float, tol: float):
        super().__init__(
            f"state norm collapsed: norm_squared={norm_squared:.3g} < tol={tol:.3g}"
        )
        self.norm_squared = norm_squared
        self.tol = tol


class RegisterMismatch(QicError):
    """Two objects built over different qubit registers were combined."""


class IndexOutOfRange(QicError):
    """A basis index or qubit index exceeds the register size."""


class ParseError(QicError):
    """Malformed predicate text. Carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnboundVariable(QicError):
    """A predicate references a qubit index outside its register."""


class SchemeInvalid(QicError):
    """A checksum scheme violates its structural requirements."""
