from .core.function import ContractViolation


class BudgetExceeded(RuntimeError):
    """A solver hit its enumeration or evaluation cap (BUDGET_EXCEEDED)."""


class InternalError(AssertionError):
    """A case the constructions rule out actually happened (INTERNAL)."""


class DeskScaleExceeded(ValueError):
    """Parameters too large for exhaustive desk-scale work (DESK_SCALE_EXCEEDED)."""


class NoCertificate(RuntimeError):
    """Exhaustive search finished without finding any certificate."""


__all__ = ["BudgetExceeded", "ContractViolation", "DeskScaleExceeded", "InternalError", "NoCertificate"]
