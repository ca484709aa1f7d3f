"""Исключения iwahori-kit и их коды выхода для CLI."""


class IwahoriError(Exception):
    """Base exception for every failure raised by iwahori-kit"""
    exit_code = 1

    def to_dict(self) -> dict:
        return {"type": type(self).__name__, "message": str(self)}


class InvalidInputError(IwahoriError, ValueError):
    """Raised for malformed coweights, group parameters or job options"""
    exit_code = 2


class DatumMismatchError(IwahoriError):
    """Raised when operands belong to different root data"""
    exit_code = 2


class BudgetExceededError(IwahoriError):
    """Raised when a lattice enumeration would exceed the configured budget"""
    exit_code = 3

    def __init__(self, estimate: int, budget: int):
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"Estimated {estimate} candidate submodules exceeds budget {budget}"
        )

    def to_dict(self) -> dict:
        body = super().to_dict()
        body.update({"estimate": self.estimate, "budget": self.budget})
        return body


class VerificationError(IwahoriError):
    """Raised when an identity that must hold turns out to be false"""
    exit_code = 1


class EliminationResidualError(VerificationError):
    """Custom exception for a nonzero residual in the spherical elimination"""

    def __init__(self, message: str, residual=None):
        self.residual = residual
        super().__init__(message)

    def to_dict(self) -> dict:
        body = super().to_dict()
        if self.residual is not None:
            body["residual"] = self.residual.to_json()
        return body
