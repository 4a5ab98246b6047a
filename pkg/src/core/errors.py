from typing import Any, Dict, Optional


class SkeinEngineError(Exception):
    """Base class for every error raised by the engine"""


class LaurentDivisionError(SkeinEngineError, ArithmeticError):
    """Raised when an exact Laurent division leaves a remainder"""


class CurveError(SkeinEngineError, ValueError):
    """Invalid curve input for a homology operation"""


class NonPrimitiveInput(CurveError):
    def __init__(self, vector: Any, thread: int):
        self.vector = vector
        self.thread = thread
        super().__init__(f"Curve {vector} is not primitive (gcd {thread})")


class ZeroDeterminant(CurveError):
    def __init__(self, u: Any, v: Any):
        self.u = u
        self.v = v
        super().__init__(f"Curves {u} and {v} are parallel (determinant 0)")


class NotDetTwo(CurveError):
    def __init__(self, u: Any, v: Any, det: int):
        self.u = u
        self.v = v
        self.det = det
        super().__init__(f"Expected |det| = 2 for {u}, {v}; got {det}")


class NormalFormError(CurveError):
    """Normal form requested outside det >= 2"""


class ProductError(SkeinEngineError):
    """A product could not be computed"""


class UnsupportedProduct(ProductError):
    """No closed-form rule covers the ordered pair"""

    def __init__(
        self,
        left: Any,
        right: Any,
        case: Optional[str] = None,
        reason: str = "no closed-form rule applies",
    ):
        self.left = left
        self.right = right
        self.case = case
        self.reason = reason
        super().__init__(f"Unsupported product {left} * {right} [{case}]: {reason}")

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable diagnostic for batch drivers"""
        return {
            "error": "unsupported_product",
            "left": str(self.left),
            "right": str(self.right),
            "classification": self.case,
            "reason": self.reason,
        }


class NotMaxThread(ProductError):
    def __init__(self, alpha: Any, beta: Any, reason: str):
        self.alpha = alpha
        self.beta = beta
        super().__init__(f"{alpha} * {beta} is not in the maximal-thread regime: {reason}")


class ExpressionError(SkeinEngineError):
    """Problem with a product expression typed by the user"""


class ExpressionSyntaxError(ExpressionError):
    def __init__(self, message: str, offset: int, source: str = ""):
        self.message = message
        self.offset = offset
        self.source = source
        super().__init__(f"{message} at offset {offset}")

    def pointer(self) -> str:
        """Source line with a caret under the offending offset"""
        return f"{self.source}\n{' ' * self.offset}^"


class SemanticError(ExpressionError):
    def __init__(self, message: str, offset: int = 0):
        self.offset = offset
        super().__init__(message)


class FixtureError(SkeinEngineError):
    """Malformed golden fixture data"""
