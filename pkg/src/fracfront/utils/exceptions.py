"""
Custom exceptions for the fracfront application.

Every exception carries the process exit code the CLI maps it to.
"""

from typing import Any, Dict, Optional


class FracFrontError(Exception):
    """Base exception for all fracfront errors"""
    exit_code = 3

    def __init__(self, message, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details or {}


class ConfigError(FracFrontError):
    """Configuration issues"""
    exit_code = 2


class ValidationError(ConfigError):
    """Invalid input data (field-level)"""
    pass


class MemoryBudgetError(ConfigError):
    """L1 history would not fit into the configured memory budget"""
    pass


class DomainError(FracFrontError):
    """Argument outside the mathematical domain of a function"""
    exit_code = 2


class ContractError(FracFrontError):
    """Operation called with violated preconditions"""
    exit_code = 3


class NumericalError(FracFrontError):
    """Numerical failure"""
    exit_code = 3


class RangeError(NumericalError):
    """Argument outside the documented evaluation range"""
    pass


class StepSizeError(NumericalError):
    """Implicit step is ill-posed for the requested step size"""
    pass


class ConvergenceError(NumericalError):
    """Iteration budget exhausted or iteration diverging"""
    pass


class MonotonicityError(NumericalError):
    """Iterates lost the expected pointwise ordering"""
    pass


class QuadratureError(NumericalError):
    """Adaptive quadrature did not reach its tolerance"""
    pass


class DiagnosticError(NumericalError):
    """A diagnostic's own preconditions failed (contamination, unresolved decay)"""
    pass


class RefusalError(FracFrontError):
    """Well-formed request the mathematics does not admit"""
    exit_code = 4
