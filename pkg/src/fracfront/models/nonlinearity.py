"""
Monostable reaction terms of KPP type.
"""

from enum import Enum

import numpy as np
from pydantic import BaseModel, Field, model_validator


class NonlinearityKind(str, Enum):
    LOGISTIC = "logistic"   # r u (1 - u)
    POWER = "power"         # r u (1 - u^a)
    NONE = "none"           # pure diffusion


class Nonlinearity(BaseModel):
    """
    Reaction f with f(0) = f(1) = 0 satisfying
    -M u^(1+a) <= f(u) - f'(0) u <= 0 on [0, 1].
    """
    kind: NonlinearityKind = NonlinearityKind.LOGISTIC
    rate: float = Field(default=1.0, gt=0.0)
    exponent: float = Field(default=1.0, gt=0.0)

    class Config:
        extra = 'forbid'
        frozen = True

    @model_validator(mode='after')
    def _check_kpp(self) -> 'Nonlinearity':
        if not self.is_zero and not self.validate_kpp():
            raise ValueError(f"{self.kind} with exponent {self.exponent} is not of KPP type on [0, 1]")
        return self

    @property
    def is_zero(self) -> bool:
        return self.kind == NonlinearityKind.NONE

    def f(self, u):
        u = np.asarray(u, dtype=float)
        if self.is_zero:
            return np.zeros_like(u)
        # sign-safe power keeps f defined for tiny negative round-off
        return self.rate * u * (1.0 - np.sign(u) * np.abs(u) ** self.kpp_a)

    def fprime(self, u):
        u = np.asarray(u, dtype=float)
        if self.is_zero:
            return np.zeros_like(u)
        return self.rate * (1.0 - (1.0 + self.kpp_a) * np.abs(u) ** self.kpp_a)

    @property
    def fprime0(self) -> float:
        return 0.0 if self.is_zero else self.rate

    @property
    def kpp_M(self) -> float:
        return 0.0 if self.is_zero else self.rate

    @property
    def kpp_a(self) -> float:
        return 1.0 if self.kind == NonlinearityKind.LOGISTIC else self.exponent

    def max_abs_fprime(self) -> float:
        """max over [0, 1] of |f'(u)|; attained at an endpoint for this family."""
        if self.is_zero:
            return 0.0
        return max(abs(self.rate), abs(self.rate * self.kpp_a))

    def validate_kpp(self, samples: int = 201, tol: float = 1e-12) -> bool:
        """Check f(0)=f(1)=0, f>0 inside and the KPP sandwich on sampled u."""
        if self.is_zero:
            return False
        u = np.linspace(0.0, 1.0, samples)
        values = self.f(u)
        linear = self.fprime0 * u
        ok = abs(values[0]) <= tol and abs(values[-1]) <= tol
        ok = ok and bool(np.all(values[1:-1] > 0.0))
        ok = ok and bool(np.all(values - linear <= tol))
        ok = ok and bool(np.all(values - linear >= -self.kpp_M * u ** (1.0 + self.kpp_a) - tol))
        return ok
