"""
Models for the L1 discretization of the Caputo derivative.
"""

from typing import List

import numpy as np
from pydantic import BaseModel, Field


class L1Weights(BaseModel):
    """
    w[m] = (m+1)^(1-alpha) - m^(1-alpha), m = 0..count-1.

    The scale 1/(Gamma(2-alpha) dt^alpha) is applied at use sites from the
    stored gamma_2ma and dt.
    """
    alpha: float = Field(gt=0.0, le=1.0)
    count: int = Field(ge=1)
    w: np.ndarray
    gamma_2ma: float
    dt: float = Field(default=1.0, gt=0.0)

    @property
    def scale(self) -> float:
        return 1.0 / (self.gamma_2ma * self.dt ** self.alpha)

    class Config:
        arbitrary_types_allowed = True
        frozen = True


class MalthusRun(BaseModel):
    """Scalar fractional ODE d^alpha v = zeta v, v(0) = v0."""
    alpha: float = Field(gt=0.0, le=1.0)
    zeta: float
    v0: float = 1.0
    dt: float = Field(gt=0.0)
    nsteps: int = Field(ge=1)
    implicit: bool = True

    class Config:
        extra = 'forbid'


class MalthusResult(BaseModel):
    run: MalthusRun
    t: np.ndarray
    v: np.ndarray

    class Config:
        arbitrary_types_allowed = True


class OrderStudy(BaseModel):
    """Errors at a fixed final time under step halving."""
    alpha: float
    zeta: float
    t_end: float
    exact: float
    dts: List[float]
    values: List[float]
    errors: List[float]
    orders: List[float]
    expected_order: float
