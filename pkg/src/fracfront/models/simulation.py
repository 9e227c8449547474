"""
Configuration and state models of the time-fractional Fisher-KPP solver.
"""

from enum import Enum
from typing import List

import numpy as np
from pydantic import BaseModel, Field, model_validator

from fracfront.models.nonlinearity import Nonlinearity
from fracfront.models.scheme import L1Weights


class InitialKind(str, Enum):
    STEP = "step"     # 0 on [0, l0), omega on [l0, l]
    PULSE = "pulse"   # centred box of height omega and width pulse_width


class SimConfig(BaseModel):
    alpha: float = Field(gt=0.0, le=1.0)
    l: float = Field(gt=0.0)
    l0: float = Field(gt=0.0)
    omega: float = Field(ge=0.0, le=1.0)
    x0: float = Field(gt=0.0)
    level: float = Field(default=0.1, gt=0.0, lt=1.0)
    dx: float = Field(default=0.25, gt=0.0)
    dt: float = Field(default=0.05, gt=0.0)
    t_max: float = Field(gt=0.0)
    snapshot_stride: int = Field(default=200, ge=1)
    memory_budget_mb: float = Field(default=2048.0, gt=0.0)
    initial: InitialKind = InitialKind.STEP
    pulse_width: float = Field(default=1.0, gt=0.0)
    nonlinearity: Nonlinearity = Field(default_factory=Nonlinearity)

    class Config:
        extra = 'forbid'
        use_enum_values = True

    @model_validator(mode='after')
    def _check_geometry(self) -> 'SimConfig':
        if not self.l0 < self.l:
            raise ValueError(f"l0={self.l0} must lie inside (0, l={self.l})")
        if not self.x0 < self.l:
            raise ValueError(f"x0={self.x0} must lie inside (0, l={self.l})")
        cells = self.l / self.dx
        if abs(cells - round(cells)) > 1e-9 * max(1.0, cells):
            raise ValueError(f"l/dx = {cells} must be an integer")
        return self

    @property
    def nodes(self) -> int:
        return int(round(self.l / self.dx)) + 1

    @property
    def max_steps(self) -> int:
        return int(np.ceil(self.t_max / self.dt - 1e-9))


class SimState(BaseModel):
    """
    Full solution history u_{j,k}; rows 0..j are filled.

    diffs[i] = u_{i+1} - u_i is stored alongside for the L1 memory sum.
    """
    config: SimConfig
    x: np.ndarray
    history: np.ndarray
    diffs: np.ndarray
    j: int = 0
    weights: L1Weights
    range_violation: float = 0.0

    class Config:
        arbitrary_types_allowed = True

    @property
    def u(self) -> np.ndarray:
        return self.history[self.j]

    @property
    def t(self) -> float:
        return self.j * self.config.dt


class RunStatus(str, Enum):
    STOPPED = "stopped"          # front passed x0
    HORIZON = "horizon"          # t_max reached with a tracked front
    NO_CROSSING = "no_crossing"  # level never crossed


class VarianceResult(BaseModel):
    alpha: float
    slope: float
    intercept: float
    prefactor: float            # variance / t^alpha from the fit
    expected_prefactor: float   # 2 / Gamma(1 + alpha) for unit diffusivity
    times: List[float]
    variances: List[float]
    boundary_mass: float
